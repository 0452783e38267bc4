#pragma once

// Test-only oracle: graded Betti numbers of T/I through Koszul homology,
// beta_{p,q} = dim H_p(K(x_0..x_n) (x) A)_q. Shares only the field and
// RREF primitives with the library; no syzygy layers, no minimal
// generator extraction, so agreement with the production pipeline is a
// genuine cross-check.

#include <apolar/graded.hpp>

#include <map>
#include <vector>

namespace apolar::testing {

/// A = T/I presented by monomial normal forms against the RREF bases of
/// the ideal's graded pieces: the non-pivot monomials of I_e form a basis
/// of A_e, and reduction is elimination against the RREF rows.
class QuotientAlgebra {
public:
    QuotientAlgebra(std::vector<GradedPiece> ideal_pieces, int var_count, const FieldSpec& spec)
        : pieces_(std::move(ideal_pieces)), var_count_(var_count), spec_(spec) {
        for (int e = 0; e < static_cast<int>(pieces_.size()); ++e) {
            const GradedPiece& p = pieces_[e];
            std::vector<bool> is_pivot(p.ambient(), false);
            for (int c : p.basis.pivot_cols()) is_pivot[c] = true;
            std::vector<int> basis;
            for (int c = 0; c < p.ambient(); ++c)
                if (!is_pivot[c]) basis.push_back(c);
            quotient_basis_.push_back(std::move(basis));
        }
    }

    int var_count() const { return var_count_; }
    const FieldSpec& spec() const { return spec_; }
    int max_degree() const { return static_cast<int>(pieces_.size()) - 1; }
    int dim(int e) const {
        if (e < 0) return 0;
        if (e > max_degree())
            throw error(errc::out_of_range, "quotient piece outside the computed window");
        return static_cast<int>(quotient_basis_[e].size());
    }

    /// normal-form coordinates of a dense T_e vector in the A_e basis
    std::vector<FieldElement> reduce(int e, std::vector<FieldElement> v) const {
        const GradedPiece& p = pieces_[e];
        const SparseMatrix& rows = p.basis.matrix();
        for (int i = 0; i < rows.rows(); ++i) {
            FieldElement c = v[p.basis.pivot_cols()[i]];
            if (c.is_zero()) continue;
            for (const auto& [col, val] : rows.row(i)) v[col] -= c * val;
        }
        std::vector<FieldElement> out;
        out.reserve(quotient_basis_[e].size());
        for (int c : quotient_basis_[e]) out.push_back(v[c]);
        return out;
    }

    /// matrix of multiplication by x_j from A_e to A_{e+1}, dense columns
    std::vector<std::vector<FieldElement>> variable_action(int j, int e) const {
        const MonomialBasis& from = monomial_basis(var_count_, e);
        const MonomialBasis& to = monomial_basis(var_count_, e + 1);
        std::vector<std::vector<FieldElement>> cols;
        for (int k = 0; k < dim(e); ++k) {
            const MultiIndex& mono = from.at(quotient_basis_[e][k]);
            std::vector<FieldElement> unit(to.dim(), FieldElement::zero(spec_));
            unit[to.index_of(mono + MultiIndex::unit(var_count_, j))] = FieldElement::one(spec_);
            cols.push_back(reduce(e + 1, std::move(unit)));
        }
        return cols;
    }

private:
    std::vector<GradedPiece> pieces_;
    int var_count_;
    FieldSpec spec_;
    std::vector<std::vector<int>> quotient_basis_;
};

namespace detail {

inline std::vector<std::vector<int>> subsets(int n, int p) {
    std::vector<std::vector<int>> out;
    if (p < 0 || p > n) return out;
    std::vector<int> idx(p);
    for (int i = 0; i < p; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        int i = p - 1;
        while (i >= 0 && idx[i] == n - p + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int k = i + 1; k < p; ++k) idx[k] = idx[k - 1] + 1;
        if (p == 0) break;
    }
    if (p == 0) out = {{}};
    return out;
}

// Koszul differential Lambda^p V (x) A_{q-p} -> Lambda^{p-1} V (x) A_{q-p+1}
inline SparseMatrix koszul_map(const QuotientAlgebra& A, int p, int q) {
    const int n = A.var_count();
    auto src_sets = subsets(n, p);
    auto dst_sets = subsets(n, p - 1);
    std::map<std::vector<int>, int> dst_index;
    for (int i = 0; i < static_cast<int>(dst_sets.size()); ++i) dst_index[dst_sets[i]] = i;

    const int src_block = A.dim(q - p);
    const int dst_block = A.dim(q - p + 1);
    SparseMatrix m(static_cast<int>(dst_sets.size()) * dst_block,
                   static_cast<int>(src_sets.size()) * src_block, A.spec());
    if (src_block == 0 || q - p + 1 > A.max_degree()) return m;

    // cache the variable action matrices once per degree
    std::vector<std::vector<std::vector<FieldElement>>> action;
    for (int j = 0; j < n; ++j) action.push_back(A.variable_action(j, q - p));

    for (int s = 0; s < static_cast<int>(src_sets.size()); ++s) {
        const std::vector<int>& S = src_sets[s];
        for (int t = 0; t < p; ++t) {
            std::vector<int> T = S;
            T.erase(T.begin() + t);
            int dst = dst_index.at(T);
            FieldElement sign = (t % 2 == 0) ? FieldElement::one(A.spec())
                                             : -FieldElement::one(A.spec());
            const auto& act = action[S[t]];
            for (int k = 0; k < src_block; ++k)
                for (int r = 0; r < dst_block; ++r)
                    if (!act[k][r].is_zero())
                        m.set(dst * dst_block + r, s * src_block + k,
                              m.at(dst * dst_block + r, s * src_block + k) + sign * act[k][r]);
        }
    }
    return m;
}

} // namespace detail

/// beta_{p,q}(T/I) as the dimension of the degree-q Koszul homology at spot p
inline long long koszul_betti(const QuotientAlgebra& A, int p, int q) {
    if (q - p < 0) return 0;
    if (q - p > A.max_degree()) throw error(errc::out_of_range, "window too small");
    const int n = A.var_count();
    long long spot =
        binomial(n, p).convert_to<long long>() * A.dim(q - p);
    if (spot == 0) return 0;
    long long rank_out = (p >= 1) ? rref(detail::koszul_map(A, p, q)).rank : 0;
    long long rank_in =
        (p + 1 <= n && q - p - 1 >= 0 && q - p - 1 <= A.max_degree())
            ? rref(detail::koszul_map(A, p + 1, q)).rank
            : 0;
    return spot - rank_out - rank_in;
}

} // namespace apolar::testing
