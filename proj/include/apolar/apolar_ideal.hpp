#pragma once

#include <apolar/graded.hpp>

#include <map>
#include <mutex>
#include <vector>

namespace apolar {

/// Matrix of the contraction map T_e -> R_{d-e} determined by f: the column
/// of the monomial x^gamma holds contract(x^gamma, f) over the monomial
/// basis of R_{d-e}. Its kernels are the graded pieces of the annihilator
/// and its ranks the Hilbert function of T/f-perp.
inline SparseMatrix catalecticant(const DividedForm& f, int e) {
    const int d = f.degree();
    if (e < 0 || e > d) throw error(errc::out_of_range, "contraction degree outside [0, d]");
    const MonomialBasis& cols = monomial_basis(f.var_count(), e);
    const MonomialBasis& rows = monomial_basis(f.var_count(), d - e);
    SparseMatrix m(rows.dim(), cols.dim(), f.spec());
    // entry (delta', gamma) = f_(gamma + delta')
    for (const auto& [mono, c] : f.coeffs())
        for (int j = 0; j < cols.dim(); ++j)
            if (cols.at(j).divides_into(mono)) m.set(rows.index_of(mono - cols.at(j)), j, c);
    return m;
}

/// Degree-e piece of the apolar ideal f-perp = { q : q(f) = 0 }. For e above
/// the degree of f the piece is the whole of T_e.
inline GradedPiece perp_piece(const DividedForm& f, int e) {
    if (e < 0) throw error(errc::out_of_range, "negative degree");
    if (e > f.degree()) return full_piece(f.var_count(), e, f.spec());
    return GradedPiece{f.var_count(), e, kernel_basis(catalecticant(f, e))};
}

struct HilbertFunction {
    std::vector<int> values; // h_0 .. h_d of T/f-perp

    int at(int e) const {
        return (e < 0 || e >= static_cast<int>(values.size())) ? 0 : values[e];
    }
    friend bool operator==(const HilbertFunction&, const HilbertFunction&) = default;
};

inline HilbertFunction hilbert_function(const DividedForm& f) {
    if (f.is_zero()) throw error(errc::zero_form, "Hilbert function of the zero form");
    HilbertFunction h;
    for (int e = 0; e <= f.degree(); ++e) h.values.push_back(rref(catalecticant(f, e)).rank);
    return h;
}

/// New minimal generators of f-perp in one degree: a complement of
/// T_1 * (f-perp)_{j-1} inside (f-perp)_j. dim == beta_{1,j}.
struct GeneratorBlock {
    int degree;
    GradedPiece generators;
};

inline std::vector<GeneratorBlock> minimal_generators(const DividedForm& f, int up_to) {
    std::vector<GeneratorBlock> out;
    GradedPiece prev = perp_piece(f, 0);
    for (int j = 1; j <= up_to; ++j) {
        GradedPiece cur = perp_piece(f, j);
        GradedPiece grown = times_linear(prev);
        std::vector<Form> fresh = complement_rows(cur, grown);
        out.push_back(GeneratorBlock{j, span_of_forms(fresh, f.var_count(), j, f.spec())});
        prev = std::move(cur);
    }
    return out;
}

/// Inverse direction of the Macaulay correspondence: the unique-up-to-scalar
/// f of degree d annihilated by every supplied piece. The pieces must be the
/// degree 1..d slices of an ideal whose quotient is Gorenstein with socle
/// degree d; anything else leaves a solution space of dimension != 1.
inline DividedForm dual_socle_generator(const std::map<int, GradedPiece>& pieces, int var_count,
                                        int d, const FieldSpec& spec) {
    const MonomialBasis& target = monomial_basis(var_count, d);
    std::vector<SparseMatrix::Row> rows;
    for (const auto& [e, piece] : pieces) {
        if (e < 1 || e > d)
            throw error(errc::out_of_range, "pieces must sit in degrees 1..d");
        const MonomialBasis& shifts = monomial_basis(var_count, d - e);
        for (int i = 0; i < piece.dim(); ++i) {
            Form q = piece.row_form(i);
            for (const MultiIndex& delta : shifts.list()) {
                SparseMatrix::Row row;
                for (const auto& [gamma, c] : q.coeffs())
                    row.emplace_back(target.index_of(gamma + delta), c);
                std::sort(row.begin(), row.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                rows.push_back(std::move(row));
            }
        }
    }
    SparseMatrix system(static_cast<int>(rows.size()), target.dim(), spec);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) system.set_row(i, std::move(rows[i]));
    Basis sol = kernel_basis(system);
    if (sol.dim() != 1)
        throw error(errc::not_gorenstein,
                    "socle solution space has dimension " + std::to_string(sol.dim()));
    // RREF already scales the first nonzero coefficient to 1
    return DividedForm::from_dense(sol.matrix().row_dense(0), var_count, d, spec);
}

inline bool is_apolar(const Form& q, const DividedForm& f) {
    return contract(q, f).is_zero();
}

/// f together with lazily computed graded pieces of its annihilator.
/// Concurrent readers trigger at most one computation per degree; pieces are
/// immutable once cached.
class ApolarIdeal {
public:
    explicit ApolarIdeal(DividedForm f) : f_(std::move(f)) {}

    const DividedForm& form() const { return f_; }

    const GradedPiece& piece(int e) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(e);
        if (it == cache_.end()) it = cache_.emplace(e, perp_piece(f_, e)).first;
        return it->second;
    }

    /// ideal property T_1 * I_e subset I_{e+1}, assertable per degree
    bool ideal_property_holds(int e) const {
        return is_contained(times_linear(piece(e)).basis, piece(e + 1).basis);
    }

private:
    DividedForm f_;
    mutable std::map<int, GradedPiece> cache_;
    mutable std::mutex mutex_;
};

} // namespace apolar
