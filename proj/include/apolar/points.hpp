#pragma once

#include <apolar/apolar_ideal.hpp>
#include <apolar/graded.hpp>

#include <optional>
#include <variant>
#include <vector>

namespace apolar {

/// Finite set of points in the dual projective space, stored as projective
/// representatives. Construction rejects zero points and proportional pairs
/// (checked by 2x2 minors).
class PointSet {
public:
    PointSet(std::vector<LinearForm> points, int var_count, const FieldSpec& spec)
        : points_(std::move(points)), var_count_(var_count), spec_(spec) {
        for (const LinearForm& p : points_) {
            if (p.var_count() != var_count_)
                throw error(errc::ambient_mismatch, "point has wrong coordinate count");
            if (p.is_zero()) throw error(errc::invalid_input, "zero vector is not a point");
        }
        for (std::size_t i = 0; i < points_.size(); ++i)
            for (std::size_t j = i + 1; j < points_.size(); ++j)
                if (proportional(points_[i], points_[j]))
                    throw error(errc::invalid_input, "points must be pairwise non-proportional");
    }

    int var_count() const { return var_count_; }
    const FieldSpec& spec() const { return spec_; }
    int size() const { return static_cast<int>(points_.size()); }
    const LinearForm& operator[](int i) const { return points_[i]; }
    const std::vector<LinearForm>& points() const { return points_; }

    static bool proportional(const LinearForm& a, const LinearForm& b) {
        for (int i = 0; i < a.var_count(); ++i)
            for (int j = i + 1; j < a.var_count(); ++j)
                if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
        return true;
    }

private:
    std::vector<LinearForm> points_;
    int var_count_;
    FieldSpec spec_;
};

/// Degree-e piece of the saturated ideal of the point set: the kernel of the
/// evaluation matrix (one row per point, one column per monomial). Computing
/// per degree through evaluation sidesteps any saturation algorithm.
inline GradedPiece point_ideal_piece(const PointSet& pts, int e) {
    if (e < 0) throw error(errc::out_of_range, "negative degree");
    const MonomialBasis& basis = monomial_basis(pts.var_count(), e);
    SparseMatrix m(pts.size(), basis.dim(), pts.spec());
    for (int r = 0; r < pts.size(); ++r) {
        const LinearForm& p = pts[r];
        for (int c = 0; c < basis.dim(); ++c) {
            const MultiIndex& mono = basis.at(c);
            FieldElement v = FieldElement::one(pts.spec());
            for (int i = 0; i < pts.var_count() && !v.is_zero(); ++i)
                for (int k = 0; k < mono[i]; ++k) v *= p[i];
            m.set(r, c, v);
        }
    }
    return GradedPiece{pts.var_count(), e, kernel_basis(m)};
}

/// Apolarity certificate: I_Gamma inside f-perp, checked degree by degree.
/// Degrees above deg f need no check since the annihilator is everything there.
inline bool check_apolarity_lemma(const PointSet& pts, const DividedForm& f) {
    if (pts.var_count() != f.var_count())
        throw error(errc::ambient_mismatch, "point set and form have different ambients");
    for (int e = 1; e <= f.degree(); ++e)
        if (!is_contained(point_ideal_piece(pts, e).basis, perp_piece(f, e).basis)) return false;
    return true;
}

/// Solves f = sum lambda_i ell_i^[d] in R_d. Returns one solution (free
/// variables pinned to zero by the RREF solve, so support is deterministic);
/// entries may be zero. nullopt when f is outside the span.
inline std::optional<std::vector<FieldElement>> waring_coefficients(
    const DividedForm& f, const std::vector<LinearForm>& ells) {
    if (ells.empty()) throw error(errc::invalid_input, "need at least one linear form");
    for (const LinearForm& ell : ells)
        if (ell.var_count() != f.var_count())
            throw error(errc::ambient_mismatch, "linear form and target disagree on variables");
    const int d = f.degree();
    const int s = static_cast<int>(ells.size());
    const int dim = graded_dim(f.var_count(), d);
    const FieldSpec& spec = f.spec();

    // augmented system: columns are the divided powers, last column is f
    SparseMatrix aug(dim, s + 1, spec);
    for (int j = 0; j < s; ++j) {
        std::vector<FieldElement> col = divided_power(ells[j], d).dense();
        for (int i = 0; i < dim; ++i)
            if (!col[i].is_zero()) aug.set(i, j, col[i]);
    }
    std::vector<FieldElement> fd = f.dense();
    for (int i = 0; i < dim; ++i)
        if (!fd[i].is_zero()) aug.set(i, s, fd[i]);

    RrefResult r = rref(aug);
    std::vector<FieldElement> lambda(s, FieldElement::zero(spec));
    for (int i = 0; i < r.rank; ++i) {
        int pc = r.pivot_cols[i];
        if (pc == s) return std::nullopt; // inconsistent: pivot in the f column
        lambda[pc] = r.row_space.matrix().at(i, s);
    }
    return lambda;
}

inline int span_dim(const std::vector<LinearForm>& ells) {
    if (ells.empty()) return 0;
    const FieldSpec& spec = ells.front().spec();
    int vars = ells.front().var_count();
    SparseMatrix m(static_cast<int>(ells.size()), vars, spec);
    for (int r = 0; r < static_cast<int>(ells.size()); ++r) {
        if (ells[r].var_count() != vars)
            throw error(errc::ambient_mismatch, "linear forms disagree on variables");
        for (int c = 0; c < vars; ++c) m.set(r, c, ells[r][c]);
    }
    return rref(m).rank;
}

/// f = sum lambda_i ell_i^[d] with nonzero lambda, verified exactly when built.
class WaringDecomposition {
public:
    WaringDecomposition(std::vector<std::pair<FieldElement, LinearForm>> terms, DividedForm target)
        : terms_(std::move(terms)), target_(std::move(target)) {
        std::vector<LinearForm> ells;
        for (const auto& [lambda, ell] : terms_) {
            if (lambda.is_zero())
                throw error(errc::invalid_input, "decomposition coefficients must be nonzero");
            ells.push_back(ell);
        }
        span_dim_ = span_dim(ells);
        DividedForm sum(target_.var_count(), target_.degree(), target_.spec());
        for (const auto& [lambda, ell] : terms_)
            sum = sum + divided_power(ell, target_.degree()).scaled(lambda);
        if (!(sum == target_))
            throw error(errc::invalid_input, "decomposition does not reproduce the target");
    }

    const std::vector<std::pair<FieldElement, LinearForm>>& terms() const { return terms_; }
    const DividedForm& target() const { return target_; }
    int degree() const { return target_.degree(); }
    int size() const { return static_cast<int>(terms_.size()); }
    int linear_span_dim() const { return span_dim_; }

private:
    std::vector<std::pair<FieldElement, LinearForm>> terms_;
    DividedForm target_;
    int span_dim_ = 0;
};

/// Projective representatives over F_p with first nonzero coordinate 1,
/// in ascending lexicographic order of the coordinate tuples.
inline std::vector<LinearForm> projective_points(int var_count, const FieldSpec& spec) {
    if (!spec.is_prime_field())
        throw error(errc::invalid_input, "point enumeration needs a finite field");
    const long long p = spec.modulus();
    // (p^vars - 1)/(p - 1) points; refuse spaces too large to materialize
    Int count = (boost::multiprecision::pow(Int(p), var_count) - 1) / (p - 1);
    if (count > 10000000)
        throw error(errc::budget_exceeded, "projective space too large to enumerate");
    std::vector<LinearForm> out;
    for (int lead = 0; lead < var_count; ++lead) {
        // coordinates: zeros, then 1 at `lead`, then free entries
        int free = var_count - lead - 1;
        std::vector<long long> tail(free, 0);
        while (true) {
            std::vector<FieldElement> a(var_count, FieldElement::zero(spec));
            a[lead] = FieldElement::one(spec);
            for (int i = 0; i < free; ++i)
                a[lead + 1 + i] = FieldElement::from_integer(tail[i], spec);
            out.emplace_back(std::move(a), spec);
            int i = free - 1;
            while (i >= 0 && tail[i] == p - 1) tail[i--] = 0;
            if (i < 0) break;
            ++tail[i];
        }
    }
    return out;
}

struct WaringRankResult {
    int rank;
    WaringDecomposition decomposition;
};

/// Exhaustive Waring rank over F_p: smallest t <= t_max carrying a
/// decomposition with all coefficients nonzero. Subsets are scanned in
/// lexicographic order, so ties resolve deterministically. The budget caps
/// the number of candidate subsets across the whole sweep.
inline std::optional<WaringRankResult> waring_rank_bruteforce(const DividedForm& f, int t_max,
                                                              long long budget = 5000000) {
    if (!f.spec().is_prime_field())
        throw error(errc::invalid_input, "brute-force rank search needs a finite field");
    if (f.is_zero()) throw error(errc::zero_form, "rank of the zero form");
    const std::vector<LinearForm> pts = projective_points(f.var_count(), f.spec());
    const int n = static_cast<int>(pts.size());
    long long used = 0;

    for (int t = 1; t <= t_max && t <= n; ++t) {
        std::vector<int> idx(t);
        for (int i = 0; i < t; ++i) idx[i] = i;
        while (true) {
            if (++used > budget)
                throw error(errc::budget_exceeded,
                            "enumeration budget exhausted at subset size " + std::to_string(t));
            std::vector<LinearForm> ells;
            ells.reserve(t);
            for (int i : idx) ells.push_back(pts[i]);
            auto lambda = waring_coefficients(f, ells);
            if (lambda) {
                bool all_nonzero = true;
                for (const auto& c : *lambda)
                    if (c.is_zero()) {
                        all_nonzero = false;
                        break;
                    }
                if (all_nonzero) {
                    std::vector<std::pair<FieldElement, LinearForm>> terms;
                    for (int i = 0; i < t; ++i) terms.emplace_back((*lambda)[i], ells[i]);
                    return WaringRankResult{t, WaringDecomposition(std::move(terms), f)};
                }
            }
            // next t-combination in lexicographic order
            int i = t - 1;
            while (i >= 0 && idx[i] == n - t + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return std::nullopt;
}

} // namespace apolar
