#pragma once

#include <apolar/forms.hpp>
#include <apolar/linalg.hpp>

#include <vector>

namespace apolar {

/// One degree of a homogeneous ideal (or any graded subspace) of the
/// polynomial ring, held as the canonical RREF basis over the monomial
/// basis of that degree. Piece equality is basis equality.
struct GradedPiece {
    int var_count;
    int degree;
    Basis basis;

    int dim() const { return basis.dim(); }
    int ambient() const { return basis.ambient_dim(); }
    const FieldSpec& spec() const { return basis.spec(); }

    Form row_form(int i) const {
        return Form::from_dense(basis.matrix().row_dense(i), var_count, degree, spec());
    }

    std::vector<Form> forms() const {
        std::vector<Form> out;
        out.reserve(dim());
        for (int i = 0; i < dim(); ++i) out.push_back(row_form(i));
        return out;
    }

    bool contains(const Form& f) const { return in_span(f.dense(), basis).has_value(); }

    friend bool operator==(const GradedPiece& a, const GradedPiece& b) {
        return a.var_count == b.var_count && a.degree == b.degree && a.basis == b.basis;
    }
};

inline GradedPiece zero_piece(int var_count, int degree, const FieldSpec& spec) {
    return GradedPiece{var_count, degree, zero_subspace(graded_dim(var_count, degree), spec)};
}

inline GradedPiece full_piece(int var_count, int degree, const FieldSpec& spec) {
    return GradedPiece{var_count, degree, full_space(graded_dim(var_count, degree), spec)};
}

inline GradedPiece span_of_forms(const std::vector<Form>& rows, int var_count, int degree,
                                 const FieldSpec& spec) {
    SparseMatrix m(static_cast<int>(rows.size()), graded_dim(var_count, degree), spec);
    const MonomialBasis& basis = monomial_basis(var_count, degree);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        if (rows[i].degree() != degree)
            throw error(errc::degree_mismatch, "row degree differs from piece degree");
        SparseMatrix::Row r;
        for (const auto& [mono, c] : rows[i].coeffs()) r.emplace_back(basis.index_of(mono), c);
        std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        m.set_row(i, std::move(r));
    }
    return GradedPiece{var_count, degree, rref(m).row_space};
}

/// Degree-e slice of the ideal generated by the given homogeneous forms:
/// the span of every generator times every complementary monomial.
inline GradedPiece ideal_piece(const std::vector<Form>& gens, int degree, int var_count,
                               const FieldSpec& spec) {
    std::vector<Form> rows;
    for (const Form& g : gens) {
        if (g.is_zero()) continue;
        if (g.degree() > degree) continue;
        const MonomialBasis& mons = monomial_basis(var_count, degree - g.degree());
        for (const MultiIndex& m : mons.list()) rows.push_back(monomial_times(m, g));
    }
    return span_of_forms(rows, var_count, degree, spec);
}

/// T_1 * piece, one degree up.
inline GradedPiece times_linear(const GradedPiece& p) {
    std::vector<Form> rows;
    rows.reserve(static_cast<std::size_t>(p.dim()) * p.var_count);
    for (int i = 0; i < p.dim(); ++i) {
        Form f = p.row_form(i);
        for (int v = 0; v < p.var_count; ++v)
            rows.push_back(monomial_times(MultiIndex::unit(p.var_count, v), f));
    }
    return span_of_forms(rows, p.var_count, p.degree + 1, p.spec());
}

/// Rows of the canonical basis of `piece` that are new modulo `inside`,
/// i.e. a complement basis chosen by RREF pivoting against `inside`.
inline std::vector<Form> complement_rows(const GradedPiece& piece, const GradedPiece& inside) {
    if (piece.degree != inside.degree || piece.var_count != inside.var_count)
        throw error(errc::degree_mismatch, "complement needs pieces of one degree");
    std::vector<Form> fresh;
    for (int i : complement_row_indices(piece.basis, inside.basis))
        fresh.push_back(piece.row_form(i));
    return fresh;
}

} // namespace apolar
