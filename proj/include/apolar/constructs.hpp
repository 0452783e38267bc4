#pragma once

#include <apolar/apolar_ideal.hpp>
#include <apolar/betti.hpp>
#include <apolar/points.hpp>

#include <optional>
#include <string>
#include <vector>

namespace apolar {

/// Fermat cubic y_0^[3] + ... + y_{g-3}^[3] in g-2 variables.
inline DividedForm fermat_cubic(int g, const FieldSpec& spec) {
    if (g < 3) throw error(errc::out_of_range, "Fermat cubic needs g >= 3");
    const int vars = g - 2;
    DividedForm f(vars, 3, spec);
    for (int i = 0; i < vars; ++i) f.add_term(MultiIndex::unit(vars, i, 3), FieldElement::one(spec));
    return f;
}

/// Generators of the Fermat annihilator: the C(g-2,2) products x_i x_j plus
/// the g-3 cube differences x_i^3 - x_{g-3}^3.
inline std::vector<Form> fermat_perp_generators(int g, const FieldSpec& spec) {
    if (g < 4) throw error(errc::out_of_range, "generator list needs g >= 4");
    const int vars = g - 2;
    std::vector<Form> gens;
    for (int i = 0; i < vars; ++i)
        for (int j = i + 1; j < vars; ++j) {
            Form q(vars, 2, spec);
            q.add_term(MultiIndex::unit(vars, i) + MultiIndex::unit(vars, j),
                       FieldElement::one(spec));
            gens.push_back(std::move(q));
        }
    for (int i = 0; i + 1 < vars; ++i) {
        Form c(vars, 3, spec);
        c.add_term(MultiIndex::unit(vars, i, 3), FieldElement::one(spec));
        c.add_term(MultiIndex::unit(vars, vars - 1, 3), -FieldElement::one(spec));
        gens.push_back(std::move(c));
    }
    return gens;
}

/// f = sum lambda_i^{-1} y_i^[3] + (sum y_i)^[3]; the normal form with
/// Hilbert function (1, g-2, g-2, 1) and quadric-generated annihilator for
/// generic lambda. Vanishing lambda_i are rejected.
inline DividedForm almost_minimal_form(int g, const std::vector<FieldElement>& lambda,
                                       const FieldSpec& spec) {
    if (g < 5) throw error(errc::out_of_range, "almost-minimal form needs g >= 5");
    const int vars = g - 2;
    if (static_cast<int>(lambda.size()) != vars)
        throw error(errc::invalid_input, "expected " + std::to_string(vars) + " lambda values");
    for (const FieldElement& l : lambda)
        if (l.is_zero()) throw error(errc::zero_lambda, "lambda values must be nonzero");

    DividedForm f(vars, 3, spec);
    for (int i = 0; i < vars; ++i)
        f.add_term(MultiIndex::unit(vars, i, 3), lambda[i].inverse());
    std::vector<FieldElement> ones(vars, FieldElement::one(spec));
    return f + divided_power(LinearForm(ones, spec), 3);
}

/// The coordinate points of the dual space, optionally with the all-ones
/// point completing the projective frame.
inline PointSet frame_points(int g, bool include_unit, const FieldSpec& spec) {
    if (g < 4) throw error(errc::out_of_range, "frame needs g >= 4");
    const int vars = g - 2;
    std::vector<LinearForm> pts;
    for (int i = 0; i < vars; ++i) {
        std::vector<FieldElement> a(vars, FieldElement::zero(spec));
        a[i] = FieldElement::one(spec);
        pts.emplace_back(std::move(a), spec);
    }
    if (include_unit)
        pts.emplace_back(std::vector<FieldElement>(vars, FieldElement::one(spec)), spec);
    return PointSet(std::move(pts), vars, spec);
}

/// q' = x_{g-4} x_{g-3} - sum_i lambda_i (x_i^2 - x_{g-4} x_{g-3}): the
/// quadric completing the frame-point ideal to the annihilator of the
/// almost-minimal form. Annihilation and non-vanishing at the first
/// coordinate point are asserted at construction.
inline Form completing_quadric(int g, const std::vector<FieldElement>& lambda,
                               const FieldSpec& spec) {
    if (g < 5) throw error(errc::out_of_range, "completing quadric needs g >= 5");
    const int vars = g - 2;
    if (static_cast<int>(lambda.size()) != vars)
        throw error(errc::invalid_input, "expected " + std::to_string(vars) + " lambda values");
    for (const FieldElement& l : lambda)
        if (l.is_zero()) throw error(errc::zero_lambda, "lambda values must be nonzero");

    Form q(vars, 2, spec);
    MultiIndex mix = MultiIndex::unit(vars, vars - 2) + MultiIndex::unit(vars, vars - 1);
    FieldElement mix_coeff = FieldElement::one(spec);
    for (const FieldElement& l : lambda) mix_coeff += l;
    q.add_term(mix, mix_coeff);
    for (int i = 0; i < vars; ++i) q.add_term(MultiIndex::unit(vars, i, 2), -lambda[i]);

    DividedForm f = almost_minimal_form(g, lambda, spec);
    if (!is_apolar(q, f))
        throw error(errc::invalid_input, "completing quadric fails to annihilate the form");
    std::vector<FieldElement> e0(vars, FieldElement::zero(spec));
    e0[0] = FieldElement::one(spec);
    if (evaluate(q, e0).is_zero())
        throw error(errc::invalid_input, "completing quadric vanishes at the first frame point");
    return q;
}

/// Matrix of linear forms: the last map in the minimal free resolution of
/// the coordinate-point ideal (x_i x_j). The index ranges degenerate below
/// g = 6.
struct LinearFormMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<Form>> entry; // rows x cols

    friend bool operator==(const LinearFormMatrix&, const LinearFormMatrix&) = default;
};

inline LinearFormMatrix resolution_tail_matrix(int g, const FieldSpec& spec) {
    if (g < 6) throw error(errc::out_of_range, "tail matrix needs g >= 6");
    const int vars = g - 2;        // x_0 .. x_{g-3}
    const int rows = (g - 4) * (g - 2);
    const int cols = g - 3;

    auto var = [&](int i, long long sign) {
        Form f(vars, 1, spec);
        f.add_term(MultiIndex::unit(vars, i), integer_embed(sign, spec));
        return f;
    };

    // X_i lists every variable except x_i with indices descending;
    // X_{g-4} additionally drops x_{g-3}
    auto excluded_list = [&](int skip) {
        std::vector<int> v;
        int top = (skip == g - 4) ? g - 5 : g - 3;
        for (int i = top; i >= 0; --i)
            if (i != skip) v.push_back(i);
        return v;
    };

    LinearFormMatrix M;
    M.rows = rows;
    M.cols = cols;
    M.entry.assign(rows, std::vector<Form>(cols, Form(vars, 1, spec)));

    // linear block: m_{p,q} = (-1)^{q+j} (X_{q-1})_j at p = (q-1)(g-3) + j
    for (int q = 1; q <= g - 4; ++q) {
        std::vector<int> X = excluded_list(q - 1);
        for (int j = 1; j <= g - 3; ++j) {
            int p = (q - 1) * (g - 3) + j;
            M.entry[p - 1][q - 1] = var(X[j - 1], ((q + j) % 2 == 0) ? 1 : -1);
        }
    }
    // trailing block of the last column: (-1)^{g-3+j} (X_{g-4})_j
    {
        std::vector<int> X = excluded_list(g - 4);
        for (int j = 1; j <= g - 4; ++j) {
            int p = (g - 4) * (g - 3) + j;
            M.entry[p - 1][g - 4] = var(X[j - 1], ((g - 3 + j) % 2 == 0) ? 1 : -1);
        }
    }
    // alternating x_{g-3} entries of the last column at p = i(g-3) + 1
    for (int i = 0; i <= g - 5; ++i) {
        int p = i * (g - 3) + 1;
        M.entry[p - 1][g - 4] = var(g - 3, ((i + 1) % 2 == 0) ? 1 : -1);
    }
    return M;
}

struct TailVerification {
    int column;            // column of the transposed matrix = row of M
    bool pass;             // expansion lies in the point ideal
};

struct TailReport {
    int g;
    std::vector<TailVerification> columns;
    bool all_pass() const {
        for (const auto& c : columns)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

inline std::vector<Form> cube_differences(int g, const FieldSpec& spec) {
    const int vars = g - 2;
    std::vector<Form> cubes;
    for (int j = 0; j <= g - 4; ++j) {
        Form c(vars, 3, spec);
        c.add_term(MultiIndex::unit(vars, j, 3), FieldElement::one(spec));
        c.add_term(MultiIndex::unit(vars, vars - 1, 3), -FieldElement::one(spec));
        cubes.push_back(std::move(c));
    }
    return cubes;
}

inline std::vector<Form> coordinate_point_quadrics(int g, const FieldSpec& spec) {
    const int vars = g - 2;
    std::vector<Form> gens;
    for (int i = 0; i < vars; ++i)
        for (int j = i + 1; j < vars; ++j) {
            Form q(vars, 2, spec);
            q.add_term(MultiIndex::unit(vars, i) + MultiIndex::unit(vars, j),
                       FieldElement::one(spec));
            gens.push_back(std::move(q));
        }
    return gens;
}

} // namespace detail

/// Verified per column of the transpose: combining the cube differences with
/// the column's linear forms lands in the coordinate-point ideal, which is
/// exactly the relation presenting the quotient module the matrix resolves.
inline TailReport verify_resolution_tail(int g, const FieldSpec& spec,
                                         const LinearFormMatrix* matrix = nullptr) {
    LinearFormMatrix local;
    if (!matrix) {
        local = resolution_tail_matrix(g, spec);
        matrix = &local;
    }
    const int vars = g - 2;
    std::vector<Form> cubes = detail::cube_differences(g, spec);
    GradedPiece ideal4 = ideal_piece(detail::coordinate_point_quadrics(g, spec), 4, vars, spec);

    TailReport report;
    report.g = g;
    for (int p = 0; p < matrix->rows; ++p) {
        Form sum(vars, 4, spec);
        for (int q = 0; q < matrix->cols; ++q)
            if (!matrix->entry[p][q].is_zero())
                sum = sum + poly_mul(matrix->entry[p][q], cubes[q]);
        report.columns.push_back(TailVerification{p + 1, ideal4.contains(sum)});
    }
    return report;
}

/// Parameter record for the two named families of cubics. Validation
/// happens at build time: g >= 3 for the Fermat family, g >= 5 with all
/// lambda nonzero for the almost-minimal one.
struct CubicFamilyInstance {
    enum class Kind { fermat, almost_minimal };

    Kind kind = Kind::fermat;
    int g = 3;
    std::vector<FieldElement> lambda; // g-2 scalars, almost-minimal only

    int var_count() const { return g - 2; }

    DividedForm build(const FieldSpec& spec) const {
        if (kind == Kind::fermat) return fermat_cubic(g, spec);
        return almost_minimal_form(g, lambda, spec);
    }
};

enum class Verdict {
    fermat_type,
    almost_minimal_candidate,
    degenerate,
    other,
};

inline std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::fermat_type: return "FermatType_ap_g_minus_2";
    case Verdict::almost_minimal_candidate: return "AlmostMinimal_ap_g_minus_1_candidate";
    case Verdict::degenerate: return "Degenerate";
    case Verdict::other: return "Other";
    }
    return "Other";
}

struct ClassificationReport {
    HilbertFunction hilbert;
    std::map<int, long long> beta1;
    std::map<int, long long> beta2;
    Verdict verdict = Verdict::other;
    std::vector<std::string> evidence;
    std::optional<WaringDecomposition> certificate;
};

/// Structural classification of a cubic by the shape of its annihilator.
/// Over a finite field an almost-minimal candidate additionally gets a
/// brute-force search for an apolar point set of size g-1 within budget.
inline ClassificationReport classify_form(const DividedForm& f, long long budget = 2000000) {
    if (f.is_zero()) throw error(errc::zero_form, "cannot classify the zero form");
    const int m = f.var_count();
    ClassificationReport rep;

    if (perp_piece(f, 1).dim() > 0) {
        rep.verdict = Verdict::degenerate;
        rep.evidence.push_back("linear forms annihilate f: not in the nondegenerate range");
        rep.hilbert = hilbert_function(f);
        return rep;
    }
    rep.hilbert = hilbert_function(f);
    std::vector<int> want = {1, m, m, 1};
    if (rep.hilbert.values != want) {
        rep.verdict = Verdict::degenerate;
        rep.evidence.push_back("Hilbert function differs from (1, m, m, 1)");
        return rep;
    }

    auto blocks = minimal_generators(f, 4);
    for (const auto& b : blocks) rep.beta1[b.degree] = b.generators.dim();

    std::vector<Form> gens;
    for (const auto& b : blocks)
        for (Form gform : b.generators.forms()) gens.push_back(std::move(gform));
    BettiTable table = betti_table(gens, 2, 4);
    rep.beta2[3] = table.at(2, 3);
    rep.beta2[4] = table.at(2, 4);

    const long long pairs = static_cast<long long>(m) * (m - 1) / 2;
    if (rep.beta1[3] > 0) {
        rep.verdict = Verdict::fermat_type;
        rep.evidence.push_back("beta_{1,3} = " + std::to_string(rep.beta1[3]) +
                               " > 0: a cubic minimal generator is present");
        rep.evidence.push_back("canonical-curve reading: trigonal or plane-quintic range, "
                               "apolarity g-2");
        return rep;
    }

    // For m = 3 the annihilator of a quadric-generated form is a complete
    // intersection of three quadrics, so rank exactness forces
    // beta_{2,4} = C(3,2); for m >= 4 the count is C(m,2) - 1.
    const long long expected_b24 = (m == 3) ? pairs : pairs - 1;
    if (rep.beta1[2] == pairs && rep.beta1[3] == 0 && rep.beta1[4] == 0 &&
        rep.beta2[4] == expected_b24) {
        rep.verdict = Verdict::almost_minimal_candidate;
        rep.evidence.push_back("beta_{1,2} = C(m,2) = " + std::to_string(pairs) +
                               ", beta_{1,3} = 0");
        rep.evidence.push_back("beta_{2,4} = " + std::to_string(rep.beta2[4]));
        rep.evidence.push_back("canonical-curve reading: bielliptic, plane-sextic or "
                               "quadric-quartic intersection range, apolarity g-1");
        if (f.spec().is_prime_field()) {
            try {
                auto found = waring_rank_bruteforce(f, m + 1, budget);
                if (found) {
                    rep.evidence.push_back("apolar point set of size " +
                                           std::to_string(found->rank) + " exhibited over " +
                                           f.spec().name());
                    rep.certificate = std::move(found->decomposition);
                } else {
                    rep.evidence.push_back("no decomposition with at most " +
                                           std::to_string(m + 1) + " points over " +
                                           f.spec().name());
                }
            } catch (const error& e) {
                if (e.code() != errc::budget_exceeded) throw;
                rep.evidence.push_back("point-set search stopped by budget");
            }
        }
        return rep;
    }

    rep.verdict = Verdict::other;
    rep.evidence.push_back("annihilator shape matches neither classified pattern");
    return rep;
}

} // namespace apolar
