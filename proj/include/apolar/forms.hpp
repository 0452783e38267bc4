#pragma once

#include <apolar/field.hpp>
#include <apolar/monomial.hpp>

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace apolar {

namespace detail {
struct poly_tag {};    // monomial basis x^gamma of the polynomial ring
struct divided_tag {}; // divided-power basis y^[gamma]
} // namespace detail

/// Homogeneous element of one graded piece, as a sparse coefficient map in
/// canonical term order. The tag pins the basis interpretation; x- and
/// y-side elements are distinct types and never mix.
template <class Tag>
class GradedForm {
public:
    using CoeffMap = std::map<MultiIndex, FieldElement, MonomialOrder>;

    GradedForm(int var_count, int degree, const FieldSpec& spec)
        : var_count_(var_count), degree_(degree), spec_(spec) {}

    int var_count() const { return var_count_; }
    int degree() const { return degree_; }
    const FieldSpec& spec() const { return spec_; }
    const CoeffMap& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    FieldElement coeff(const MultiIndex& m) const {
        auto it = coeffs_.find(m);
        return it == coeffs_.end() ? FieldElement::zero(spec_) : it->second;
    }

    void add_term(const MultiIndex& m, const FieldElement& c) {
        if (m.var_count() != var_count_)
            throw error(errc::variable_mismatch, "term has wrong variable count");
        if (m.degree() != degree_)
            throw error(errc::degree_mismatch, "term degree differs from form degree");
        if (!(c.spec() == spec_))
            throw error(errc::field_mismatch, "coefficient field differs from form field");
        auto it = coeffs_.find(m);
        if (it == coeffs_.end()) {
            if (!c.is_zero()) coeffs_.emplace(m, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }

    GradedForm operator+(const GradedForm& o) const {
        require_compatible(o);
        if (degree_ != o.degree_)
            throw error(errc::degree_mismatch, "cannot add forms of different degrees");
        GradedForm r(*this);
        for (const auto& [m, c] : o.coeffs_) r.add_term(m, c);
        return r;
    }

    GradedForm operator-(const GradedForm& o) const {
        require_compatible(o);
        if (degree_ != o.degree_)
            throw error(errc::degree_mismatch, "cannot subtract forms of different degrees");
        GradedForm r(*this);
        for (const auto& [m, c] : o.coeffs_) r.add_term(m, -c);
        return r;
    }

    GradedForm scaled(const FieldElement& s) const {
        GradedForm r(var_count_, degree_, spec_);
        if (s.is_zero()) return r;
        for (const auto& [m, c] : coeffs_) r.coeffs_.emplace(m, s * c);
        return r;
    }

    std::vector<FieldElement> dense() const {
        const MonomialBasis& basis = monomial_basis(var_count_, degree_);
        std::vector<FieldElement> v(basis.dim(), FieldElement::zero(spec_));
        for (const auto& [m, c] : coeffs_) v[basis.index_of(m)] = c;
        return v;
    }

    static GradedForm from_dense(const std::vector<FieldElement>& v, int var_count, int degree,
                                 const FieldSpec& spec) {
        const MonomialBasis& basis = monomial_basis(var_count, degree);
        GradedForm f(var_count, degree, spec);
        for (int i = 0; i < basis.dim(); ++i)
            if (!v[i].is_zero()) f.coeffs_.emplace(basis.at(i), v[i]);
        return f;
    }

    void require_compatible(const GradedForm& o) const {
        if (var_count_ != o.var_count_)
            throw error(errc::variable_mismatch, "forms have different variable counts");
        if (!(spec_ == o.spec_))
            throw error(errc::field_mismatch, "forms live over different fields");
    }

    friend bool operator==(const GradedForm& a, const GradedForm& b) {
        return a.var_count_ == b.var_count_ && a.degree_ == b.degree_ && a.spec_ == b.spec_ &&
               a.coeffs_ == b.coeffs_;
    }

private:
    int var_count_;
    int degree_;
    FieldSpec spec_;
    CoeffMap coeffs_;
};

using Form = GradedForm<detail::poly_tag>;          // element of T_d
using DividedForm = GradedForm<detail::divided_tag>; // element of R_d

/// ell = sum a_i y_i, also read as the dual point [a_0 : ... : a_n].
class LinearForm {
public:
    LinearForm(std::vector<FieldElement> coords, const FieldSpec& spec)
        : a_(std::move(coords)), spec_(spec) {
        for (const auto& c : a_)
            if (!(c.spec() == spec_))
                throw error(errc::field_mismatch, "coordinate field differs");
    }

    int var_count() const { return static_cast<int>(a_.size()); }
    const FieldSpec& spec() const { return spec_; }
    const std::vector<FieldElement>& coords() const { return a_; }
    const FieldElement& operator[](int i) const { return a_[i]; }

    bool is_zero() const {
        for (const auto& c : a_)
            if (!c.is_zero()) return false;
        return true;
    }

    DividedForm as_form() const {
        DividedForm f(var_count(), 1, spec_);
        for (int i = 0; i < var_count(); ++i)
            f.add_term(MultiIndex::unit(var_count(), i), a_[i]);
        return f;
    }

    friend bool operator==(const LinearForm&, const LinearForm&) = default;

private:
    std::vector<FieldElement> a_;
    FieldSpec spec_;
};

/// x^gamma * x^delta = x^(gamma+delta), extended bilinearly.
inline Form poly_mul(const Form& f, const Form& g) {
    f.require_compatible(g);
    Form r(f.var_count(), f.degree() + g.degree(), f.spec());
    for (const auto& [mf, cf] : f.coeffs())
        for (const auto& [mg, cg] : g.coeffs()) r.add_term(mf + mg, cf * cg);
    return r;
}

inline Form monomial_times(const MultiIndex& m, const Form& f) {
    Form r(f.var_count(), f.degree() + m.degree(), f.spec());
    for (const auto& [mf, cf] : f.coeffs()) r.add_term(m + mf, cf);
    return r;
}

/// Divided-power product: y^[gamma] y^[delta] = ((gamma+delta)!/(gamma! delta!)) y^[gamma+delta].
/// The integer coefficient is computed exactly in Z and then embedded, so the
/// rule is correct in every characteristic.
inline DividedForm dp_mul(const DividedForm& f, const DividedForm& g) {
    f.require_compatible(g);
    DividedForm r(f.var_count(), f.degree() + g.degree(), f.spec());
    for (const auto& [mf, cf] : f.coeffs())
        for (const auto& [mg, cg] : g.coeffs()) {
            FieldElement k = integer_embed(multinomial_product(mf, mg), f.spec());
            r.add_term(mf + mg, cf * cg * k);
        }
    return r;
}

/// Contraction action of T on R: x^gamma (y^[delta]) = y^[delta-gamma] when
/// delta >= gamma, else 0. Degenerately zero when deg q > deg f.
inline DividedForm contract(const Form& q, const DividedForm& f) {
    if (q.var_count() != f.var_count())
        throw error(errc::variable_mismatch, "contraction needs matching variables");
    if (!(q.spec() == f.spec()))
        throw error(errc::field_mismatch, "contraction needs matching fields");
    int rd = f.degree() - q.degree();
    if (rd < 0) return DividedForm(f.var_count(), 0, f.spec());
    DividedForm r(f.var_count(), rd, f.spec());
    for (const auto& [mq, cq] : q.coeffs())
        for (const auto& [mf, cf] : f.coeffs())
            if (mq.divides_into(mf)) r.add_term(mf - mq, cq * cf);
    return r;
}

/// The perfect pairing T_d x R_d -> k; monomial bases are dual to each other.
inline FieldElement pairing_value(const Form& q, const DividedForm& f) {
    if (q.degree() != f.degree())
        throw error(errc::degree_mismatch, "pairing needs equal degrees");
    DividedForm scalar = contract(q, f);
    FieldElement v = FieldElement::zero(f.spec());
    for (const auto& [m, c] : scalar.coeffs()) v += c;
    return v;
}

/// ell^[d] = sum over |delta| = d of a^delta y^[delta]; no factorial
/// denominators appear, valid in every characteristic.
inline DividedForm divided_power(const LinearForm& ell, int d) {
    if (d < 0) throw error(errc::out_of_range, "negative divided power");
    const FieldSpec& spec = ell.spec();
    const MonomialBasis& basis = monomial_basis(ell.var_count(), d);
    DividedForm f(ell.var_count(), d, spec);
    for (const MultiIndex& delta : basis.list()) {
        FieldElement c = FieldElement::one(spec);
        for (int i = 0; i < ell.var_count() && !c.is_zero(); ++i)
            for (int k = 0; k < delta[i]; ++k) c *= ell[i];
        f.add_term(delta, c);
    }
    return f;
}

/// q evaluated at the coordinate tuple a.
inline FieldElement evaluate(const Form& q, const std::vector<FieldElement>& a) {
    if (static_cast<int>(a.size()) != q.var_count())
        throw error(errc::variable_mismatch, "evaluation point has wrong length");
    FieldElement total = FieldElement::zero(q.spec());
    for (const auto& [m, c] : q.coeffs()) {
        FieldElement t = c;
        for (int i = 0; i < q.var_count() && !t.is_zero(); ++i)
            for (int k = 0; k < m[i]; ++k) t *= a[i];
        total += t;
    }
    return total;
}

struct EvalIdentityResult {
    DividedForm lhs; // q(ell^[d])
    DividedForm rhs; // q(a) * ell^[d-e]
    bool equal;
};

/// Exposed self-test of q(ell^[d]) = q(a) ell^[d-e]; both sides are returned
/// so a caller can inspect a (hypothetical) discrepancy.
inline EvalIdentityResult eval_identity_check(const Form& q, const LinearForm& ell, int d) {
    if (q.degree() > d)
        throw error(errc::degree_mismatch, "identity needs deg q <= d");
    DividedForm lhs = contract(q, divided_power(ell, d));
    FieldElement qa = evaluate(q, ell.coords());
    DividedForm rhs = divided_power(ell, d - q.degree()).scaled(qa);
    return EvalIdentityResult{lhs, rhs, lhs == rhs};
}

namespace detail {
template <class Tag>
inline const char* variable_letter();
template <>
inline const char* variable_letter<poly_tag>() { return "x"; }
template <>
inline const char* variable_letter<divided_tag>() { return "y"; }
template <class Tag>
inline bool divided_exponent_syntax();
template <>
inline bool divided_exponent_syntax<poly_tag>() { return false; }
template <>
inline bool divided_exponent_syntax<divided_tag>() { return true; }
} // namespace detail

/// Round-trippable text rendering, e.g. "2*y0^[3] + y0^[2]*y1 - 1/3*y2^[3]".
template <class Tag>
inline std::string to_string(const GradedForm<Tag>& f) {
    if (f.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : f.coeffs()) {
        std::string cs = c.str();
        bool negative = !cs.empty() && cs.front() == '-';
        if (first) {
            if (negative) out << "-";
            first = false;
        } else {
            out << (negative ? " - " : " + ");
        }
        if (negative) cs.erase(cs.begin());

        std::vector<std::string> factors;
        for (int i = 0; i < m.var_count(); ++i) {
            if (m[i] == 0) continue;
            std::ostringstream v;
            v << detail::variable_letter<Tag>() << i;
            if (m[i] > 1) {
                if (detail::divided_exponent_syntax<Tag>())
                    v << "^[" << m[i] << "]";
                else
                    v << "^" << m[i];
            }
            factors.push_back(v.str());
        }
        bool unit_coeff = (cs == "1") && !factors.empty();
        if (!unit_coeff) out << cs;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i > 0 || !unit_coeff) out << "*";
            out << factors[i];
        }
    }
    return out.str();
}

} // namespace apolar
