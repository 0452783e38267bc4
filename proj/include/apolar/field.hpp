#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace apolar {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

enum class errc {
    division_by_zero,
    field_mismatch,
    variable_mismatch,
    degree_mismatch,
    ambient_mismatch,
    zero_form,
    zero_lambda,
    out_of_range,
    truncation_too_deep,
    not_gorenstein,
    not_a_syzygy,
    budget_exceeded,
    syntax_error,
    inhomogeneous,
    mixed_namespace,
    plain_power_ambiguity,
    invalid_input,
};

/// Library-wide exception carrying a machine-checkable error code.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

namespace detail {

inline bool is_prime_u32(std::uint32_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

// inverse of a mod p via extended Euclid; a in [1, p)
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    std::int64_t old_r = a, r = p;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw error(errc::division_by_zero, "element has no inverse");
    return ((old_s % p) + p) % p;
}

} // namespace detail

/// Identifies the coefficient field: the rationals or a prime field F_p.
/// Moduli are capped below 2^31 so products of residues fit in 64 bits.
class FieldSpec {
public:
    FieldSpec() = default;

    static FieldSpec rationals() { return FieldSpec(); }

    static FieldSpec prime_field(std::uint32_t p) {
        if (p >= (1u << 31))
            throw error(errc::out_of_range, "prime modulus must be below 2^31");
        if (!detail::is_prime_u32(p))
            throw error(errc::invalid_input, "modulus " + std::to_string(p) + " is not prime");
        FieldSpec s;
        s.p_ = p;
        return s;
    }

    std::uint32_t characteristic() const { return p_; }
    bool is_prime_field() const { return p_ != 0; }
    std::uint32_t modulus() const { return p_; }

    std::string name() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    std::uint32_t p_ = 0; // 0 means the rationals
};

/// Exact scalar: a reduced fraction over Q or a residue in [0, p) over F_p.
/// Values are immutable in canonical form, so == is representational equality.
class FieldElement {
public:
    FieldElement() : spec_(), v_(Rational(0)) {}

    static FieldElement zero(const FieldSpec& spec) { return from_integer(0, spec); }
    static FieldElement one(const FieldSpec& spec) { return from_integer(1, spec); }

    static FieldElement from_integer(long long m, const FieldSpec& spec) {
        if (!spec.is_prime_field()) return FieldElement(spec, Rational(m));
        std::int64_t p = spec.modulus();
        return FieldElement(spec, ((m % p) + p) % p);
    }

    static FieldElement from_integer(const Int& m, const FieldSpec& spec) {
        if (!spec.is_prime_field()) return FieldElement(spec, Rational(m));
        Int r = m % static_cast<long long>(spec.modulus());
        if (r < 0) r += spec.modulus();
        return FieldElement(spec, r.convert_to<std::int64_t>());
    }

    /// num/den reduced into the field; over F_p requires p not dividing den.
    static FieldElement from_rational(const Rational& q, const FieldSpec& spec) {
        if (!spec.is_prime_field()) return FieldElement(spec, q);
        FieldElement num = from_integer(Int(boost::multiprecision::numerator(q)), spec);
        FieldElement den = from_integer(Int(boost::multiprecision::denominator(q)), spec);
        return num / den;
    }

    const FieldSpec& spec() const { return spec_; }
    bool is_zero() const {
        return spec_.is_prime_field() ? std::get<std::int64_t>(v_) == 0
                                      : std::get<Rational>(v_).is_zero();
    }
    bool is_one() const {
        return spec_.is_prime_field() ? std::get<std::int64_t>(v_) == 1
                                      : std::get<Rational>(v_) == 1;
    }

    const Rational& rational() const {
        if (spec_.is_prime_field()) throw error(errc::field_mismatch, "not a rational element");
        return std::get<Rational>(v_);
    }
    std::int64_t residue() const {
        if (!spec_.is_prime_field()) throw error(errc::field_mismatch, "not a prime-field element");
        return std::get<std::int64_t>(v_);
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.require_same(b);
        if (a.spec_.is_prime_field())
            return FieldElement(a.spec_, (a.res() + b.res()) % a.p());
        return FieldElement(a.spec_, a.rat() + b.rat());
    }

    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.require_same(b);
        if (a.spec_.is_prime_field())
            return FieldElement(a.spec_, (a.res() - b.res() + a.p()) % a.p());
        return FieldElement(a.spec_, a.rat() - b.rat());
    }

    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.require_same(b);
        if (a.spec_.is_prime_field())
            return FieldElement(a.spec_, (a.res() * b.res()) % a.p());
        return FieldElement(a.spec_, a.rat() * b.rat());
    }

    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        return a * b.inverse();
    }

    FieldElement operator-() const {
        if (spec_.is_prime_field()) return FieldElement(spec_, (p() - res()) % p());
        return FieldElement(spec_, -rat());
    }

    FieldElement inverse() const {
        if (is_zero()) throw error(errc::division_by_zero, "division by zero");
        if (spec_.is_prime_field())
            return FieldElement(spec_, detail::mod_inverse(res(), p()));
        return FieldElement(spec_, Rational(1) / rat());
    }

    FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
    FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
    FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.spec_ == b.spec_ && a.v_ == b.v_;
    }

    std::string str() const {
        if (spec_.is_prime_field()) return std::to_string(res());
        return rat().str();
    }

private:
    FieldElement(const FieldSpec& spec, Rational q) : spec_(spec), v_(std::move(q)) {}
    FieldElement(const FieldSpec& spec, std::int64_t r) : spec_(spec), v_(r) {}

    void require_same(const FieldElement& b) const {
        if (!(spec_ == b.spec_))
            throw error(errc::field_mismatch,
                        "field mismatch: " + spec_.name() + " vs " + b.spec_.name());
    }

    std::int64_t res() const { return std::get<std::int64_t>(v_); }
    const Rational& rat() const { return std::get<Rational>(v_); }
    std::int64_t p() const { return spec_.modulus(); }

    FieldSpec spec_;
    std::variant<Rational, std::int64_t> v_;
};

/// Image of an integer under the unique ring map Z -> k.
inline FieldElement integer_embed(long long m, const FieldSpec& spec) {
    return FieldElement::from_integer(m, spec);
}

inline FieldElement integer_embed(const Int& m, const FieldSpec& spec) {
    return FieldElement::from_integer(m, spec);
}

} // namespace apolar
