#pragma once

#include <apolar/forms.hpp>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace apolar {

/// Either side of the pairing, as parsed: x-variables give a polynomial
/// form, y-variables a divided-power form. One expression never mixes them.
struct ParsedForm {
    std::variant<Form, DividedForm> value;

    bool is_divided() const { return std::holds_alternative<DividedForm>(value); }
    const Form& poly() const { return std::get<Form>(value); }
    const DividedForm& divided() const { return std::get<DividedForm>(value); }

    int degree() const {
        return is_divided() ? divided().degree() : poly().degree();
    }
    int var_count() const {
        return is_divided() ? divided().var_count() : poly().var_count();
    }
};

namespace detail {

class FormParser {
public:
    FormParser(std::string_view text, const FieldSpec& spec) : text_(text), spec_(spec) {}

    ParsedForm parse() {
        skip_ws();
        if (eof()) fail("empty expression");
        parse_expression();
        skip_ws();
        if (!eof()) fail("unexpected trailing input");
        if (!seen_y_ && !seen_x_) fail("expression has no variables");

        // terms arrive with heterogeneous variable counts; rebuild over the
        // widest one
        int vars = max_var_ + 1;
        if (seen_y_) {
            DividedForm f(vars, degree_, spec_);
            for (const auto& [m, c] : terms_) f.add_term(widen(m, vars), c);
            return ParsedForm{std::move(f)};
        }
        Form f(vars, degree_, spec_);
        for (const auto& [m, c] : terms_) f.add_term(widen(m, vars), c);
        return ParsedForm{std::move(f)};
    }

private:
    [[noreturn]] void fail(const std::string& msg, std::optional<errc> code = std::nullopt) {
        throw error(code.value_or(errc::syntax_error),
                    msg + " at position " + std::to_string(pos_));
    }

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return eof() ? '\0' : text_[pos_]; }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    long long parse_integer() {
        skip_ws();
        std::size_t start = pos_;
        while (!eof() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected an integer");
        return std::stoll(std::string(text_.substr(start, pos_ - start)));
    }

    void parse_expression() {
        bool negative = false;
        skip_ws();
        if (accept('-'))
            negative = true;
        else
            accept('+');
        parse_term(negative);
        while (true) {
            skip_ws();
            if (accept('+'))
                parse_term(false);
            else if (accept('-'))
                parse_term(true);
            else
                break;
        }
    }

    struct Factor {
        bool is_y;
        int var;
        int exponent;
        bool divided;
    };

    void parse_term(bool negative) {
        FieldElement coeff = FieldElement::one(spec_);
        skip_ws();
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            long long num = parse_integer();
            skip_ws();
            if (peek() == '/') {
                ++pos_;
                long long den = parse_integer();
                if (den == 0) fail("zero denominator");
                coeff = FieldElement::from_rational(Rational(num, den), spec_);
            } else {
                coeff = integer_embed(num, spec_);
            }
        }
        if (negative) coeff = -coeff;

        std::vector<Factor> factors;
        while (true) {
            skip_ws();
            bool had_star = accept('*');
            skip_ws();
            char c = peek();
            if (c != 'x' && c != 'y') {
                if (had_star) fail("expected a variable after '*'");
                break;
            }
            factors.push_back(parse_factor());
        }
        if (factors.empty()) fail("term has no variables");

        // plain exponents merge per variable; divided factors keep their
        // order so the divided-power product rule applies factor by factor
        std::map<int, int> plain_exp;
        bool term_is_y = factors.front().is_y;
        for (const Factor& f : factors) {
            if (f.is_y != term_is_y)
                fail("x- and y-variables mixed in one expression", errc::mixed_namespace);
            if (!f.divided) plain_exp[f.var] += f.exponent;
        }
        if (term_is_y)
            seen_y_ = true;
        else
            seen_x_ = true;
        if (seen_x_ && seen_y_)
            fail("x- and y-variables mixed in one expression", errc::mixed_namespace);

        // plain powers of y-variables convert through factorials; the
        // conversion is lossy whenever char k divides one of them
        const std::uint32_t p = spec_.characteristic();
        if (term_is_y) {
            for (const auto& [var, k] : plain_exp) {
                if (k >= 2 && p != 0 && static_cast<long long>(p) <= k)
                    fail("plain power y" + std::to_string(var) + "^" + std::to_string(k) +
                             " is ambiguous in characteristic " + std::to_string(p) +
                             "; write y" + std::to_string(var) + "^[" + std::to_string(k) + "]",
                         errc::plain_power_ambiguity);
            }
        }

        std::map<int, int> exponents;
        Int multiplier = 1;
        for (const Factor& f : factors) {
            if (!f.divided) continue;
            // y^[a] y^[b] carries a binomial factor when the variable repeats
            multiplier *= binomial(exponents[f.var] + f.exponent, f.exponent);
            exponents[f.var] += f.exponent;
        }
        for (const auto& [var, k] : plain_exp) {
            if (term_is_y) {
                // y^[a] * y^k = ((a+k)!/a!) y^[a+k]
                for (int t = 1; t <= k; ++t) multiplier *= exponents[var] + t;
            }
            exponents[var] += k;
        }
        coeff *= integer_embed(multiplier, spec_);

        int vars = 0, deg = 0;
        for (const auto& [var, k] : exponents) {
            vars = std::max(vars, var + 1);
            deg += k;
        }
        if (first_term_) {
            degree_ = deg;
            first_term_ = false;
        } else if (deg != degree_) {
            fail("terms of degree " + std::to_string(degree_) + " and " + std::to_string(deg) +
                     " in one form",
                 errc::inhomogeneous);
        }
        max_var_ = std::max(max_var_, vars - 1);

        std::vector<int> e(vars, 0);
        for (const auto& [var, k] : exponents) e[var] = k;
        MultiIndex mono{std::move(e)};
        auto it = std::find_if(terms_.begin(), terms_.end(),
                               [&](const auto& t) { return t.first == mono; });
        if (it == terms_.end())
            terms_.emplace_back(std::move(mono), coeff);
        else
            it->second += coeff;
    }

    Factor parse_factor() {
        bool is_y = peek() == 'y';
        ++pos_;
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail("variable needs an index");
        int var = static_cast<int>(parse_integer());
        int exponent = 1;
        bool divided = false;
        if (peek() == '^') {
            ++pos_;
            if (peek() == '[') {
                ++pos_;
                divided = true;
                exponent = static_cast<int>(parse_integer());
                if (!accept(']')) fail("missing ']' after divided exponent");
            } else {
                exponent = static_cast<int>(parse_integer());
            }
        }
        if (exponent < 1) fail("exponents must be positive");
        if (divided && !is_y)
            fail("divided exponents apply to y-variables only");
        return Factor{is_y, var, exponent, divided};
    }

    static MultiIndex widen(const MultiIndex& m, int vars) {
        std::vector<int> e = m.exponents();
        e.resize(vars, 0);
        return MultiIndex(std::move(e));
    }

    std::string_view text_;
    FieldSpec spec_;
    std::size_t pos_ = 0;
    bool seen_x_ = false;
    bool seen_y_ = false;
    bool first_term_ = true;
    int degree_ = 0;
    int max_var_ = -1;
    std::vector<std::pair<MultiIndex, FieldElement>> terms_;
};

} // namespace detail

inline ParsedForm parse_form(std::string_view text, const FieldSpec& spec) {
    return detail::FormParser(text, spec).parse();
}

/// "a" or "a/b" as a field element
inline FieldElement parse_field_element(std::string_view text, const FieldSpec& spec) {
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return integer_embed(Int(s), spec);
        return FieldElement::from_rational(
            Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1))), spec);
    } catch (const std::exception& e) {
        throw error(errc::syntax_error, "bad scalar '" + s + "'");
    }
}

/// "q" or "f<p>" as used by --field
inline FieldSpec parse_field_spec(std::string_view text) {
    if (text == "q" || text == "Q") return FieldSpec::rationals();
    if ((text.front() == 'f' || text.front() == 'F') && text.size() > 1) {
        try {
            return FieldSpec::prime_field(
                static_cast<std::uint32_t>(std::stoul(std::string(text.substr(1)))));
        } catch (const error&) {
            throw;
        } catch (const std::exception&) {
            throw error(errc::invalid_input, "bad field '" + std::string(text) + "'");
        }
    }
    throw error(errc::invalid_input,
                "bad field '" + std::string(text) + "' (expected q or f<p>)");
}

} // namespace apolar
