#pragma once

#include <apolar/field.hpp>

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

namespace apolar {

/// Exponent tuple of a monomial. Shared by the polynomial ring (x-variables)
/// and the divided-power algebra (y-variables); the basis interpretation
/// lives in the form types, not here.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {}
    MultiIndex(std::initializer_list<int> exponents) : e_(exponents) {}

    static MultiIndex unit(int var_count, int var, int exponent = 1) {
        std::vector<int> e(var_count, 0);
        e[var] = exponent;
        return MultiIndex(std::move(e));
    }

    int var_count() const { return static_cast<int>(e_.size()); }
    int degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }
    int operator[](int i) const { return e_[i]; }
    const std::vector<int>& exponents() const { return e_; }

    /// componentwise gamma >= delta
    bool divides_into(const MultiIndex& delta) const {
        for (int i = 0; i < var_count(); ++i)
            if (e_[i] > delta.e_[i]) return false;
        return true;
    }

    MultiIndex operator+(const MultiIndex& o) const {
        std::vector<int> r(e_);
        for (int i = 0; i < var_count(); ++i) r[i] += o.e_[i];
        return MultiIndex(std::move(r));
    }

    /// requires o.divides_into(*this)
    MultiIndex operator-(const MultiIndex& o) const {
        std::vector<int> r(e_);
        for (int i = 0; i < var_count(); ++i) r[i] -= o.e_[i];
        return MultiIndex(std::move(r));
    }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) {
        return a.e_ <=> b.e_;
    }

private:
    std::vector<int> e_;
};

/// Canonical term order: degree first, then lexicographic with the first
/// variable largest. Every matrix column order in the library derives from it.
struct MonomialOrder {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.exponents() > b.exponents(); // lex-descending within a degree
    }
};

inline Int binomial(long long n, long long k) {
    if (k < 0 || k > n) return Int(0);
    Int r = 1;
    for (long long i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

/// (gamma+delta)! / (gamma! delta!) as an exact integer (always integral).
inline Int multinomial_product(const MultiIndex& gamma, const MultiIndex& delta) {
    Int r = 1;
    for (int i = 0; i < gamma.var_count(); ++i)
        r *= binomial(gamma[i] + delta[i], gamma[i]);
    return r;
}

/// All monomials of a fixed degree in canonical order, with index lookup.
class MonomialBasis {
public:
    MonomialBasis(int var_count, int degree) : var_count_(var_count), degree_(degree) {
        std::vector<int> cur(var_count, 0);
        generate(0, degree, cur);
        for (int i = 0; i < static_cast<int>(list_.size()); ++i)
            index_.emplace(list_[i], i);
    }

    int var_count() const { return var_count_; }
    int degree() const { return degree_; }
    int dim() const { return static_cast<int>(list_.size()); }
    const MultiIndex& at(int i) const { return list_[i]; }
    const std::vector<MultiIndex>& list() const { return list_; }

    int index_of(const MultiIndex& m) const {
        auto it = index_.find(m);
        if (it == index_.end())
            throw error(errc::out_of_range, "monomial outside basis");
        return it->second;
    }

private:
    void generate(int pos, int remaining, std::vector<int>& cur) {
        if (pos == var_count_ - 1) {
            cur[pos] = remaining;
            list_.emplace_back(cur);
            cur[pos] = 0;
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            cur[pos] = e;
            generate(pos + 1, remaining - e, cur);
        }
        cur[pos] = 0;
    }

    int var_count_;
    int degree_;
    std::vector<MultiIndex> list_;
    std::map<MultiIndex, int> index_;
};

/// Process-wide memo; graded pieces re-request the same (vars, degree) bases
/// constantly and concurrent readers are allowed.
inline const MonomialBasis& monomial_basis(int var_count, int degree) {
    static std::map<std::pair<int, int>, std::unique_ptr<MonomialBasis>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(var_count, degree);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<MonomialBasis>(var_count, degree)).first;
    return *it->second;
}

inline int graded_dim(int var_count, int degree) {
    if (degree < 0) return 0;
    return binomial(var_count + degree - 1, degree).convert_to<int>();
}

} // namespace apolar
