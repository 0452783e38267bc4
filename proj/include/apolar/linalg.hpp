#pragma once

#include <apolar/field.hpp>

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace apolar {

/// Row-major sparse matrix over a single field. No stored zeros, one entry
/// per position, every entry in the matrix's field.
class SparseMatrix {
public:
    using Row = std::vector<std::pair<int, FieldElement>>; // sorted by column

    SparseMatrix(int rows, int cols, const FieldSpec& spec)
        : rows_(rows), cols_(cols), spec_(spec), data_(rows) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldSpec& spec() const { return spec_; }

    void set(int r, int c, const FieldElement& v) {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw error(errc::out_of_range, "matrix position out of range");
        if (!(v.spec() == spec_))
            throw error(errc::field_mismatch, "entry field differs from matrix field");
        Row& row = data_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& e, int col) { return e.first < col; });
        bool present = it != row.end() && it->first == c;
        if (v.is_zero()) {
            if (present) row.erase(it);
            return;
        }
        if (present)
            it->second = v;
        else
            row.insert(it, {c, v});
    }

    FieldElement at(int r, int c) const {
        const Row& row = data_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& e, int col) { return e.first < col; });
        if (it != row.end() && it->first == c) return it->second;
        return FieldElement::zero(spec_);
    }

    const Row& row(int r) const { return data_[r]; }

    void set_row(int r, Row row) { data_[r] = std::move(row); }

    std::vector<FieldElement> row_dense(int r) const {
        std::vector<FieldElement> v(cols_, FieldElement::zero(spec_));
        for (const auto& [c, val] : data_[r]) v[c] = val;
        return v;
    }

    std::vector<FieldElement> apply(const std::vector<FieldElement>& x) const {
        std::vector<FieldElement> y(rows_, FieldElement::zero(spec_));
        for (int r = 0; r < rows_; ++r)
            for (const auto& [c, val] : data_[r]) y[r] += val * x[c];
        return y;
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.spec_ == b.spec_ &&
               a.data_ == b.data_;
    }

private:
    int rows_;
    int cols_;
    FieldSpec spec_;
    std::vector<Row> data_;
};

/// A subspace of k^ambient held as the canonical reduced row echelon basis,
/// pivots 1 with strictly increasing pivot columns. Two Basis objects are
/// equal exactly when they represent the same subspace.
class Basis {
public:
    Basis(int ambient, const FieldSpec& spec)
        : ambient_(ambient), matrix_(0, ambient, spec), pivots_() {}

    Basis(SparseMatrix rref_rows, std::vector<int> pivots)
        : ambient_(rref_rows.cols()), matrix_(std::move(rref_rows)), pivots_(std::move(pivots)) {}

    int ambient_dim() const { return ambient_; }
    int dim() const { return matrix_.rows(); }
    const SparseMatrix& matrix() const { return matrix_; }
    const std::vector<int>& pivot_cols() const { return pivots_; }
    const FieldSpec& spec() const { return matrix_.spec(); }

    friend bool operator==(const Basis& a, const Basis& b) {
        return a.ambient_ == b.ambient_ && a.matrix_ == b.matrix_;
    }

private:
    int ambient_;
    SparseMatrix matrix_; // rows form the basis, in RREF
    std::vector<int> pivots_;
};

struct RrefResult {
    Basis row_space;
    std::vector<int> pivot_cols;
    int rank;
};

namespace detail {

// --- rational engine: fraction-free rows of integers, gcd content removal ---

using IntRow = std::vector<std::pair<int, Int>>; // sorted by column

inline void content_reduce(IntRow& row) {
    if (row.empty()) return;
    Int g = 0;
    for (const auto& [c, v] : row) {
        g = boost::multiprecision::gcd(g, v);
        if (g == 1) break;
    }
    if (g > 1)
        for (auto& [c, v] : row) v /= g;
    if (row.front().second < 0)
        for (auto& [c, v] : row) v = -v;
}

// a*target - b*pivot, columns merged; result content-reduced
inline IntRow int_row_eliminate(const IntRow& target, const IntRow& pivot, const Int& a,
                                const Int& b) {
    IntRow out;
    out.reserve(target.size() + pivot.size());
    std::size_t i = 0, j = 0;
    while (i < target.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < target.size() && target[i].first < pivot[j].first)) {
            out.emplace_back(target[i].first, a * target[i].second);
            ++i;
        } else if (i == target.size() || pivot[j].first < target[i].first) {
            out.emplace_back(pivot[j].first, -b * pivot[j].second);
            ++j;
        } else {
            Int v = a * target[i].second - b * pivot[j].second;
            if (v != 0) out.emplace_back(target[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    content_reduce(out);
    return out;
}

inline std::optional<Int> int_row_coeff(const IntRow& row, int col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, int c) { return e.first < c; });
    if (it != row.end() && it->first == col) return it->second;
    return std::nullopt;
}

inline RrefResult rref_rational(const SparseMatrix& m) {
    const FieldSpec spec = m.spec();
    const int cols = m.cols();

    // clear denominators row by row
    std::vector<IntRow> pending_rows;
    pending_rows.reserve(m.rows());
    for (int r = 0; r < m.rows(); ++r) {
        const auto& row = m.row(r);
        if (row.empty()) continue;
        Int den = 1;
        for (const auto& [c, v] : row)
            den = boost::multiprecision::lcm(den, Int(boost::multiprecision::denominator(v.rational())));
        IntRow irow;
        irow.reserve(row.size());
        for (const auto& [c, v] : row) {
            const Rational& q = v.rational();
            irow.emplace_back(c, Int(boost::multiprecision::numerator(q)) *
                                     (den / Int(boost::multiprecision::denominator(q))));
        }
        content_reduce(irow);
        pending_rows.push_back(std::move(irow));
    }

    // bucket rows by leading column; first-come pivot choice
    std::vector<std::vector<IntRow>> buckets(cols);
    for (auto& row : pending_rows) buckets[row.front().first].push_back(std::move(row));

    std::vector<IntRow> done;
    std::vector<int> pivots;
    for (int c = 0; c < cols; ++c) {
        auto rows = std::move(buckets[c]);
        if (rows.empty()) continue;
        IntRow pivot = std::move(rows.front());
        const Int a = pivot.front().second;
        for (std::size_t k = 1; k < rows.size(); ++k) {
            const Int b = rows[k].front().second;
            Int g = boost::multiprecision::gcd(a, b);
            IntRow reduced = int_row_eliminate(rows[k], pivot, a / g, b / g);
            if (!reduced.empty()) buckets[reduced.front().first].push_back(std::move(reduced));
        }
        done.push_back(std::move(pivot));
        pivots.push_back(c);
    }

    // back-substitution to reduced form
    for (int i = static_cast<int>(done.size()) - 1; i >= 0; --i) {
        const int pc = pivots[i];
        const Int a = done[i].front().second;
        for (int j = 0; j < i; ++j) {
            auto b = int_row_coeff(done[j], pc);
            if (!b) continue;
            Int g = boost::multiprecision::gcd(a, *b);
            done[j] = int_row_eliminate(done[j], done[i], a / g, *b / g);
        }
    }

    // normalize pivots to 1
    SparseMatrix out(static_cast<int>(done.size()), cols, spec);
    for (std::size_t i = 0; i < done.size(); ++i) {
        const Int& piv = done[i].front().second;
        SparseMatrix::Row row;
        row.reserve(done[i].size());
        for (const auto& [c, v] : done[i])
            row.emplace_back(c, FieldElement::from_rational(Rational(v, piv), spec));
        out.set_row(static_cast<int>(i), std::move(row));
    }
    int rank = static_cast<int>(pivots.size());
    return RrefResult{Basis(std::move(out), pivots), std::move(pivots), rank};
}

// --- prime-field engine: int64 residues, pivot normalized to 1 ---

using ModRow = std::vector<std::pair<int, std::int64_t>>;

inline ModRow mod_row_axpy(const ModRow& target, const ModRow& pivot, std::int64_t b,
                           std::int64_t p) {
    // target - b*pivot mod p
    ModRow out;
    out.reserve(target.size() + pivot.size());
    std::size_t i = 0, j = 0;
    while (i < target.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < target.size() && target[i].first < pivot[j].first)) {
            out.push_back(target[i]);
            ++i;
        } else if (i == target.size() || pivot[j].first < target[i].first) {
            out.emplace_back(pivot[j].first, (p - b * pivot[j].second % p) % p);
            ++j;
        } else {
            std::int64_t v = ((target[i].second - b * pivot[j].second % p) % p + p) % p;
            if (v != 0) out.emplace_back(target[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

inline void mod_row_scale(ModRow& row, std::int64_t s, std::int64_t p) {
    for (auto& [c, v] : row) v = v * s % p;
}

inline RrefResult rref_mod(const SparseMatrix& m) {
    const FieldSpec spec = m.spec();
    const std::int64_t p = spec.modulus();
    const int cols = m.cols();

    std::vector<std::vector<ModRow>> buckets(cols);
    for (int r = 0; r < m.rows(); ++r) {
        const auto& row = m.row(r);
        if (row.empty()) continue;
        ModRow mrow;
        mrow.reserve(row.size());
        for (const auto& [c, v] : row) mrow.emplace_back(c, v.residue());
        buckets[mrow.front().first].push_back(std::move(mrow));
    }

    std::vector<ModRow> done;
    std::vector<int> pivots;
    for (int c = 0; c < cols; ++c) {
        auto rows = std::move(buckets[c]);
        if (rows.empty()) continue;
        ModRow pivot = std::move(rows.front());
        mod_row_scale(pivot, mod_inverse(pivot.front().second, p), p);
        for (std::size_t k = 1; k < rows.size(); ++k) {
            ModRow reduced = mod_row_axpy(rows[k], pivot, rows[k].front().second, p);
            if (!reduced.empty()) buckets[reduced.front().first].push_back(std::move(reduced));
        }
        done.push_back(std::move(pivot));
        pivots.push_back(c);
    }

    for (int i = static_cast<int>(done.size()) - 1; i >= 0; --i) {
        const int pc = pivots[i];
        for (int j = 0; j < i; ++j) {
            auto it = std::lower_bound(done[j].begin(), done[j].end(), pc,
                                       [](const auto& e, int col) { return e.first < col; });
            if (it == done[j].end() || it->first != pc) continue;
            done[j] = mod_row_axpy(done[j], done[i], it->second, p);
        }
    }

    SparseMatrix out(static_cast<int>(done.size()), cols, spec);
    for (std::size_t i = 0; i < done.size(); ++i) {
        SparseMatrix::Row row;
        row.reserve(done[i].size());
        for (const auto& [c, v] : done[i])
            row.emplace_back(c, FieldElement::from_integer(static_cast<long long>(v), spec));
        out.set_row(static_cast<int>(i), std::move(row));
    }
    int rank = static_cast<int>(pivots.size());
    return RrefResult{Basis(std::move(out), pivots), std::move(pivots), rank};
}

} // namespace detail

/// Canonical reduced row echelon form of the row space. Fraction-free
/// integer elimination over Q, plain Gaussian elimination over F_p.
inline RrefResult rref(const SparseMatrix& m) {
    return m.spec().is_prime_field() ? detail::rref_mod(m) : detail::rref_rational(m);
}

/// Canonical basis of { v : m v = 0 }.
inline Basis kernel_basis(const SparseMatrix& m) {
    RrefResult r = rref(m);
    const int cols = m.cols();
    const FieldSpec& spec = m.spec();

    std::vector<bool> is_pivot(cols, false);
    for (int c : r.pivot_cols) is_pivot[c] = true;

    // entries of kernel vectors at pivot coordinates, grouped by free column
    std::vector<std::vector<std::pair<int, FieldElement>>> at_pivots(cols);
    const SparseMatrix& rr = r.row_space.matrix();
    for (int i = 0; i < rr.rows(); ++i) {
        const int pc = r.pivot_cols[i];
        for (const auto& [c, v] : rr.row(i))
            if (!is_pivot[c]) at_pivots[c].emplace_back(pc, -v);
    }

    int kdim = cols - r.rank;
    SparseMatrix kmat(kdim, cols, spec);
    int out_row = 0;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        SparseMatrix::Row row = std::move(at_pivots[c]);
        row.emplace_back(c, FieldElement::one(spec));
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        kmat.set_row(out_row++, std::move(row));
    }
    return rref(kmat).row_space;
}

/// Coefficients expressing v in the basis, or nullopt when v is outside.
inline std::optional<std::vector<FieldElement>> in_span(std::vector<FieldElement> v,
                                                        const Basis& b) {
    if (static_cast<int>(v.size()) != b.ambient_dim())
        throw error(errc::ambient_mismatch, "vector length differs from ambient dimension");
    std::vector<FieldElement> coeffs;
    coeffs.reserve(b.dim());
    const SparseMatrix& rows = b.matrix();
    for (int i = 0; i < rows.rows(); ++i) {
        FieldElement c = v[b.pivot_cols()[i]];
        coeffs.push_back(c);
        if (c.is_zero()) continue;
        for (const auto& [col, val] : rows.row(i)) v[col] -= c * val;
    }
    for (const auto& x : v)
        if (!x.is_zero()) return std::nullopt;
    return coeffs;
}

namespace detail {

inline SparseMatrix stack(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.cols())
        throw error(errc::ambient_mismatch, "cannot stack matrices of different widths");
    SparseMatrix s(a.rows() + b.rows(), a.cols(), a.spec());
    for (int r = 0; r < a.rows(); ++r) s.set_row(r, a.row(r));
    for (int r = 0; r < b.rows(); ++r) s.set_row(a.rows() + r, b.row(r));
    return s;
}

} // namespace detail

inline void require_same_ambient(const Basis& a, const Basis& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw error(errc::ambient_mismatch, "subspaces live in different ambient spaces");
}

inline Basis subspace_sum(const Basis& a, const Basis& b) {
    require_same_ambient(a, b);
    return rref(detail::stack(a.matrix(), b.matrix())).row_space;
}

/// Intersection through duality: a subspace is the null space of its
/// annihilator, and annihilators add.
inline Basis subspace_intersection(const Basis& a, const Basis& b) {
    require_same_ambient(a, b);
    Basis na = kernel_basis(a.matrix());
    Basis nb = kernel_basis(b.matrix());
    return kernel_basis(detail::stack(na.matrix(), nb.matrix()));
}

/// a as a subspace of b
inline bool is_contained(const Basis& a, const Basis& b) {
    require_same_ambient(a, b);
    if (a.dim() > b.dim()) return false;
    for (int r = 0; r < a.matrix().rows(); ++r)
        if (!in_span(a.matrix().row_dense(r), b)) return false;
    return true;
}

/// Incremental echelon accumulator for membership tests while extending a
/// spanning set. Forward reduction only; rows are not kept canonical.
class EchelonAccumulator {
public:
    EchelonAccumulator(int ambient, const FieldSpec& spec) : ambient_(ambient), spec_(spec) {}

    explicit EchelonAccumulator(const Basis& start)
        : EchelonAccumulator(start.ambient_dim(), start.spec()) {
        for (int i = 0; i < start.dim(); ++i) insert(start.matrix().row_dense(i));
    }

    int dim() const { return static_cast<int>(rows_.size()); }

    /// reduces v against the accumulated rows; keeps the residue and returns
    /// true when it was nonzero (v enlarged the span)
    bool insert(std::vector<FieldElement> v) {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            FieldElement c = v[leads_[i]];
            if (c.is_zero()) continue;
            for (int j = leads_[i]; j < ambient_; ++j)
                if (!rows_[i][j].is_zero()) v[j] -= c * rows_[i][j];
        }
        int lead = -1;
        for (int j = 0; j < ambient_; ++j)
            if (!v[j].is_zero()) {
                lead = j;
                break;
            }
        if (lead < 0) return false;
        FieldElement inv = v[lead].inverse();
        for (int j = lead; j < ambient_; ++j)
            if (!v[j].is_zero()) v[j] = v[j] * inv;
        rows_.push_back(std::move(v));
        leads_.push_back(lead);
        return true;
    }

private:
    int ambient_;
    FieldSpec spec_;
    std::vector<std::vector<FieldElement>> rows_;
    std::vector<int> leads_;
};

/// Indices of the canonical rows of `piece` that are new modulo `inside`:
/// a complement basis selection by pivoting against `inside`.
inline std::vector<int> complement_row_indices(const Basis& piece, const Basis& inside) {
    require_same_ambient(piece, inside);
    EchelonAccumulator acc(inside);
    std::vector<int> fresh;
    for (int i = 0; i < piece.dim(); ++i)
        if (acc.insert(piece.matrix().row_dense(i))) fresh.push_back(i);
    return fresh;
}

inline Basis zero_subspace(int ambient, const FieldSpec& spec) {
    return Basis(ambient, spec);
}

inline Basis full_space(int ambient, const FieldSpec& spec) {
    SparseMatrix eye(ambient, ambient, spec);
    std::vector<int> pivots(ambient);
    for (int i = 0; i < ambient; ++i) {
        eye.set(i, i, FieldElement::one(spec));
        pivots[i] = i;
    }
    return Basis(std::move(eye), std::move(pivots));
}

} // namespace apolar
