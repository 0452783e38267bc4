#pragma once

#include <apolar/graded.hpp>

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace apolar {

/// Graded Betti numbers within a computed window. Missing entries are zero.
struct BettiTable {
    std::map<std::pair<int, int>, long long> beta;
    int p_max = 0;
    int q_max = 0;
    std::string source;

    long long at(int p, int q) const {
        auto it = beta.find({p, q});
        return it == beta.end() ? 0 : it->second;
    }

    void set(int p, int q, long long v) {
        if (v != 0) beta[{p, q}] = v;
    }

    /// Macaulay-style triangular display: row r lists beta_{p, p+r}.
    std::string display() const {
        int max_slope = 0;
        for (const auto& [pq, v] : beta) max_slope = std::max(max_slope, pq.second - pq.first);
        std::ostringstream out;
        out << "      ";
        for (int p = 0; p <= p_max; ++p) out << "\t" << p;
        out << "\n";
        for (int r = 0; r <= max_slope; ++r) {
            out << r << ":";
            for (int p = 0; p <= p_max; ++p) {
                long long v = at(p, p + r);
                out << "\t";
                if (v == 0)
                    out << ".";
                else
                    out << v;
            }
            out << "\n";
        }
        return out.str();
    }
};

/// Element of a free graded module with one form component per generator.
struct ModuleElement {
    std::vector<Form> comp;
    int degree = 0; // internal degree: comp[j].degree() + generator degree j
};

namespace detail {

struct SliceLayout {
    std::vector<int> offsets; // per generator block
    int total = 0;
};

inline SliceLayout slice_layout(const std::vector<int>& gen_degrees, int var_count, int q) {
    SliceLayout l;
    l.offsets.reserve(gen_degrees.size());
    for (int d : gen_degrees) {
        l.offsets.push_back(l.total);
        l.total += graded_dim(var_count, q - d);
    }
    return l;
}

} // namespace detail

/// One step of a graded presentation: source generators expressed inside the
/// free module on `target_degrees`. Supplies per-degree syzygy kernels.
class PresentationStep {
public:
    PresentationStep(std::vector<int> target_degrees, std::vector<ModuleElement> gens,
                     int var_count, const FieldSpec& spec)
        : target_degrees_(std::move(target_degrees)), gens_(std::move(gens)),
          var_count_(var_count), spec_(spec) {
        for (const ModuleElement& g : gens_) {
            if (g.comp.size() != target_degrees_.size())
                throw error(errc::invalid_input, "generator has wrong component count");
            source_degrees_.push_back(g.degree);
        }
    }

    const std::vector<int>& source_degrees() const { return source_degrees_; }

    /// kernel of (+) T(-e_j) -> (+) T(-d_i) in internal degree q,
    /// in the coordinates of the source slice
    Basis kernel_at(int q) const {
        detail::SliceLayout target = detail::slice_layout(target_degrees_, var_count_, q);
        detail::SliceLayout source = detail::slice_layout(source_degrees_, var_count_, q);
        SparseMatrix m(target.total, source.total, spec_);
        for (std::size_t j = 0; j < gens_.size(); ++j) {
            int mdeg = q - source_degrees_[j];
            if (mdeg < 0) continue;
            const MonomialBasis& mons = monomial_basis(var_count_, mdeg);
            for (int mi = 0; mi < mons.dim(); ++mi) {
                int col = source.offsets[j] + mi;
                for (std::size_t i = 0; i < target_degrees_.size(); ++i) {
                    const Form& gi = gens_[j].comp[i];
                    if (gi.is_zero()) continue;
                    const MonomialBasis& rows =
                        monomial_basis(var_count_, q - target_degrees_[i]);
                    for (const auto& [mono, c] : gi.coeffs())
                        m.set(target.offsets[i] + rows.index_of(mons.at(mi) + mono), col, c);
                }
            }
        }
        return kernel_basis(m);
    }

    /// rows of a slice basis as module elements of the source
    std::vector<ModuleElement> to_elements(const Basis& basis, int q) const {
        detail::SliceLayout source = detail::slice_layout(source_degrees_, var_count_, q);
        std::vector<ModuleElement> out;
        for (int r = 0; r < basis.dim(); ++r) {
            ModuleElement el;
            el.degree = q;
            for (std::size_t j = 0; j < source_degrees_.size(); ++j) {
                int d = q - source_degrees_[j];
                Form fj(var_count_, std::max(d, 0), spec_);
                if (d >= 0) {
                    const MonomialBasis& mons = monomial_basis(var_count_, d);
                    for (const auto& [c, v] : basis.matrix().row(r)) {
                        if (c < source.offsets[j] || c >= source.offsets[j] + mons.dim()) continue;
                        fj.add_term(mons.at(c - source.offsets[j]), v);
                    }
                }
                el.comp.push_back(std::move(fj));
            }
            out.push_back(std::move(el));
        }
        return out;
    }

    /// span of T_1 * (elements of degree q-1) inside the degree-q source slice
    Basis variable_multiples(const std::vector<ModuleElement>& elems, int q) const {
        detail::SliceLayout source = detail::slice_layout(source_degrees_, var_count_, q);
        SparseMatrix m(static_cast<int>(elems.size()) * var_count_, source.total, spec_);
        int row = 0;
        for (const ModuleElement& el : elems) {
            for (int v = 0; v < var_count_; ++v) {
                SparseMatrix::Row entries;
                for (std::size_t j = 0; j < source_degrees_.size(); ++j) {
                    if (el.comp[j].is_zero()) continue;
                    const MonomialBasis& mons = monomial_basis(var_count_, q - source_degrees_[j]);
                    for (const auto& [mono, c] : el.comp[j].coeffs())
                        entries.emplace_back(
                            source.offsets[j] +
                                mons.index_of(mono + MultiIndex::unit(var_count_, v)),
                            c);
                }
                std::sort(entries.begin(), entries.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                m.set_row(row++, std::move(entries));
            }
        }
        return rref(m).row_space;
    }

    /// image of the element under the presentation map, one form per target
    /// generator; identically zero exactly for syzygies
    std::vector<Form> apply(const ModuleElement& el) const {
        std::vector<Form> out;
        for (std::size_t i = 0; i < target_degrees_.size(); ++i) {
            Form sum(var_count_, el.degree - target_degrees_[i], spec_);
            for (std::size_t j = 0; j < gens_.size(); ++j)
                if (!el.comp[j].is_zero() && !gens_[j].comp[i].is_zero())
                    sum = sum + poly_mul(el.comp[j], gens_[j].comp[i]);
            out.push_back(std::move(sum));
        }
        return out;
    }

private:
    std::vector<int> target_degrees_;
    std::vector<ModuleElement> gens_;
    std::vector<int> source_degrees_;
    int var_count_;
    FieldSpec spec_;
};

/// Per-degree syzygy bases of one homological step, kept around so tests can
/// re-verify that every stored vector annihilates its generators exactly.
struct SyzygyLayer {
    std::vector<int> generator_degrees;
    std::map<int, std::vector<ModuleElement>> kernels;
};

struct BettiComputation {
    BettiTable table;
    std::vector<ModuleElement> layer1_generators; // minimal generators of the ideal
    SyzygyLayer first_syzygies;
    SyzygyLayer second_syzygies;
};

/// Graded Betti numbers of T/(generators) by degree-by-degree syzygy kernels.
/// Minimalization is by dimension counting: new syzygies in a degree are a
/// complement of T_1 times the previous degree's kernel. Supported to
/// homological step 3 and internal degree 8.
inline BettiComputation betti_computation(const std::vector<Form>& generators, int p_max,
                                          int q_max) {
    if (p_max > 3) throw error(errc::truncation_too_deep, "homological steps capped at 3");
    if (q_max > 8) throw error(errc::truncation_too_deep, "internal degrees capped at 8");
    if (generators.empty()) throw error(errc::invalid_input, "need at least one generator");
    const int var_count = generators.front().var_count();
    const FieldSpec spec = generators.front().spec();
    for (const Form& g : generators) {
        if (g.var_count() != var_count || !(g.spec() == spec))
            throw error(errc::variable_mismatch, "generators disagree on ring");
        if (!g.is_zero() && g.degree() < 1)
            throw error(errc::invalid_input, "generators must have positive degree");
    }

    BettiComputation out;
    out.table.p_max = p_max;
    out.table.q_max = q_max;
    out.table.set(0, 0, 1);

    // step 1: minimal generators from the ideal's graded pieces
    std::vector<ModuleElement> min_gens;
    GradedPiece prev = ideal_piece(generators, 0, var_count, spec);
    for (int q = 1; q <= q_max; ++q) {
        GradedPiece cur = ideal_piece(generators, q, var_count, spec);
        GradedPiece grown = times_linear(prev);
        std::vector<Form> fresh = complement_rows(cur, grown);
        out.table.set(1, q, static_cast<long long>(fresh.size()));
        for (Form& f : fresh) {
            ModuleElement el;
            el.degree = q;
            el.comp.push_back(std::move(f));
            min_gens.push_back(std::move(el));
        }
        prev = std::move(cur);
    }
    out.layer1_generators = min_gens;
    if (p_max < 2) return out;

    // step 2: syzygies of the minimal generators
    PresentationStep step1({0}, min_gens, var_count, spec);
    out.first_syzygies.generator_degrees = step1.source_degrees();
    std::vector<ModuleElement> layer2_gens;
    std::vector<ModuleElement> prev_kernel;
    for (int q = 0; q <= q_max; ++q) {
        Basis k = step1.kernel_at(q);
        Basis grown = step1.variable_multiples(prev_kernel, q);
        std::vector<int> fresh = complement_row_indices(k, grown);
        out.table.set(2, q, static_cast<long long>(fresh.size()));
        std::vector<ModuleElement> elems = step1.to_elements(k, q);
        for (int idx : fresh) layer2_gens.push_back(elems[idx]);
        out.first_syzygies.kernels[q] = elems;
        prev_kernel = std::move(elems);
    }
    if (p_max < 3) return out;

    // step 3: syzygies among the first syzygies
    PresentationStep step2(step1.source_degrees(), layer2_gens, var_count, spec);
    out.second_syzygies.generator_degrees = step2.source_degrees();
    prev_kernel.clear();
    for (int q = 0; q <= q_max; ++q) {
        Basis k = step2.kernel_at(q);
        Basis grown = step2.variable_multiples(prev_kernel, q);
        std::vector<int> fresh = complement_row_indices(k, grown);
        out.table.set(3, q, static_cast<long long>(fresh.size()));
        std::vector<ModuleElement> elems = step2.to_elements(k, q);
        out.second_syzygies.kernels[q] = elems;
        prev_kernel = std::move(elems);
    }
    return out;
}

inline BettiTable betti_table(const std::vector<Form>& generators, int p_max, int q_max) {
    return betti_computation(generators, p_max, q_max).table;
}

/// gamma_i = i(g-3-i)/(g-2) * C(g-1, i+1); integral for every admissible (g, i).
inline long long gamma(int g, int i) {
    if (g < 5 || i < 1 || i > g - 4)
        throw error(errc::out_of_range, "gamma needs g >= 5 and 1 <= i <= g-4");
    Int num = Int(i) * Int(g - 3 - i) * binomial(g - 1, i + 1);
    if (num % (g - 2) != 0)
        throw error(errc::invalid_input, "gamma formula produced a non-integer");
    return (num / (g - 2)).convert_to<long long>();
}

struct HilbertWindowEntry {
    int q;
    long long alternating_sum;
    long long quotient_dim;
    bool consistent;
};

/// Alternating sums of the table against the quotient's dimensions,
/// restricted to degrees the truncated window fully covers (steps beyond
/// p_max can only touch internal degrees above p_max + 1 in a minimal
/// resolution of an ideal generated in degrees >= 2).
inline std::vector<HilbertWindowEntry> hilbert_series_consistency(
    const BettiTable& t, const std::vector<int>& quotient_dims, int var_count) {
    std::vector<HilbertWindowEntry> out;
    const int q_hi = std::min(t.q_max, t.p_max + 1);
    for (int q = 0; q <= q_hi; ++q) {
        Int sum = 0;
        for (const auto& [pq, beta] : t.beta) {
            int sign = pq.first % 2 == 0 ? 1 : -1;
            sum += Int(sign) * Int(beta) * Int(graded_dim(var_count, q - pq.second));
        }
        long long lhs = sum.convert_to<long long>();
        long long rhs =
            q < static_cast<int>(quotient_dims.size()) ? quotient_dims[q] : 0;
        out.push_back({q, lhs, rhs, lhs == rhs});
    }
    return out;
}

struct BettiDifferenceEntry {
    int p;
    long long measured;
    long long expected;
    bool pass;
};

/// beta_{p,p+1} - beta_{p-1,p+1} against the closed form
/// p*C(g-2, p+1) - (g-1-p)*C(g-2, g-p), per computable p.
inline std::vector<BettiDifferenceEntry> betti_difference_check(const BettiTable& table, int g) {
    std::vector<BettiDifferenceEntry> out;
    for (int p = 1; p <= std::min(table.p_max, g - 3); ++p) {
        if (p + 1 > table.q_max) break;
        long long measured = table.at(p, p + 1) - table.at(p - 1, p + 1);
        Int expect = Int(p) * binomial(g - 2, p + 1) - Int(g - 1 - p) * binomial(g - 2, g - p);
        long long expected = expect.convert_to<long long>();
        out.push_back({p, measured, expected, measured == expected});
    }
    return out;
}

/// The Koszul syzygies (0,...,0,-q_f,0,...,0,q_i) on the ordered generator
/// tuple (q_1,...,q_s, q_f); each certificate is re-expanded and must
/// annihilate the tuple exactly.
inline std::vector<ModuleElement> koszul_syzygy_certificate(const std::vector<Form>& point_gens,
                                                            const Form& q_f) {
    const int s = static_cast<int>(point_gens.size());
    std::vector<ModuleElement> out;
    if (s == 0) return out;
    const int vars = q_f.var_count();
    const FieldSpec& spec = q_f.spec();
    for (int i = 0; i < s; ++i) {
        ModuleElement el;
        el.degree = point_gens[i].degree() + q_f.degree();
        for (int j = 0; j < s; ++j)
            el.comp.push_back(j == i ? q_f.scaled(-FieldElement::one(spec))
                                     : Form(vars, q_f.degree(), spec));
        el.comp.push_back(point_gens[i]);

        Form expanded = poly_mul(el.comp[i], point_gens[i]) + poly_mul(el.comp[s], q_f);
        if (!expanded.is_zero())
            throw error(errc::not_a_syzygy, "certificate does not annihilate the generators");
        out.push_back(std::move(el));
    }
    return out;
}

} // namespace apolar
