#include <apolar/linalg.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace apolar;

namespace {

const FieldSpec Q = FieldSpec::rationals();

SparseMatrix from_ints(const std::vector<std::vector<long long>>& rows, const FieldSpec& spec) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    SparseMatrix m(r, c, spec);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.set(i, j, integer_embed(rows[i][j], spec));
    return m;
}

FieldElement fe(long long n, const FieldSpec& spec) { return integer_embed(n, spec); }

} // namespace

TEST_CASE("rref basics") {
    auto res = rref(from_ints({{1, 2}, {2, 4}}, Q));
    CHECK(res.rank == 1);
    CHECK(res.row_space.dim() == 1);
    CHECK(res.row_space.matrix().at(0, 0) == fe(1, Q));
    CHECK(res.row_space.matrix().at(0, 1) == fe(2, Q));

    auto eye = rref(from_ints({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, Q));
    CHECK(eye.rank == 3);
    CHECK(eye.row_space == full_space(3, Q));

    FieldSpec f2 = FieldSpec::prime_field(2);
    auto mod2 = rref(from_ints({{1, 1}, {1, -1}}, f2));
    CHECK(mod2.rank == 1); // rows coincide mod 2
}

TEST_CASE("rref is idempotent") {
    auto r1 = rref(from_ints({{2, 4, 6}, {1, 5, 9}, {3, 9, 15}}, Q));
    auto r2 = rref(r1.row_space.matrix());
    CHECK(r1.row_space == r2.row_space);
}

TEST_CASE("rref normalizes to canonical fractions") {
    // rows (2,3) and (0,5): canonical form (1,0),(0,1)
    auto r = rref(from_ints({{2, 3}, {0, 5}}, Q));
    CHECK(r.row_space == full_space(2, Q));
    // single row (4,6) -> (1, 3/2)
    auto s = rref(from_ints({{4, 6}}, Q));
    CHECK(s.row_space.matrix().at(0, 1) == FieldElement::from_rational(Rational(3, 2), Q));
}

TEST_CASE("kernel basics") {
    Basis k = kernel_basis(from_ints({{1, 1, 0}}, Q));
    CHECK(k.dim() == 2);
    // (1,-1,0) and (0,0,1) lie in the kernel
    CHECK(in_span({fe(1, Q), fe(-1, Q), fe(0, Q)}, k).has_value());
    CHECK(in_span({fe(0, Q), fe(0, Q), fe(1, Q)}, k).has_value());
    CHECK_FALSE(in_span({fe(1, Q), fe(1, Q), fe(0, Q)}, k).has_value());

    CHECK(kernel_basis(from_ints({{1, 0}, {0, 1}}, Q)).dim() == 0);

    Basis k2 = kernel_basis(from_ints({{1, 2}, {2, 4}}, Q));
    REQUIRE(k2.dim() == 1);
    CHECK(in_span({fe(-2, Q), fe(1, Q)}, k2).has_value());
    // canonical representative has pivot 1
    CHECK(k2.matrix().at(0, 0) == fe(1, Q));
}

TEST_CASE("in_span returns reconstruction coefficients") {
    auto res = rref(from_ints({{1, 0, 1}, {0, 1, 2}}, Q));
    const Basis& b = res.row_space;
    auto c = in_span({fe(1, Q), fe(1, Q), fe(3, Q)}, b);
    REQUIRE(c.has_value());
    CHECK((*c)[0] == fe(1, Q));
    CHECK((*c)[1] == fe(1, Q));
    auto z = in_span({fe(0, Q), fe(0, Q), fe(0, Q)}, b);
    REQUIRE(z.has_value());
    CHECK((*z)[0].is_zero());
    CHECK((*z)[1].is_zero());
}

TEST_CASE("subspace operations") {
    Basis e1 = rref(from_ints({{1, 0, 0}}, Q)).row_space;
    Basis e2 = rref(from_ints({{0, 1, 0}}, Q)).row_space;
    CHECK(subspace_sum(e1, e2).dim() == 2);
    CHECK(subspace_intersection(e1, e2).dim() == 0);
    CHECK(is_contained(e1, e1));
    CHECK(is_contained(e1, subspace_sum(e1, e2)));
    CHECK_FALSE(is_contained(e1, e2));

    Basis plane = rref(from_ints({{1, 0, 1}, {0, 1, 1}}, Q)).row_space;
    Basis line = rref(from_ints({{1, 1, 2}}, Q)).row_space;
    CHECK(subspace_intersection(plane, line) == line);

    CHECK_THROWS_AS(subspace_sum(e1, rref(from_ints({{1, 0}}, Q)).row_space), error);
}

namespace {

SparseMatrix random_sparse(std::mt19937_64& rng, int rows, int cols, const FieldSpec& spec) {
    SparseMatrix m(rows, cols, spec);
    std::uniform_int_distribution<int> fill(0, 2);
    std::uniform_int_distribution<long long> val(-9, 9);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (fill(rng) == 0) m.set(r, c, integer_embed(val(rng), spec));
    return m;
}

} // namespace

TEST_CASE("fraction-heavy elimination stays exact") {
    // 8x8 Hilbert matrix: notoriously ill-conditioned numerically, plainly
    // invertible exactly
    SparseMatrix h(8, 8, Q);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            h.set(i, j, FieldElement::from_rational(Rational(1, i + j + 1), Q));
    auto r = rref(h);
    CHECK(r.rank == 8);
    CHECK(r.row_space == full_space(8, Q));
    CHECK(kernel_basis(h).dim() == 0);
}

TEST_CASE("rank-nullity on random sparse matrices") {
    std::mt19937_64 rng(42);
    for (const FieldSpec& spec :
         {FieldSpec::rationals(), FieldSpec::prime_field(2), FieldSpec::prime_field(5),
          FieldSpec::prime_field(101)}) {
        for (int trial = 0; trial < 25; ++trial) {
            std::uniform_int_distribution<int> dims(1, 12);
            int rows = dims(rng), cols = dims(rng);
            SparseMatrix m = random_sparse(rng, rows, cols, spec);
            auto r = rref(m);
            Basis k = kernel_basis(m);
            REQUIRE(r.rank + k.dim() == cols);
            // every kernel vector annihilates m exactly
            for (int i = 0; i < k.dim(); ++i) {
                auto y = m.apply(k.matrix().row_dense(i));
                for (const auto& v : y) REQUIRE(v.is_zero());
            }
            // rref preserves the row space
            for (int i = 0; i < rows; ++i)
                REQUIRE(in_span(m.row_dense(i), r.row_space).has_value());
        }
    }
}

TEST_CASE("random span membership reconstructs exactly") {
    std::mt19937_64 rng(43);
    FieldSpec f101 = FieldSpec::prime_field(101);
    for (const FieldSpec& spec : {FieldSpec::rationals(), f101}) {
        for (int trial = 0; trial < 30; ++trial) {
            SparseMatrix m = random_sparse(rng, 4, 9, spec);
            Basis b = rref(m).row_space;
            // random combination of basis rows
            std::uniform_int_distribution<long long> val(-5, 5);
            std::vector<FieldElement> v(9, FieldElement::zero(spec));
            std::vector<FieldElement> want;
            for (int i = 0; i < b.dim(); ++i) {
                FieldElement ci = integer_embed(val(rng), spec);
                want.push_back(ci);
                auto row = b.matrix().row_dense(i);
                for (int j = 0; j < 9; ++j) v[j] += ci * row[j];
            }
            auto got = in_span(v, b);
            REQUIRE(got.has_value());
            REQUIRE(*got == want);
        }
    }
}

TEST_CASE("dimension formula for sum and intersection") {
    std::mt19937_64 rng(44);
    for (const FieldSpec& spec : {FieldSpec::rationals(), FieldSpec::prime_field(7)}) {
        for (int trial = 0; trial < 20; ++trial) {
            Basis a = rref(random_sparse(rng, 3, 8, spec)).row_space;
            Basis b = rref(random_sparse(rng, 3, 8, spec)).row_space;
            Basis s = subspace_sum(a, b);
            Basis i = subspace_intersection(a, b);
            REQUIRE(s.dim() + i.dim() == a.dim() + b.dim());
            REQUIRE(is_contained(i, a));
            REQUIRE(is_contained(i, b));
            REQUIRE(is_contained(a, s));
        }
    }
}
