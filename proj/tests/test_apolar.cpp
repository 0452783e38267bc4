#include <apolar/apolar_ideal.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <thread>

using namespace apolar;

namespace {

const FieldSpec Q = FieldSpec::rationals();

DividedForm dm(int vars, std::initializer_list<int> exps, long long c, const FieldSpec& spec) {
    DividedForm f(vars, MultiIndex(exps).degree(), spec);
    f.add_term(MultiIndex(exps), integer_embed(c, spec));
    return f;
}

Form pm(int vars, std::initializer_list<int> exps, long long c, const FieldSpec& spec) {
    Form f(vars, MultiIndex(exps).degree(), spec);
    f.add_term(MultiIndex(exps), integer_embed(c, spec));
    return f;
}

DividedForm fermat_cubic(int vars, const FieldSpec& spec) {
    DividedForm f(vars, 3, spec);
    for (int i = 0; i < vars; ++i) f.add_term(MultiIndex::unit(vars, i, 3), FieldElement::one(spec));
    return f;
}

std::mt19937_64 rng(987654321);

DividedForm random_cubic(int vars, const FieldSpec& spec) {
    const MonomialBasis& basis = monomial_basis(vars, 3);
    std::uniform_int_distribution<long long> val(-6, 6);
    DividedForm f(vars, 3, spec);
    for (const MultiIndex& m : basis.list()) f.add_term(m, integer_embed(val(rng), spec));
    return f;
}

} // namespace

TEST_CASE("catalecticant matrices") {
    // f = y0^[3] + y1^[3], e = 1: x0 -> y0^[2], x1 -> y1^[2]
    SparseMatrix m = catalecticant(fermat_cubic(2, Q), 1);
    CHECK(m.rows() == 3);
    CHECK(m.cols() == 2);
    const MonomialBasis& r2 = monomial_basis(2, 2);
    CHECK(m.at(r2.index_of(MultiIndex({2, 0})), 0).is_one());
    CHECK(m.at(r2.index_of(MultiIndex({0, 2})), 1).is_one());
    CHECK(rref(m).rank == 2);

    // zero form: zero matrix
    SparseMatrix z = catalecticant(DividedForm(3, 3, Q), 2);
    CHECK(rref(z).rank == 0);

    // a cube of a linear form has rank-one catalecticants
    LinearForm ell({integer_embed(1, Q), integer_embed(1, Q)}, Q);
    CHECK(rref(catalecticant(divided_power(ell, 3), 2)).rank == 1);
}

TEST_CASE("graded pieces of the annihilator") {
    DividedForm f = fermat_cubic(3, Q);
    GradedPiece p2 = perp_piece(f, 2);
    // kernel oracle: the mixed monomials annihilate, squares pair with y_i
    GradedPiece expect = span_of_forms(
        {pm(3, {1, 1, 0}, 1, Q), pm(3, {1, 0, 1}, 1, Q), pm(3, {0, 1, 1}, 1, Q)}, 3, 2, Q);
    CHECK(p2 == expect);
    Form sq_diff = pm(3, {2, 0, 0}, 1, Q) - pm(3, {0, 0, 2}, 1, Q);
    CHECK_FALSE(p2.contains(sq_diff));

    CHECK(perp_piece(f, 0).dim() == 0);
    CHECK(perp_piece(dm(1, {3}, 1, Q), 3).dim() == 0); // codim 1 in a 1-dim space
    CHECK(perp_piece(f, 4) == full_piece(3, 4, Q));
}

TEST_CASE("Hilbert functions") {
    CHECK(hilbert_function(dm(4, {3, 0, 0, 0}, 1, Q)).values == std::vector<int>{1, 1, 1, 1});
    CHECK(hilbert_function(fermat_cubic(3, Q)).values == std::vector<int>{1, 3, 3, 1});
    DividedForm f(2, 3, Q);
    f.add_term(MultiIndex({2, 1}), integer_embed(1, Q));
    CHECK(hilbert_function(f).values == std::vector<int>{1, 2, 2, 1});
    CHECK_THROWS_AS(hilbert_function(DividedForm(2, 3, Q)), error);
}

TEST_CASE("minimal generator counts for the Fermat cubic") {
    for (int vars : {2, 3, 4, 5}) {
        DividedForm f = fermat_cubic(vars, Q);
        auto blocks = minimal_generators(f, 4);
        REQUIRE(blocks.size() == 4);
        CHECK(blocks[0].generators.dim() == 0);
        CHECK(blocks[1].generators.dim() == vars * (vars - 1) / 2);
        CHECK(blocks[2].generators.dim() == vars - 1);
        CHECK(blocks[3].generators.dim() == 0);
        // returned pieces really are new generators: inside the ideal,
        // independent from the grown part
        GradedPiece grown = times_linear(perp_piece(f, 2));
        for (const Form& g : blocks[2].generators.forms()) {
            CHECK(is_apolar(g, f));
            CHECK_FALSE(grown.contains(g));
        }
    }
}

TEST_CASE("dropped-variable cubics acquire a non-quadratic generator") {
    for (int vars : {3, 4, 5}) {
        DividedForm f0 = random_cubic(vars - 1, Q);
        DividedForm f(vars, 3, Q);
        for (const auto& [m, c] : f0.coeffs()) {
            std::vector<int> e = m.exponents();
            e.push_back(0);
            f.add_term(MultiIndex(e), c);
        }
        f.add_term(MultiIndex::unit(vars, vars - 1, 3), integer_embed(2, Q));

        // every annihilating quadric vanishes at the last coordinate point
        GradedPiece p2 = perp_piece(f, 2);
        std::vector<FieldElement> last(vars, FieldElement::zero(Q));
        last[vars - 1] = FieldElement::one(Q);
        for (const Form& q : p2.forms()) REQUIRE(evaluate(q, last).is_zero());

        auto blocks = minimal_generators(f, 4);
        int beta13 = blocks[2].generators.dim();
        int beta14 = blocks[3].generators.dim();
        REQUIRE(beta13 + beta14 >= 1);
    }
}

TEST_CASE("socle generator recovery") {
    // Fermat round trip: pieces of the annihilator pin f back down
    DividedForm f = fermat_cubic(4, Q);
    std::map<int, GradedPiece> pieces;
    for (int e = 1; e <= 3; ++e) pieces.emplace(e, perp_piece(f, e));
    CHECK(dual_socle_generator(pieces, 4, 3, Q) == f);

    // full ideal in every degree: nothing survives
    std::map<int, GradedPiece> full;
    for (int e = 1; e <= 3; ++e) full.emplace(e, full_piece(3, e, Q));
    CHECK_THROWS_AS(dual_socle_generator(full, 3, 3, Q), error);

    // only a codim-1 condition in top degree: recovers the annihilated direction
    DividedForm g = random_cubic(3, Q);
    if (g.is_zero()) g = fermat_cubic(3, Q);
    std::map<int, GradedPiece> top;
    top.emplace(1, zero_piece(3, 1, Q));
    top.emplace(2, zero_piece(3, 2, Q));
    top.emplace(3, perp_piece(g, 3));
    DividedForm rec = dual_socle_generator(top, 3, 3, Q);
    // proportional to g: compare after normalizing g by its leading coefficient
    FieldElement lead = g.coeffs().begin()->second;
    CHECK(rec == g.scaled(lead.inverse()));
}

TEST_CASE("apolarity flags") {
    CHECK(is_apolar(pm(2, {1, 1}, 1, Q), dm(2, {3, 0}, 1, Q)));
    CHECK_FALSE(is_apolar(pm(2, {1, 0}, 1, Q), dm(2, {3, 0}, 1, Q)));
}

TEST_CASE("Macaulay round trip on random cubics") {
    for (const FieldSpec& spec :
         {FieldSpec::rationals(), FieldSpec::prime_field(2), FieldSpec::prime_field(3),
          FieldSpec::prime_field(5), FieldSpec::prime_field(101)}) {
        for (int trial = 0; trial < 10; ++trial) {
            int vars = 2 + static_cast<int>(trial % 4);
            DividedForm f = random_cubic(vars, spec);
            if (f.is_zero()) continue;
            std::map<int, GradedPiece> pieces;
            for (int e = 1; e <= 3; ++e) pieces.emplace(e, perp_piece(f, e));
            DividedForm rec = dual_socle_generator(pieces, vars, 3, spec);
            FieldElement lead = f.coeffs().begin()->second;
            REQUIRE(rec == f.scaled(lead.inverse()));
        }
    }
}

TEST_CASE("annihilators are ideals and Hilbert functions symmetric") {
    for (const FieldSpec& spec : {FieldSpec::rationals(), FieldSpec::prime_field(5)}) {
        for (int trial = 0; trial < 6; ++trial) {
            DividedForm f = random_cubic(3, spec);
            if (f.is_zero()) continue;
            ApolarIdeal ideal(f);
            for (int e = 0; e <= 3; ++e) REQUIRE(ideal.ideal_property_holds(e));
            HilbertFunction h = hilbert_function(f);
            for (int e = 0; e <= 3; ++e) REQUIRE(h.at(e) == h.at(3 - e));
        }
    }
}

TEST_CASE("lazy pieces are safe under concurrent readers") {
    ApolarIdeal ideal(fermat_cubic(6, Q));
    std::vector<GradedPiece> seen(8, zero_piece(4, 0, Q));
    {
        std::vector<std::thread> workers;
        for (int t = 0; t < 8; ++t)
            workers.emplace_back([&, t] { seen[t] = ideal.piece(2 + t % 3); });
        for (auto& w : workers) w.join();
    }
    for (int t = 0; t < 8; ++t) REQUIRE(seen[t] == perp_piece(fermat_cubic(6, Q), 2 + t % 3));
}

TEST_CASE("contraction is bilinear in the form") {
    for (int trial = 0; trial < 10; ++trial) {
        DividedForm f1 = random_cubic(3, Q);
        DividedForm f2 = random_cubic(3, Q);
        Form q = pm(3, {1, 1, 0}, 1, Q) - pm(3, {0, 0, 2}, 3, Q);
        CHECK(contract(q, f1 + f2) == contract(q, f1) + contract(q, f2));
    }
}
