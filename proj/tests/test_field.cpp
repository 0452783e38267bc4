#include <apolar/field.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace apolar;

TEST_CASE("rational arithmetic is exact") {
    FieldSpec q = FieldSpec::rationals();
    FieldElement half = FieldElement::from_rational(Rational(1, 2), q);
    FieldElement third = FieldElement::from_rational(Rational(1, 3), q);
    CHECK((half + third).rational() == Rational(5, 6));
    CHECK((half * third).rational() == Rational(1, 6));
    CHECK((half - half).is_zero());
    CHECK(half.inverse().rational() == 2);
}

TEST_CASE("prime field arithmetic") {
    FieldSpec f5 = FieldSpec::prime_field(5);
    CHECK(FieldElement::from_integer(2, f5).inverse().residue() == 3);
    FieldSpec f7 = FieldSpec::prime_field(7);
    CHECK((FieldElement::from_integer(3, f7) * FieldElement::from_integer(5, f7)).residue() == 1);
    CHECK(FieldElement::from_integer(-1, f5).residue() == 4);
}

TEST_CASE("integer embedding") {
    CHECK(integer_embed(6, FieldSpec::rationals()).rational() == 6);
    CHECK(integer_embed(6, FieldSpec::prime_field(3)).is_zero());
    CHECK(integer_embed(-1, FieldSpec::prime_field(5)).residue() == 4);
}

TEST_CASE("error conditions") {
    FieldSpec q = FieldSpec::rationals();
    FieldSpec f5 = FieldSpec::prime_field(5);
    CHECK_THROWS_AS(FieldElement::zero(q).inverse(), error);
    CHECK_THROWS_AS(FieldElement::one(q) + FieldElement::one(f5), error);
    CHECK_THROWS_AS(FieldSpec::prime_field(6), error);
    CHECK_THROWS_AS(FieldSpec::prime_field(1), error);
    CHECK_NOTHROW(FieldSpec::prime_field(2147483647)); // largest allowed prime
    CHECK_THROWS_AS(FieldSpec::prime_field(2147483648u), error);
}

namespace {

FieldElement random_element(std::mt19937_64& rng, const FieldSpec& spec) {
    if (spec.is_prime_field()) {
        std::uniform_int_distribution<long long> d(0, spec.modulus() - 1);
        return FieldElement::from_integer(d(rng), spec);
    }
    std::uniform_int_distribution<long long> num(-50, 50);
    std::uniform_int_distribution<long long> den(1, 30);
    return FieldElement::from_rational(Rational(num(rng), den(rng)), spec);
}

} // namespace

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(20260809);
    for (const FieldSpec& spec :
         {FieldSpec::rationals(), FieldSpec::prime_field(2), FieldSpec::prime_field(101)}) {
        for (int i = 0; i < 1000; ++i) {
            FieldElement a = random_element(rng, spec);
            FieldElement b = random_element(rng, spec);
            FieldElement c = random_element(rng, spec);
            REQUIRE((a + b) + c == a + (b + c));
            REQUIRE((a * b) * c == a * (b * c));
            REQUIRE(a * (b + c) == a * b + a * c);
            REQUIRE(a + (-a) == FieldElement::zero(spec));
            if (!a.is_zero()) REQUIRE(a * a.inverse() == FieldElement::one(spec));
        }
    }
}

TEST_CASE("integer embedding is a ring homomorphism") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> d(-1000, 1000);
    for (const FieldSpec& spec :
         {FieldSpec::rationals(), FieldSpec::prime_field(3), FieldSpec::prime_field(101)}) {
        for (int i = 0; i < 200; ++i) {
            long long a = d(rng), b = d(rng);
            REQUIRE(integer_embed(a * b, spec) == integer_embed(a, spec) * integer_embed(b, spec));
            REQUIRE(integer_embed(a + b, spec) == integer_embed(a, spec) + integer_embed(b, spec));
        }
    }
}
