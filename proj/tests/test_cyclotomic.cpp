#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "rtlens/cyclotomic.hpp"

using namespace rtlens;

namespace {

Cyclotomic random_cyc(std::mt19937_64& rng, long order) {
    std::uniform_int_distribution<long> coeff(-9, 9);
    std::uniform_int_distribution<long> den(1, 9);
    Cyclotomic x(order);
    for (long j = 0; j < order; ++j)
        x += Cyclotomic::from_rational(order, Rational(coeff(rng), den(rng))).rotated(j);
    return x;
}

} // namespace

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == std::vector<BigInt>{-1, 1});
    CHECK(cyclotomic_polynomial(5) == std::vector<BigInt>{1, 1, 1, 1, 1});
    CHECK(cyclotomic_polynomial(9) == std::vector<BigInt>{1, 0, 0, 1, 0, 0, 1});
    CHECK(cyclotomic_polynomial(15) == std::vector<BigInt>{1, -1, 0, 1, -1, 1, 0, -1, 1});
    CHECK(cyclotomic_polynomial(31).size() == 31); // degree 30, monic
}

TEST_CASE("root powers and exponent reduction") {
    CHECK(q_power(5, 0) == Cyclotomic::one(5));
    CHECK(q_power(5, 7) == q_power(5, 2));
    CHECK(q_power(5, -1) == q_power(5, 4));
    CHECK(q_power(5, 3) * q_power(5, 4) == q_power(5, 7));
}

TEST_CASE("vanishing sum of nontrivial fifth roots") {
    Cyclotomic s(5);
    for (long j = 1; j < 5; ++j) s += q_power(5, j);
    CHECK(s == Cyclotomic::from_integer(5, -1));
}

TEST_CASE("inverses") {
    CHECK(q_power(7, 3).inverse() == q_power(7, 4));
    Cyclotomic x = Cyclotomic::one(5) + q_power(5, 1);
    CHECK(x * x.inverse() == Cyclotomic::one(5));
    CHECK_THROWS_AS(Cyclotomic::zero(5).inverse(), DivisionByZeroError);

    std::mt19937_64 rng(1234);
    for (int t = 0; t < 10; ++t) {
        Cyclotomic r = random_cyc(rng, 9);
        if (r.is_zero()) continue;
        CHECK(r * r.inverse() == Cyclotomic::one(9));
    }
}

TEST_CASE("galois maps") {
    CHECK(q_power(5, 2).galois(-1) == q_power(5, 3));
    std::mt19937_64 rng(99);
    Cyclotomic x = random_cyc(rng, 7);
    CHECK(x.galois(1) == x);
    CHECK(x.galois(2).galois(3) == x.galois(6));
    CHECK_THROWS_AS(x.galois(7), InvalidAutomorphismError);
    CHECK_THROWS_AS(q_power(9, 1).galois(3), InvalidAutomorphismError);
}

TEST_CASE("field axioms on random values") {
    std::mt19937_64 rng(4321);
    for (int t = 0; t < 8; ++t) {
        Cyclotomic a = random_cyc(rng, 15), b = random_cyc(rng, 15), c = random_cyc(rng, 15);
        CHECK(a + b == b + a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Cyclotomic::zero(15));
    }
}

TEST_CASE("order mismatch is rejected") {
    Cyclotomic a(5), b(7);
    CHECK_THROWS_AS(a + b, OrderMismatchError);
    CHECK_THROWS_AS(a * b, OrderMismatchError);
    CHECK(!(a == b)); // distinct orders compare unequal rather than throwing
}

TEST_CASE("embedding") {
    CHECK(Cyclotomic::one(5).embed() == std::complex<double>(1.0, 0.0));
    auto z = q_power(5, 1).embed(1);
    const double tau = 6.283185307179586476925286766559;
    CHECK(z.real() == doctest::Approx(std::cos(tau / 5)).epsilon(1e-14));
    CHECK(z.imag() == doctest::Approx(std::sin(tau / 5)).epsilon(1e-14));

    // classical quadratic Gauss sum: sum over x mod 5 of q^(x^2) = sqrt(5)
    Cyclotomic g(5);
    for (long x = 0; x < 5; ++x) g += q_power(5, x * x);
    auto ge = g.embed(1);
    CHECK(ge.real() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-13));
    CHECK(ge.imag() == doctest::Approx(0.0).epsilon(1e-13));

    CHECK_THROWS_AS(RootOfUnitySpec(15, 3), InvalidAutomorphismError);
}

TEST_CASE("conjugation matches complex conjugation and detects real values") {
    std::mt19937_64 rng(777);
    for (int t = 0; t < 6; ++t) {
        Cyclotomic x = random_cyc(rng, 9);
        auto lhs = x.conj().embed(1);
        auto rhs = std::conj(x.embed(1));
        CHECK(std::abs(lhs - rhs) < 1e-12);
        Cyclotomic real_part = x + x.conj();
        CHECK(real_part.is_real());
        if (!x.is_zero()) {
            Cyclotomic norm = x * x.conj();
            CHECK(norm.is_real());
        }
    }
    CHECK(q_power(5, 1).is_real() == false);
}

TEST_CASE("embedding index is a Galois twist") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 6; ++t) {
        Cyclotomic x = random_cyc(rng, 7);
        for (long c : {2L, 3L, 6L}) {
            auto twisted = x.embed(c);
            auto mapped = x.galois(c).embed(1);
            CHECK(std::abs(twisted - mapped) < 1e-11);
        }
    }
}

TEST_CASE("canonical coefficients") {
    // q^4 reduces to -(1 + q + q^2 + q^3) in Q(zeta_5)
    auto coeffs = q_power(5, 4).canonical_coeffs();
    for (int j = 0; j < 4; ++j) CHECK(coeffs[j] == Rational(-1));
    CHECK(coeffs[4] == Rational(0));
}
