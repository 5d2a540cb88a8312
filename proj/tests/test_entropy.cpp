#include "doctest.h"

#include <cmath>
#include <random>

#include "core/entropy.hpp"
#include "core/errors.hpp"

using namespace btn1d;

TEST_CASE("phi2 evaluates each variant's formula") {
    CHECK(EntropyModel::constant().phi2(3.7) == 1.0);
    CHECK(EntropyModel::fisher().phi2(0.0) == 1.0);
    CHECK(EntropyModel::sin_rational(2.0).phi2(0.0) == 1.0);
    CHECK(EntropyModel::square().phi2(2.0) == 4.0);
    CHECK(EntropyModel::exp_neg().phi2(0.0) == 1.0);
    CHECK(EntropyModel::exp_neg().phi2(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(EntropyModel::fisher().phi2(1.0) == doctest::Approx(0.5).epsilon(1e-15));
    const double u = 1.3;
    CHECK(EntropyModel::sin_rational(2.0).phi2(u) ==
          doctest::Approx(1.0 / (u * u * (std::sin(u) + 2.0) + 1.0)).epsilon(1e-15));
}

TEST_CASE("fisher domain guard") {
    const EntropyModel fisher = EntropyModel::fisher();
    CHECK(fisher.domain_lower == -1.0);
    CHECK_THROWS_AS(fisher.phi2(-1.0), DomainViolation);
    CHECK_THROWS_AS(fisher.phi2(-2.0), DomainViolation);
    CHECK_NOTHROW(fisher.phi2(-0.999));
    CHECK_THROWS_AS(fisher.phi2(std::nan("")), DomainViolation);
}

TEST_CASE("positivity of phi2 on sampled domains") {
    std::mt19937 rng(42);
    const auto sample_positive = [&](const EntropyModel& m, double lo, double hi) {
        std::uniform_real_distribution<double> dist(lo, hi);
        for (int i = 0; i < 10000; ++i) {
            const double v = m.phi2(dist(rng));
            CAPTURE(m.name());
            REQUIRE(v > 0.0);
            REQUIRE(std::isfinite(v));
        }
    };
    sample_positive(EntropyModel::constant(), -50.0, 50.0);
    sample_positive(EntropyModel::exp_neg(), -50.0, 50.0);
    sample_positive(EntropyModel::fisher(), -0.999999, 50.0);
    sample_positive(EntropyModel::sin_rational(2.0), -50.0, 50.0);
    // Square is nonnegative and vanishes only at the origin
    std::uniform_real_distribution<double> dist(-50.0, 50.0);
    for (int i = 0; i < 10000; ++i) {
        const double u = dist(rng);
        CHECK(EntropyModel::square().phi2(u) >= 0.0);
        if (u != 0.0) CHECK(EntropyModel::square().phi2(u) > 0.0);
    }
}

TEST_CASE("sin-rational sigma=2 stays in (0, 1]") {
    const EntropyModel m = EntropyModel::sin_rational(2.0);
    REQUIRE(m.k_upper.has_value());
    CHECK(*m.k_upper == 1.0);
    CHECK_FALSE(m.k_lower.has_value());
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-200.0, 200.0);
    for (int i = 0; i < 10000; ++i) {
        const double v = m.phi2(dist(rng));
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("declared bounds hold where present") {
    const EntropyModel c = EntropyModel::constant();
    REQUIRE(c.k_lower.has_value());
    REQUIRE(c.k_upper.has_value());
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> dist(-100.0, 100.0);
    for (int i = 0; i < 10000; ++i) {
        const double v = c.phi2(dist(rng));
        CHECK(v >= *c.k_lower);
        CHECK(v <= *c.k_upper);
    }
}

TEST_CASE("declared metadata per variant") {
    CHECK(EntropyModel::constant().phi3_sign == Phi3Sign::NonNegative);
    CHECK(EntropyModel::exp_neg().phi3_sign == Phi3Sign::NonPositive);
    CHECK(EntropyModel::fisher().phi3_sign == Phi3Sign::NonPositive);
    CHECK(EntropyModel::sin_rational(2.0).phi3_sign == Phi3Sign::Indefinite);
    CHECK(EntropyModel::square().phi3_sign == Phi3Sign::Indefinite);

    CHECK(EntropyModel::constant().phi_prime_diverges_pos());
    CHECK(EntropyModel::fisher().phi_prime_diverges_pos());
    CHECK(EntropyModel::square().phi_prime_diverges_pos());
    CHECK_FALSE(EntropyModel::exp_neg().phi_prime_diverges_pos());
    CHECK_FALSE(EntropyModel::sin_rational(2.0).phi_prime_diverges_pos());

    CHECK(EntropyModel::exp_neg().phi_prime_diverges_neg());
    CHECK_FALSE(EntropyModel::fisher().phi_prime_diverges_neg());

    CHECK(EntropyModel::exp_neg().touchdown_integral_diverges_pos());
    CHECK_FALSE(EntropyModel::fisher().touchdown_integral_diverges_pos());

    CHECK(EntropyModel::sin_rational(2.0).strictly_convex());
    CHECK_FALSE(EntropyModel::sin_rational(1.0).strictly_convex());
    CHECK_FALSE(EntropyModel::square().strictly_convex());
}
