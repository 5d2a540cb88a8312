#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "core/errors.hpp"
#include "core/imex.hpp"

using namespace btn1d;

namespace {

const double kLambda = 0.24169426078821;

// 2-stage SDIRK pair whose implicit last row equals the weights; used to
// exercise the final-combination identity, which the built-in pair does not
// satisfy.
ImexTableau stiffly_accurate_pair() {
    const double g = 1.0 - 1.0 / std::sqrt(2.0);
    ImexTableau t;
    t.stages = 2;
    t.a_ex = {{0, 0}, {1, 0}};
    t.a_im = {{g, 0}, {1 - g, g}};
    t.b = {1 - g, g};
    t.c_ex = {0, 1};
    t.c_im = {g, 1};
    t.validate();
    return t;
}

ImexTableau forward_euler_pair() {
    ImexTableau t;
    t.stages = 1;
    t.a_ex = {{0}};
    t.a_im = {{1}};
    t.b = {1};
    t.c_ex = {0};
    t.c_im = {1};
    t.validate();
    return t;
}

double scalar_step(const ImexTableau& t, double state, double m_const, double dt) {
    const MultiplierFn mult = [m_const](const std::vector<double>& s) {
        return std::vector<double>(s.size(), m_const);
    };
    return imex_step({state}, dt, mult, t)[0];
}

} // namespace

TEST_CASE("built-in tableau matches the printed coefficients") {
    const ImexTableau t = ssp_ldirk3_433();
    CHECK(t.stages == 4);
    CHECK(t.a_im[1][0] == -kLambda);
    CHECK(t.a_im[0][0] == kLambda);
    CHECK(t.a_im[2][1] == 1.0 - kLambda);
    CHECK(t.a_ex[2][1] == 1.0);
    CHECK(t.a_ex[3][1] == 0.25);

    double b_sum = 0.0;
    for (double w : t.b) b_sum += w;
    CHECK(std::abs(b_sum - 1.0) < 1e-15);

    double last_row = 0.0;
    for (double a : t.a_im[3]) last_row += a;
    CHECK(std::abs(last_row - 0.5) < 1e-14);
    CHECK(t.c_im[3] == 0.5);

    // the printed pair is *not* stiffly accurate: last implicit row != b
    CHECK_FALSE(t.stiffly_accurate());
}

TEST_CASE("tableau validation catches structural breakage") {
    ImexTableau t = ssp_ldirk3_433();
    t.a_ex[0][1] = 0.5; // upper-triangular entry in the explicit part
    CHECK_THROWS_AS(t.validate(), InvalidArgument);

    ImexTableau t2 = ssp_ldirk3_433();
    t2.a_im[2][2] = 0.0;
    CHECK_THROWS_AS(t2.validate(), InvalidArgument);

    ImexTableau t3 = ssp_ldirk3_433();
    t3.c_ex[3] = 0.7; // row sum no longer matches
    CHECK_THROWS_AS(t3.validate(), InvalidArgument);
}

TEST_CASE("order conditions hold for both parts") {
    const OrderConditionReport rep = check_order3(ssp_ldirk3_433());
    for (int i = 0; i < 4; ++i) {
        CAPTURE(i);
        CHECK(rep.explicit_residuals[i] < 1e-10);
        CHECK(rep.implicit_residuals[i] < 1e-10);
    }
    CHECK(rep.third_order());
}

TEST_CASE("forward Euler fails the second-order condition") {
    const OrderConditionReport rep = check_order3(forward_euler_pair());
    CHECK(rep.explicit_residuals[0] < 1e-15);             // weights sum to 1
    CHECK(rep.explicit_residuals[1] == doctest::Approx(1.0)); // 2 sum b a = 0
}

TEST_CASE("zero dynamics returns the state exactly") {
    const ImexTableau t = ssp_ldirk3_433();
    const std::vector<double> state{1.25, -3.0, 0.5};
    const MultiplierFn mult = [](const std::vector<double>& s) {
        return std::vector<double>(s.size(), 0.0);
    };
    const std::vector<double> next = imex_step(state, 0.1, mult, t);
    CHECK(next == state);
}

TEST_CASE("one step of the scalar linear problem") {
    const double got = scalar_step(ssp_ldirk3_433(), 1.0, -1.0, 0.1);
    CHECK(std::abs(got - std::exp(-0.1)) < 2e-5);
}

TEST_CASE("global order on the scalar linear problem") {
    const ImexTableau t = ssp_ldirk3_433();
    std::vector<double> errors;
    for (double dt : {0.1, 0.05, 0.025}) {
        double y = 1.0;
        const long steps = std::lround(1.0 / dt);
        for (long s = 0; s < steps; ++s) y = scalar_step(t, y, -1.0, dt);
        errors.push_back(std::abs(y - std::exp(-1.0)));
    }
    for (size_t k = 1; k < errors.size(); ++k) {
        const double slope = std::log2(errors[k - 1] / errors[k]);
        CAPTURE(k);
        CHECK(slope >= 2.9);
    }
}

TEST_CASE("local truncation error shrinks at fourth order in dt") {
    const ImexTableau t = ssp_ldirk3_433();
    const double e1 = std::abs(scalar_step(t, 1.0, -1.0, 1e-2) - std::exp(-1e-2));
    const double e2 = std::abs(scalar_step(t, 1.0, -1.0, 5e-3) - std::exp(-5e-3));
    const double ratio = e1 / e2;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("final combination equals the last implicit stage when b matches") {
    const ImexTableau t = stiffly_accurate_pair();
    REQUIRE(t.stiffly_accurate());

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(0.2, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> state(4);
        std::vector<double> rate(4);
        for (double& x : state) x = dist(rng);
        for (double& x : rate) x = -dist(rng);
        const double dt = 0.05;
        const MultiplierFn mult = [&rate](const std::vector<double>&) { return rate; };

        // re-derive the last implicit stage by hand
        const double g = t.a_im[0][0];
        std::vector<double> im1(4), im2(4);
        for (int k = 0; k < 4; ++k) im1[k] = state[k] / (1.0 - dt * g * rate[k]);
        for (int k = 0; k < 4; ++k) {
            im2[k] = (state[k] + dt * t.a_im[1][0] * rate[k] * im1[k]) /
                     (1.0 - dt * g * rate[k]);
        }
        const std::vector<double> next = imex_step(state, dt, mult, t);
        for (int k = 0; k < 4; ++k) {
            CHECK(std::abs(next[k] - im2[k]) < 1e-12);
        }
    }
}

TEST_CASE("singular stage guard") {
    const ImexTableau t = ssp_ldirk3_433();
    // denominator 1 - dt * lambda * M vanishes when M = 1/(dt*lambda)
    const double dt = 0.1;
    const double bad = 1.0 / (dt * kLambda);
    CHECK_THROWS_AS(scalar_step(t, 1.0, bad, dt), SingularStage);
    CHECK_NOTHROW(scalar_step(t, 1.0, bad * 0.9, dt));
}

TEST_CASE("imex_step validates dt") {
    const ImexTableau t = ssp_ldirk3_433();
    const MultiplierFn mult = [](const std::vector<double>& s) {
        return std::vector<double>(s.size(), 0.0);
    };
    CHECK_THROWS_AS(imex_step({1.0}, 0.0, mult, t), InvalidArgument);
    CHECK_THROWS_AS(imex_step({1.0}, -0.1, mult, t), InvalidArgument);
}
