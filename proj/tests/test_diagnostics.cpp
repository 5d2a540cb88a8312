#include "doctest.h"

#include <cmath>
#include <vector>

#include "core/diagnostics.hpp"
#include "core/errors.hpp"

using namespace btn1d;

TEST_CASE("relative l2 error") {
    const std::vector<double> ref{1.0, 2.0, -2.0};
    CHECK(rel_l2_error(ref, ref) == 0.0);

    std::vector<double> scaled = ref;
    for (double& x : scaled) x *= 1.01;
    CHECK(rel_l2_error(scaled, ref) == doctest::Approx(0.01).epsilon(1e-10));

    CHECK_THROWS_AS(rel_l2_error(ref, {0.0, 0.0, 0.0}), ZeroReference);
    CHECK_THROWS_AS(rel_l2_error(ref, {1.0}), InvalidArgument);
}

TEST_CASE("space-time study against the closed form") {
    PdeExactStudy study;
    study.source = SourceModel::linear(-1.98, 1.0);
    study.d_init = 1.0;
    study.t_fin = 0.1;
    study.h_list = {0.04, 0.02, 0.01, 0.005, 0.0025};
    const ConvergenceTable table = convergence_pde_exact(study);

    REQUIRE(table.series.size() == 1);
    const auto& rows = table.series[0].rows;
    REQUIRE(rows.size() == 5);
    CHECK(table.reference == "exact-oracle");
    CHECK_FALSE(rows[0].observed_order.has_value());

    // first row cannot land on 0.1 exactly (0.1/0.04 = 2.5 rounds up)
    CHECK(rows[0].t_reached == doctest::Approx(0.12));
    for (size_t k = 1; k < rows.size(); ++k) {
        CHECK(rows[k].t_reached == doctest::Approx(0.1));
        CHECK(rows[k].error < rows[k - 1].error);
        REQUIRE(rows[k].observed_order.has_value());
    }
    // trapezoid quadrature limits the combined order to two in space
    CHECK(*rows.back().observed_order >= 1.9);
}

TEST_CASE("single refinement row has no observed order") {
    PdeExactStudy study;
    study.source = SourceModel::linear(-1.98, 1.0);
    study.h_list = {0.01};
    const ConvergenceTable table = convergence_pde_exact(study);
    REQUIRE(table.series[0].rows.size() == 1);
    CHECK_FALSE(table.series[0].rows[0].observed_order.has_value());
}

TEST_CASE("refinements must decrease and divide the domain") {
    PdeExactStudy study;
    study.source = SourceModel::linear(-1.98, 1.0);
    study.h_list = {0.01, 0.02};
    CHECK_THROWS_AS(convergence_pde_exact(study), InvalidArgument);
    study.h_list = {0.013};
    CHECK_THROWS_AS(convergence_pde_exact(study), InvalidArgument);
}

TEST_CASE("time-only study reaches third order") {
    // the small initial value makes the multiplier large enough that the
    // time error sits well above the roundoff floor
    PdeTimeStudy study;
    study.source = SourceModel::linear(-1.98, 1.0);
    study.entropy = EntropyModel::sin_rational(2.0);
    study.n_intervals = 200;
    study.d_init = 0.1;
    study.t_fin = 0.01;
    study.dt_ref = 1e-6;
    study.dt_list = {1e-3, 5e-4, 2.5e-4, 1.25e-4};
    const ConvergenceTable table = convergence_pde_time(study);

    const auto& rows = table.series[0].rows;
    REQUIRE(rows.size() == 4);
    for (size_t k = 1; k < rows.size(); ++k) {
        CHECK(rows[k].error < rows[k - 1].error);
    }
    CHECK(*rows.back().observed_order > 2.5);
    CHECK(*rows.back().observed_order < 3.5);
}

TEST_CASE("time-only study rejects a coarse reference") {
    PdeTimeStudy study;
    study.source = SourceModel::linear(-1.98, 1.0);
    study.dt_list = {1e-3};
    study.dt_ref = 5e-4; // not an order of magnitude below
    CHECK_THROWS_AS(convergence_pde_time(study), InvalidArgument);
}

TEST_CASE("study aborts when a run touches down") {
    PdeTimeStudy study;
    study.source = SourceModel::linear(-1.98, 1.0);
    study.entropy = EntropyModel::fisher();
    study.n_intervals = 200;
    study.d_init = 0.1;
    study.t_fin = 1.0;
    study.dt_ref = 1e-5;
    study.dt_list = {1e-3};
    CHECK_THROWS_AS(convergence_pde_time(study), TouchdownInStudy);
}

TEST_CASE("delta study produces per-variable series at third order") {
    DeltaTimeStudy study;
    study.source = SourceModel::delta_pair(1.0, 0.9, 0.1, 0.9);
    study.entropy = EntropyModel::square();
    study.d1_init = 1.0;
    study.d2_init = 1.0;
    study.t_fin = 0.1;
    study.dt_ref = 1e-5;
    study.dt_list = {0.1 / 4, 0.1 / 8, 0.1 / 16, 0.1 / 32, 0.1 / 64, 0.1 / 128};
    const ConvergenceTable table = convergence_delta(study);

    REQUIRE(table.series.size() == 2);
    CHECK(table.series[0].label == "D1");
    CHECK(table.series[1].label == "D2");
    for (const auto& series : table.series) {
        REQUIRE(series.rows.size() == 6);
        for (size_t k = 1; k < series.rows.size(); ++k) {
            CHECK(series.rows[k].error < series.rows[k - 1].error);
        }
        const double last = *series.rows.back().observed_order;
        CHECK(last >= 2.7);
        CHECK(last <= 3.3);
        // asymptotic regime: the last two orders agree
        const double prev = *series.rows[series.rows.size() - 2].observed_order;
        CHECK(std::abs(last - prev) < 0.5);
    }
}
