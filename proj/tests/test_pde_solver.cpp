#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "core/diagnostics.hpp"
#include "core/errors.hpp"
#include "core/pde_solver.hpp"
#include "test_oracles.hpp"

using namespace btn1d;

namespace {

const SourceModel kPaperSource = SourceModel::linear(-1.98, 1.0);

PdeRunConfig base_config() {
    PdeRunConfig cfg;
    cfg.n_intervals = 200;
    cfg.dt = 1e-3;
    cfg.t_fin = 0.1;
    cfg.d_init = 1.0;
    cfg.source = kPaperSource;
    cfg.entropy = EntropyModel::constant();
    return cfg;
}

} // namespace

TEST_CASE("multiplier: constant entropy gives M = R^2 / D^3") {
    const Grid g(10000, 1.0);
    const DiffusivityField d1 = DiffusivityField::constant(g, 1.0);
    const NodalField m1 = multiplier(d1, kPaperSource, EntropyModel::constant());
    for (int i = 0; i <= g.intervals; i += 1000) {
        const double r = kPaperSource.eval_R(g.node(i));
        CHECK(std::abs(m1.values[i] - r * r) < 1e-8);
    }

    const DiffusivityField d2 = DiffusivityField::constant(g, 2.0);
    const NodalField m2 = multiplier(d2, kPaperSource, EntropyModel::constant());
    const double r_mid = kPaperSource.eval_R(0.5);
    CHECK(m2.values[5000] == doctest::Approx(r_mid * r_mid / 8.0).epsilon(1e-6));
    CHECK(m2.values[5000] == doctest::Approx(0.0079703).epsilon(1e-4));
}

TEST_CASE("multiplier vanishes with the source") {
    const Grid g(100, 1.0);
    const SourceModel zero = SourceModel::linear(0.0, 0.0);
    const NodalField m = multiplier(DiffusivityField::constant(g, 1.0), zero,
                                    EntropyModel::fisher());
    for (double x : m.values) CHECK(x == 0.0);
}

TEST_CASE("config validation") {
    PdeRunConfig cfg = base_config();
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);

    cfg = base_config();
    cfg.source = SourceModel::delta_pair(1.0, 0.9, 0.1, 0.9);
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);

    cfg = base_config();
    cfg.d_init = 1e-12; // below the touchdown floor
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);

    cfg = base_config();
    cfg.d_init = std::vector<double>(5, 1.0); // wrong node count
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);

    cfg = base_config();
    cfg.length = 1.5; // source still has length 1
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("constant entropy run matches the closed-form solution") {
    PdeRunConfig cfg = base_config();
    const TrajectoryRecord rec = run(cfg);
    REQUIRE_FALSE(rec.touched_down);
    CHECK(rec.last().t == doctest::Approx(0.1));

    std::vector<double> exact(rec.grid.nodes());
    for (int i = 0; i < rec.grid.nodes(); ++i) {
        exact[i] = oracle::constant_phi2_exact(1.0, kPaperSource.eval_R(rec.grid.node(i)), 0.1);
    }
    CHECK(rel_l2_error(rec.last().d, exact) < 1e-4);
}

TEST_CASE("zero source leaves D untouched") {
    PdeRunConfig cfg = base_config();
    cfg.source = SourceModel::linear(0.0, 0.0);
    cfg.n_intervals = 50;
    std::vector<double> init(51);
    for (int i = 0; i <= 50; ++i) init[i] = 1.0 + 0.5 * std::sin(i * 0.3);
    cfg.d_init = init;
    const TrajectoryRecord rec = run(cfg);
    REQUIRE_FALSE(rec.touched_down);
    for (int i = 0; i <= 50; ++i) CHECK(rec.last().d[i] == init[i]);
}

TEST_CASE("fisher entropy: positive from D = 1, touchdown from D = 0.1") {
    PdeRunConfig cfg = base_config();
    cfg.entropy = EntropyModel::fisher();
    cfg.n_intervals = 500;
    cfg.dt = 1e-4;
    cfg.t_fin = 0.05;
    const TrajectoryRecord healthy = run(cfg);
    CHECK_FALSE(healthy.touched_down);
    CHECK(healthy.last().min_d > 0.0);

    cfg.d_init = 0.1;
    cfg.t_fin = 1.0;
    const TrajectoryRecord doomed = run(cfg);
    REQUIRE(doomed.touched_down);
    CHECK(doomed.touchdown->t_last_valid < 1.0);
    CHECK(doomed.touchdown->t_last_valid > 0.0);
    CHECK(doomed.last().min_d > 0.0); // stored states stay strictly positive
    CHECK(doomed.touchdown->argmin_x > 0.0);
    CHECK(doomed.touchdown->argmin_x < 1.0);
    // snapshots end at the last valid state
    CHECK(doomed.last().t == doctest::Approx(doomed.touchdown->t_last_valid));
}

TEST_CASE("snapshot cadence and monotone times") {
    PdeRunConfig cfg = base_config();
    cfg.snapshot_every = 0; // automatic: at most ~200 + endpoints
    const TrajectoryRecord rec = run(cfg);
    CHECK(rec.snapshots.size() >= 2);
    CHECK(rec.snapshots.size() <= 202);
    for (size_t k = 1; k < rec.snapshots.size(); ++k) {
        CHECK(rec.snapshots[k].t > rec.snapshots[k - 1].t);
        CHECK(rec.snapshots[k].min_d > 0.0);
    }
    CHECK(rec.snapshots.front().t == 0.0);

    cfg.snapshot_every = 10;
    const TrajectoryRecord rec10 = run(cfg);
    CHECK(rec10.snapshots.size() == 11); // 100 steps / 10 + initial state
}

TEST_CASE("energy decreases along a healthy trajectory") {
    PdeRunConfig cfg = base_config();
    cfg.entropy = EntropyModel::exp_neg();
    cfg.snapshot_every = 10;
    const TrajectoryRecord rec = run(cfg);
    REQUIRE_FALSE(rec.touched_down);
    for (size_t k = 1; k < rec.snapshots.size(); ++k) {
        CHECK(rec.snapshots[k].energy <= rec.snapshots[k - 1].energy + 1e-12);
    }
}

TEST_CASE("guaranteed-positive configuration has nondecreasing min D") {
    PdeRunConfig cfg = base_config();
    cfg.source = SourceModel::linear(0.0, 1.0);
    cfg.entropy = EntropyModel::fisher();
    cfg.snapshot_every = 5;
    REQUIRE(classify_positivity(cfg.source, cfg.entropy).guaranteed);
    const TrajectoryRecord rec = run(cfg);
    REQUIRE_FALSE(rec.touched_down);
    long prev_step = 0;
    for (size_t k = 1; k < rec.snapshots.size(); ++k) {
        const long step = std::lround(rec.snapshots[k].t / cfg.dt);
        const double tol = 1e-12 * (step - prev_step);
        CHECK(rec.snapshots[k].min_d >= rec.snapshots[k - 1].min_d - tol);
        prev_step = step;
    }
}

TEST_CASE("min-D sweep rows") {
    PdeRunConfig cfg = base_config();
    cfg.entropy = EntropyModel::fisher();
    cfg.n_intervals = 200;
    cfg.d_init = 0.1;
    cfg.t_fin = 1.0;

    SUBCASE("single dt gives one row") {
        const auto rows = min_d_sweep(cfg, {1e-3});
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].dt == 1e-3);
        CHECK(rows[0].touched_down);
    }
    SUBCASE("dt list must decrease") {
        CHECK_THROWS_AS(min_d_sweep(cfg, {1e-4, 1e-3}), InvalidArgument);
        CHECK_THROWS_AS(min_d_sweep(cfg, {}), InvalidArgument);
    }
    SUBCASE("degenerate sweep without touchdown") {
        PdeRunConfig calm = base_config();
        calm.t_fin = 0.05;
        const auto rows = min_d_sweep(calm, {1e-3, 5e-4});
        REQUIRE(rows.size() == 2);
        for (const auto& row : rows) {
            CHECK_FALSE(row.touched_down);
            CHECK(row.t_last == doctest::Approx(0.05));
            // closed form never dips below the initial value when R >= 0
            CHECK(row.min_d >= 1.0 - 1e-9);
        }
    }
}
