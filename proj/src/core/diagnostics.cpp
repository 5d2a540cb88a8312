#include "diagnostics.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "errors.hpp"

namespace btn1d {

double rel_l2_error(const std::vector<double>& a, const std::vector<double>& ref) {
    if (a.size() != ref.size()) throw InvalidArgument("rel_l2_error: shape mismatch");
    double diff2 = 0.0, ref2 = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - ref[i];
        diff2 += d * d;
        ref2 += ref[i] * ref[i];
    }
    if (ref2 == 0.0) throw ZeroReference("rel_l2_error: reference has zero norm");
    return std::sqrt(diff2 / ref2);
}

double exact_constant_phi2_solution(double d_init, double r, double t) {
    return std::cbrt(d_init * d_init * d_init + 3.0 * r * r * t);
}

namespace {

void fill_observed_orders(ConvergenceSeries& series) {
    for (size_t k = 1; k < series.rows.size(); ++k) {
        const ConvergenceRow& prev = series.rows[k - 1];
        ConvergenceRow& row = series.rows[k];
        if (prev.error > 0.0 && row.error > 0.0 && prev.dt != row.dt) {
            row.observed_order = std::log(prev.error / row.error) / std::log(prev.dt / row.dt);
        }
    }
}

void require_decreasing(const std::vector<double>& xs, const char* what) {
    if (xs.empty()) throw InvalidArgument(std::string(what) + ": empty refinement list");
    for (size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] < xs[i - 1])) {
            throw InvalidArgument(std::string(what) + ": refinements must decrease strictly");
        }
    }
}

long exact_divisor(double whole, double part, const char* what) {
    const double ratio = whole / part;
    const long n = std::lround(ratio);
    if (n < 1 || std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio)) {
        std::ostringstream msg;
        msg << what << ": " << part << " does not divide " << whole;
        throw InvalidArgument(msg.str());
    }
    return n;
}

void require_completed(const TrajectoryRecord& rec, double dt) {
    if (rec.touched_down) {
        std::ostringstream msg;
        msg << "study run at dt = " << dt << " lost positivity at t = "
            << rec.touchdown->t_last_valid << " before the final time";
        throw TouchdownInStudy(msg.str());
    }
}

} // namespace

ConvergenceTable convergence_pde_exact(const PdeExactStudy& study) {
    require_decreasing(study.h_list, "exact-oracle study");
    if (!study.source.is_linear()) {
        throw InvalidArgument("exact-oracle study needs a linear source");
    }

    std::vector<std::future<ConvergenceRow>> futures;
    for (double h : study.h_list) {
        futures.push_back(std::async(std::launch::async, [&, h]() {
            PdeRunConfig cfg;
            cfg.n_intervals = static_cast<int>(exact_divisor(study.length, h, "exact-oracle study"));
            cfg.length = study.length;
            cfg.dt = h;
            cfg.t_fin = study.t_fin;
            cfg.d_init = study.d_init;
            cfg.source = study.source;
            cfg.entropy = EntropyModel::constant();
            cfg.snapshot_every = std::numeric_limits<int>::max(); // final state only
            TrajectoryRecord rec = run(cfg);
            require_completed(rec, h);

            const Grid grid = rec.grid;
            const double t = rec.last().t;
            std::vector<double> exact(grid.nodes());
            for (int i = 0; i < grid.nodes(); ++i) {
                exact[i] = exact_constant_phi2_solution(study.d_init,
                                                        study.source.eval_R(grid.node(i)), t);
            }
            ConvergenceRow row;
            row.h = h;
            row.dt = h;
            row.t_reached = t;
            row.error = rel_l2_error(rec.last().d, exact);
            return row;
        }));
    }

    ConvergenceTable table;
    table.reference = "exact-oracle";
    ConvergenceSeries series;
    series.label = "D";
    for (auto& f : futures) series.rows.push_back(f.get());
    fill_observed_orders(series);
    table.series.push_back(std::move(series));
    return table;
}

ConvergenceTable convergence_pde_time(const PdeTimeStudy& study) {
    require_decreasing(study.dt_list, "time study");
    if (!(study.dt_ref < study.dt_list.back() / 10.0)) {
        throw InvalidArgument("time study: dt_ref must be below the finest dt / 10");
    }
    for (double dt : study.dt_list) {
        exact_divisor(study.t_fin, dt, "time study (t_fin/dt must be integral)");
    }
    exact_divisor(study.t_fin, study.dt_ref, "time study (t_fin/dt_ref must be integral)");

    const auto run_at = [&](double dt, int n_intervals) {
        PdeRunConfig cfg;
        cfg.n_intervals = n_intervals;
        cfg.length = study.length;
        cfg.dt = dt;
        cfg.t_fin = study.t_fin;
        cfg.d_init = study.d_init;
        cfg.source = study.source;
        cfg.entropy = study.entropy;
        cfg.snapshot_every = std::numeric_limits<int>::max();
        TrajectoryRecord rec = run(cfg);
        require_completed(rec, dt);
        return rec;
    };

    const TrajectoryRecord ref = run_at(study.dt_ref, study.n_intervals);

    std::vector<std::future<ConvergenceRow>> futures;
    for (double dt : study.dt_list) {
        futures.push_back(std::async(std::launch::async, [&, dt]() {
            TrajectoryRecord rec = run_at(dt, study.n_intervals);

            // restrict the reference to this run's node set (nested grids)
            std::vector<double> ref_values;
            const long stride =
                exact_divisor(ref.grid.intervals, rec.grid.intervals, "time study grids");
            for (int i = 0; i < rec.grid.nodes(); ++i) {
                ref_values.push_back(ref.last().d[static_cast<size_t>(i) * stride]);
            }

            ConvergenceRow row;
            row.h = rec.grid.spacing();
            row.dt = dt;
            row.t_reached = rec.last().t;
            row.error = rel_l2_error(rec.last().d, ref_values);
            return row;
        }));
    }

    ConvergenceTable table;
    std::ostringstream refname;
    refname << "fine-reference dt_ref=" << study.dt_ref;
    table.reference = refname.str();
    ConvergenceSeries series;
    series.label = "D";
    for (auto& f : futures) series.rows.push_back(f.get());
    fill_observed_orders(series);
    table.series.push_back(std::move(series));
    return table;
}

ConvergenceTable convergence_delta(const DeltaTimeStudy& study) {
    require_decreasing(study.dt_list, "delta time study");
    if (!(study.dt_ref < study.dt_list.back() / 10.0)) {
        throw InvalidArgument("delta time study: dt_ref must be below the finest dt / 10");
    }
    for (double dt : study.dt_list) {
        exact_divisor(study.t_fin, dt, "delta time study (t_fin/dt must be integral)");
    }
    exact_divisor(study.t_fin, study.dt_ref, "delta time study (t_fin/dt_ref must be integral)");

    const auto run_at = [&](double dt) {
        DeltaRunConfig cfg;
        cfg.d1_init = study.d1_init;
        cfg.d2_init = study.d2_init;
        cfg.dt = dt;
        cfg.t_fin = study.t_fin;
        cfg.snapshot_every = std::numeric_limits<int>::max();
        DeltaTrajectory traj = run_delta(study.source, study.entropy, cfg);
        if (traj.touched_down) {
            std::ostringstream msg;
            msg << "delta study run at dt = " << dt << " lost positivity at t = "
                << traj.touchdown->t_last_valid;
            throw TouchdownInStudy(msg.str());
        }
        return traj;
    };

    const DeltaTrajectory ref = run_at(study.dt_ref);
    const double ref_d1 = ref.last().d1;
    const double ref_d2 = ref.last().d2;

    struct RowPair { ConvergenceRow d1, d2; };
    std::vector<std::future<RowPair>> futures;
    for (double dt : study.dt_list) {
        futures.push_back(std::async(std::launch::async, [&, dt]() {
            DeltaTrajectory traj = run_at(dt);
            RowPair pair;
            pair.d1.dt = pair.d2.dt = dt;
            pair.d1.t_reached = pair.d2.t_reached = traj.last().t;
            pair.d1.error = rel_l2_error({traj.last().d1}, {ref_d1});
            pair.d2.error = rel_l2_error({traj.last().d2}, {ref_d2});
            return pair;
        }));
    }

    ConvergenceTable table;
    std::ostringstream refname;
    refname << "fine-reference dt_ref=" << study.dt_ref;
    table.reference = refname.str();
    ConvergenceSeries s1, s2;
    s1.label = "D1";
    s2.label = "D2";
    for (auto& f : futures) {
        RowPair pair = f.get();
        s1.rows.push_back(pair.d1);
        s2.rows.push_back(pair.d2);
    }
    fill_observed_orders(s1);
    fill_observed_orders(s2);
    table.series.push_back(std::move(s1));
    table.series.push_back(std::move(s2));
    return table;
}

} // namespace btn1d
