#include "pde_solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "errors.hpp"

namespace btn1d {

const char* to_string(TouchdownCause c) {
    switch (c) {
    case TouchdownCause::FloorBreach: return "floor-breach";
    case TouchdownCause::NonFinite: return "non-finite";
    case TouchdownCause::NonPositiveStage: return "nonpositive-stage";
    case TouchdownCause::SingularStage: return "singular-stage";
    case TouchdownCause::DomainExit: return "entropy-domain-exit";
    }
    return "unknown";
}

long PdeRunConfig::step_count() const {
    // relative slack so an exactly-integral ratio is not pushed up by roundoff
    return static_cast<long>(std::ceil(t_fin / dt * (1.0 - 1e-12)));
}

void PdeRunConfig::validate() const {
    if (n_intervals < 2) throw InvalidArgument("pde run: n_intervals must be >= 2");
    if (!(length > 0.0)) throw InvalidArgument("pde run: length must be positive");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("pde run: dt must be positive");
    if (!(t_fin > 0.0) || !std::isfinite(t_fin)) {
        throw InvalidArgument("pde run: t_fin must be positive");
    }
    if (!(floor > 0.0)) throw InvalidArgument("pde run: floor must be positive");
    if (snapshot_every < 0) throw InvalidArgument("pde run: snapshot_every must be >= 1 (or 0 for auto)");
    if (!source.is_linear()) {
        throw InvalidArgument(
            "pde run: needs a pointwise (linear) source; delta pairs use the two-component reduction");
    }
    if (std::abs(source.linear_params().length - length) > 1e-12) {
        throw InvalidArgument("pde run: source domain length differs from grid length");
    }
    if (std::holds_alternative<double>(d_init)) {
        if (!(std::get<double>(d_init) >= floor)) {
            throw InvalidArgument("pde run: initial diffusivity must be >= floor");
        }
    } else {
        const auto& v = std::get<std::vector<double>>(d_init);
        if (static_cast<int>(v.size()) != n_intervals + 1) {
            throw InvalidArgument("pde run: per-node d_init needs n_intervals + 1 values");
        }
        for (double x : v) {
            if (!(x >= floor)) throw InvalidArgument("pde run: initial diffusivity must be >= floor");
        }
    }
}

NodalField multiplier(const DiffusivityField& d, const SourceModel& src,
                      const EntropyModel& ent) {
    const NodalField u = compute_u(d, src);
    const NodalField v = compute_V(u, src, ent);
    const Grid& g = d.grid;
    std::vector<double> m(g.nodes());
    for (int i = 0; i < g.nodes(); ++i) {
        const double di = d.values[i];
        m[i] = src.eval_R(g.node(i)) * v.values[i] / (di * di * di);
    }
    return NodalField(g, std::move(m));
}

namespace {

PdeSnapshot make_snapshot(double t, const Grid& g, const std::vector<double>& d,
                          const SourceModel& src, const EntropyModel& ent) {
    DiffusivityField field(g, d);
    NodalField u = compute_u(field, src);
    PdeSnapshot snap;
    snap.t = t;
    snap.energy = energy(field, u, src, ent);
    snap.min_d = field.min_value();
    snap.d = std::move(field.values);
    snap.u = std::move(u.values);
    return snap;
}

double finite_min(const std::vector<double>& v) {
    double m = std::numeric_limits<double>::quiet_NaN();
    for (double x : v) {
        if (!std::isfinite(x)) continue;
        if (std::isnan(m) || x < m) m = x;
    }
    return m;
}

struct StepOutcome {
    bool touched_down = false;
    TouchdownInfo info;
};

/// Drives the time loop on the raw state vector. `observer(step, d)` runs
/// after every accepted step. On touchdown `d` still holds the last valid
/// state.
template <typename Observer>
StepOutcome step_loop(const PdeRunConfig& cfg, const Grid& grid, std::vector<double>& d,
                      Observer&& observer) {
    const ImexTableau tableau = ssp_ldirk3_433();
    const MultiplierFn mult = [&](const std::vector<double>& state) {
        return multiplier(DiffusivityField(grid, state), cfg.source, cfg.entropy).values;
    };

    const long n_steps = cfg.step_count();
    for (long n = 0; n < n_steps; ++n) {
        std::vector<double> next;
        std::optional<TouchdownCause> cause;
        try {
            next = imex_step(d, cfg.dt, mult, tableau);
        } catch (const SingularStage&) {
            cause = TouchdownCause::SingularStage;
        } catch (const NonPositiveDiffusivity&) {
            cause = TouchdownCause::NonPositiveStage;
        } catch (const DomainViolation&) {
            cause = TouchdownCause::DomainExit;
        }

        if (!cause) {
            bool non_finite = false, below_floor = false;
            for (double x : next) {
                if (!std::isfinite(x)) { non_finite = true; break; }
                if (x <= cfg.floor) below_floor = true;
            }
            if (non_finite) cause = TouchdownCause::NonFinite;
            else if (below_floor) cause = TouchdownCause::FloorBreach;
        }

        if (cause) {
            StepOutcome out;
            out.touched_down = true;
            out.info.t_last_valid = n * cfg.dt;
            const DiffusivityField last(grid, d);
            out.info.argmin_index = last.argmin_index();
            out.info.argmin_x = grid.node(out.info.argmin_index);
            out.info.last_min = last.min_value();
            out.info.rejected_min =
                next.empty() ? std::numeric_limits<double>::quiet_NaN() : finite_min(next);
            out.info.cause = *cause;
            return out;
        }

        d = std::move(next);
        observer(n + 1, d);
    }
    return {};
}

std::vector<double> initial_state(const PdeRunConfig& cfg, const Grid& grid) {
    return std::holds_alternative<double>(cfg.d_init)
               ? std::vector<double>(grid.nodes(), std::get<double>(cfg.d_init))
               : std::get<std::vector<double>>(cfg.d_init);
}

} // namespace

TrajectoryRecord run(const PdeRunConfig& cfg) {
    cfg.validate();
    const Grid grid(cfg.n_intervals, cfg.length);
    std::vector<double> d = initial_state(cfg, grid);

    const long n_steps = cfg.step_count();
    const int cadence = cfg.snapshot_every > 0
                            ? cfg.snapshot_every
                            : static_cast<int>(std::max<long>(1, (n_steps + 199) / 200));

    TrajectoryRecord rec;
    rec.grid = grid;
    rec.snapshots.push_back(make_snapshot(0.0, grid, d, cfg.source, cfg.entropy));

    long last_recorded = 0;
    const StepOutcome out =
        step_loop(cfg, grid, d, [&](long step, const std::vector<double>& state) {
            if (step % cadence == 0 || step == n_steps) {
                rec.snapshots.push_back(
                    make_snapshot(step * cfg.dt, grid, state, cfg.source, cfg.entropy));
                last_recorded = step;
            }
        });

    if (out.touched_down) {
        const long stop_step = std::lround(out.info.t_last_valid / cfg.dt);
        if (last_recorded != stop_step) {
            rec.snapshots.push_back(
                make_snapshot(out.info.t_last_valid, grid, d, cfg.source, cfg.entropy));
        }
        rec.touched_down = true;
        rec.touchdown = out.info;
    }
    return rec;
}

std::vector<MinDSweepRow> min_d_sweep(const PdeRunConfig& base,
                                      const std::vector<double>& dt_list) {
    if (dt_list.empty()) throw InvalidArgument("min_d_sweep: empty dt list");
    for (size_t i = 1; i < dt_list.size(); ++i) {
        if (!(dt_list[i] < dt_list[i - 1])) {
            throw InvalidArgument("min_d_sweep: dt list must be strictly decreasing");
        }
    }

    std::vector<std::future<MinDSweepRow>> futures;
    futures.reserve(dt_list.size());
    for (double dt : dt_list) {
        futures.push_back(std::async(std::launch::async, [&, dt]() {
            PdeRunConfig cfg = base;
            cfg.dt = dt;
            cfg.validate();
            const Grid grid(cfg.n_intervals, cfg.length);
            std::vector<double> d = initial_state(cfg, grid);

            // The reported point is the last step at which the plunge of
            // min D is still resolved by this dt: a single step may eat at
            // most 20% of the minimum. Past that, spurious oscillations are
            // about to appear and the values are integration artifacts.
            MinDSweepRow row;
            row.dt = dt;
            row.t_last = 0.0;
            row.min_d = *std::min_element(d.begin(), d.end());
            double prev_min = row.min_d;
            const StepOutcome out =
                step_loop(cfg, grid, d, [&](long step, const std::vector<double>& state) {
                    const double cur = *std::min_element(state.begin(), state.end());
                    if (cur >= 0.8 * prev_min) {
                        row.t_last = step * cfg.dt;
                        row.min_d = cur;
                    }
                    prev_min = cur;
                });
            row.touched_down = out.touched_down;
            return row;
        }));
    }
    std::vector<MinDSweepRow> rows;
    rows.reserve(dt_list.size());
    for (auto& f : futures) rows.push_back(f.get());
    return rows;
}

} // namespace btn1d
