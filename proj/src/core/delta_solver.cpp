#include "delta_solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "errors.hpp"
#include "imex.hpp"

namespace btn1d {

namespace {

void require_positive_state(const DeltaState& s, const char* where) {
    if (!(s.d1 > 0.0) || !(s.d2 > 0.0)) {
        std::ostringstream msg;
        msg << where << ": D1 = " << s.d1 << ", D2 = " << s.d2 << " must both be positive";
        throw NonPositiveDiffusivity(msg.str());
    }
}

} // namespace

std::pair<double, double> u_at_deltas(const DeltaState& s, const DeltaPairSource& p) {
    require_positive_state(s, "u_at_deltas");
    const double u_x1 = (p.a - p.b) * (1.0 - p.x1) / s.d2;
    const double u_x0 = p.a * (p.x1 - p.x0) / s.d1 + u_x1;
    return {u_x0, u_x1};
}

std::pair<double, double> delta_multipliers(const DeltaState& s, const DeltaPairSource& p,
                                            const EntropyModel& ent) {
    const auto [u_x0, u_x1] = u_at_deltas(s, p);
    const double phi_x0 = ent.phi2(u_x0);
    const double phi_x1 = ent.phi2(u_x1);
    const double m1 = p.a * p.a * phi_x0 / (s.d1 * s.d1 * s.d1);
    const double m2 = (p.a - p.b) * (p.a * phi_x0 - p.b * phi_x1) / (s.d2 * s.d2 * s.d2);
    return {m1, m2};
}

long DeltaRunConfig::step_count() const {
    return static_cast<long>(std::ceil(t_fin / dt * (1.0 - 1e-12)));
}

void DeltaRunConfig::validate() const {
    if (!(d1_init > 0.0) || !(d2_init > 0.0)) {
        throw InvalidArgument("delta run: initial values must be positive");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("delta run: dt must be positive");
    if (!(t_fin > 0.0) || !std::isfinite(t_fin)) {
        throw InvalidArgument("delta run: t_fin must be positive");
    }
    if (snapshot_every < 0) {
        throw InvalidArgument("delta run: snapshot_every must be >= 1 (or 0 for auto)");
    }
}

DeltaTrajectory run_delta(const SourceModel& src, const EntropyModel& ent,
                          const DeltaRunConfig& cfg) {
    cfg.validate();
    const DeltaPairSource p = src.delta_params();

    const long n_steps = cfg.step_count();
    const int cadence = cfg.snapshot_every > 0
                            ? cfg.snapshot_every
                            : static_cast<int>(std::max<long>(1, (n_steps + 999) / 1000));

    const ImexTableau tableau = ssp_ldirk3_433();
    const MultiplierFn mult = [&](const std::vector<double>& state) {
        const auto [m1, m2] = delta_multipliers(DeltaState{state[0], state[1]}, p, ent);
        return std::vector<double>{m1, m2};
    };

    DeltaTrajectory traj;
    traj.params = p;
    traj.d_left_plateau = cfg.d1_init; // D on [0, x0) keeps its initial value
    traj.sink_dominant = p.a < p.b;

    std::vector<double> state{cfg.d1_init, cfg.d2_init};
    const auto snapshot = [&](double t) {
        const double u_x1 = (p.a - p.b) * (1.0 - p.x1) / state[1];
        traj.snapshots.push_back(DeltaSnapshot{t, state[0], state[1], ent.phi2(u_x1)});
    };
    snapshot(0.0);

    long last_recorded = 0;
    for (long n = 0; n < n_steps; ++n) {
        std::vector<double> next;
        std::optional<TouchdownCause> cause;
        try {
            next = imex_step(state, cfg.dt, mult, tableau);
        } catch (const SingularStage&) {
            cause = TouchdownCause::SingularStage;
        } catch (const NonPositiveDiffusivity&) {
            cause = TouchdownCause::NonFinite;
        } catch (const DomainViolation&) {
            cause = TouchdownCause::DomainExit;
        }

        if (!cause) {
            if (!std::isfinite(next[0]) || !std::isfinite(next[1])) {
                cause = TouchdownCause::NonFinite;
            } else if (next[0] <= 0.0 || next[1] <= 0.0) {
                cause = TouchdownCause::FloorBreach;
            }
        }

        if (cause) {
            if (last_recorded != n) snapshot(n * cfg.dt);
            DeltaTouchdownInfo info;
            info.t_last_valid = n * cfg.dt;
            info.d1_last = state[0];
            info.d2_last = state[1];
            info.d2_rejected =
                next.empty() ? std::numeric_limits<double>::quiet_NaN() : next[1];
            info.cause = *cause;
            traj.touched_down = true;
            traj.touchdown = info;
            return traj;
        }

        state = std::move(next);
        if ((n + 1) % cadence == 0 || n + 1 == n_steps) {
            snapshot((n + 1) * cfg.dt);
            last_recorded = n + 1;
        }
    }
    return traj;
}

namespace {

// Composite Simpson over [lo, hi]; signed when hi < lo. Phi'' is smooth on
// the admissible domain, so a fixed panel count is plenty for diagnostics.
double integrate_phi2(const EntropyModel& ent, double lo, double hi) {
    constexpr int panels = 256; // even
    const double h = (hi - lo) / panels;
    if (h == 0.0) return 0.0;
    double sum = ent.phi2(lo) + ent.phi2(hi);
    for (int i = 1; i < panels; ++i) {
        sum += ent.phi2(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

} // namespace

double delta_energy(const DeltaState& s, const DeltaPairSource& p, const EntropyModel& ent) {
    const auto [u_x0, u_x1] = u_at_deltas(s, p);
    const double piece1 = p.a * integrate_phi2(ent, u_x1, u_x0);
    const double piece2 = (p.a - p.b) * integrate_phi2(ent, 0.0, u_x1);
    return piece1 + piece2;
}

PositivityVerdict check_delta_conditions(const SourceModel& src, const EntropyModel& ent) {
    const DeltaPairSource p = src.delta_params();
    if (p.a == p.b) {
        throw InvalidArgument("check_delta_conditions: requires a != b");
    }
    const bool source_dominant = p.a > p.b;
    const double flux_ratio = p.b / p.a;
    std::ostringstream d;

    switch (ent.kind) {
    case EntropyKind::Constant:
        // Phi''(z+w)/Phi''(w) is identically 1; the tail-ratio condition
        // reads 1 > b/a (source-dominant) or 1 < b/a (sink-dominant).
        if (source_dominant) {
            d << "Phi'' ratio = 1 > b/a = " << flux_ratio;
        } else {
            d << "Phi'' ratio = 1 < b/a = " << flux_ratio;
        }
        return {true, PositivityCondition::EntropyTailRatio, d.str()};

    case EntropyKind::Fisher:
        if (source_dominant) {
            d << "Phi'(u) = log(1 + u) -> inf as u -> inf, with a = " << p.a << " > b = " << p.b;
            return {true, PositivityCondition::DivergentPhiPrime, d.str()};
        }
        d << "sink-dominant regime with a domain bounded below: u(x1) can reach -1";
        return {false, PositivityCondition::None, d.str()};

    case EntropyKind::Square:
        // Phi' grows like u^3/3 toward either infinity.
        if (source_dominant) {
            d << "Phi'(u) ~ u^3/3 -> inf as u -> inf, with a > b";
        } else {
            d << "Phi'(u) ~ u^3/3 -> -inf as u -> -inf, with a < b";
        }
        return {true, PositivityCondition::DivergentPhiPrime, d.str()};

    case EntropyKind::ExpNeg:
        if (source_dominant) {
            // 1/(Phi''(v) v^4) = e^v / v^4 is non-integrable at +inf.
            d << "integral of e^v/v^4 over (1, inf) diverges, with a > b";
            return {true, PositivityCondition::DivergentTouchdownIntegral, d.str()};
        }
        d << "Phi'(u) = -e^{-u} -> -inf as u -> -inf, with a < b";
        return {true, PositivityCondition::DivergentPhiPrime, d.str()};

    case EntropyKind::SinRational: {
        // Worst-case asymptotic ratio of Phi''(z+w)/Phi''(w): the oscillating
        // factor can approach (sigma-1)/(sigma+1) from below (w -> +inf) and
        // (sigma+1)/(sigma-1) from above (w -> -inf).
        if (source_dominant) {
            const double liminf = (ent.sigma - 1.0) / (ent.sigma + 1.0);
            if (ent.sigma >= 2.0 && liminf > flux_ratio) {
                d << "(sigma-1)/(sigma+1) = " << liminf << " > b/a = " << flux_ratio;
                return {true, PositivityCondition::EntropyTailRatio, d.str()};
            }
            d << "(sigma-1)/(sigma+1) = " << liminf << " < b/a = " << flux_ratio
              << ": outside every implemented sufficient condition";
            return {false, PositivityCondition::None, d.str()};
        }
        const double limsup = (ent.sigma + 1.0) / (ent.sigma - 1.0);
        if (ent.sigma >= 2.0 && limsup < flux_ratio) {
            d << "(sigma+1)/(sigma-1) = " << limsup << " < b/a = " << flux_ratio;
            return {true, PositivityCondition::EntropyTailRatio, d.str()};
        }
        d << "(sigma+1)/(sigma-1) = " << limsup << " >= b/a = " << flux_ratio
          << ": outside every implemented sufficient condition";
        return {false, PositivityCondition::None, d.str()};
    }
    }
    return {false, PositivityCondition::None, "unknown entropy kind"};
}

} // namespace btn1d
