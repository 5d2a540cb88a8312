#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entropy.hpp"
#include "pde_solver.hpp"
#include "source.hpp"

namespace btn1d {

/// The two evolving plateau values of D for a delta-pair source: D1 on
/// [x0, x1), D2 on [x1, 1]. The plateau on [0, x0) never moves.
struct DeltaState {
    double d1 = 1.0;
    double d2 = 1.0;
};

/// Closed-form concentration values at the two delta locations:
///   u(x0) = a (x1 - x0)/D1 + (a - b)(1 - x1)/D2
///   u(x1) = (a - b)(1 - x1)/D2
std::pair<double, double> u_at_deltas(const DeltaState& s, const DeltaPairSource& p);

/// The two scalar multipliers of the reduced system:
///   M1 = a^2 Phi''(u(x0)) / D1^3
///   M2 = (a - b)[a Phi''(u(x0)) - b Phi''(u(x1))] / D2^3
std::pair<double, double> delta_multipliers(const DeltaState& s, const DeltaPairSource& p,
                                            const EntropyModel& ent);

struct DeltaSnapshot {
    double t = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double phi2_u_x1 = 0.0;
};

/// Touchdown for the delta system reports both sides of the sign change:
/// the last positive D2 and the first rejected (nonpositive or non-finite)
/// value one step later.
struct DeltaTouchdownInfo {
    double t_last_valid = 0.0;
    double d1_last = 0.0;
    double d2_last = 0.0;
    double d2_rejected = 0.0; // nan when the step failed before producing a value
    TouchdownCause cause = TouchdownCause::FloorBreach;
};

struct DeltaTrajectory {
    DeltaPairSource params;
    double d_left_plateau = 0.0; // initial (and permanent) value on [0, x0)
    std::vector<DeltaSnapshot> snapshots;
    bool touched_down = false;
    std::optional<DeltaTouchdownInfo> touchdown;
    bool sink_dominant = false; // a < b: outside the supported focus regime

    const DeltaSnapshot& last() const { return snapshots.back(); }
};

struct DeltaRunConfig {
    double d1_init = 1.0;
    double d2_init = 1.0;
    double dt = 1e-3;
    double t_fin = 1.0;
    int snapshot_every = 0; // 0 -> cadence keeping at most ~1000 snapshots

    long step_count() const;
    void validate() const;
};

/// Integrate the (D1, D2) system with the built-in third-order pair.
/// Terminates Completed at t_fin, or Touchdown as soon as the next state has
/// a component <= 0 or non-finite; the last valid state is kept.
DeltaTrajectory run_delta(const SourceModel& src, const EntropyModel& ent,
                          const DeltaRunConfig& cfg);

/// E[D] in its two-piece form, a * int_{u(x1)}^{u(x0)} Phi'' +
/// (a - b) * int_0^{u(x1)} Phi'', evaluated by quadrature of Phi''.
double delta_energy(const DeltaState& s, const DeltaPairSource& p, const EntropyModel& ent);

/// Closed-form sufficient conditions for D2 > 0 forever, decided per entropy
/// variant with the witness computation in the verdict text. Requires a != b.
PositivityVerdict check_delta_conditions(const SourceModel& src, const EntropyModel& ent);

} // namespace btn1d
