#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "field.hpp"
#include "imex.hpp"

namespace btn1d {

/// Why a trajectory stopped before its final time.
enum class TouchdownCause {
    FloorBreach,      // a component of the next state fell to or below the floor
    NonFinite,        // the next state contained inf or nan
    NonPositiveStage, // an intermediate stage value lost positivity
    SingularStage,    // an implicit stage denominator vanished
    DomainExit,       // Phi'' was asked outside its admissible domain mid-step
};

const char* to_string(TouchdownCause c);

struct TouchdownInfo {
    double t_last_valid = 0.0;
    int argmin_index = 0;   // argmin of the last valid state
    double argmin_x = 0.0;
    double last_min = 0.0;  // min of the last valid state
    double rejected_min = 0.0; // min over finite entries of the rejected step (nan if none)
    TouchdownCause cause = TouchdownCause::FloorBreach;
};

struct PdeSnapshot {
    double t = 0.0;
    std::vector<double> d;
    std::vector<double> u;
    double energy = 0.0;
    double min_d = 0.0;
};

struct TrajectoryRecord {
    Grid grid;
    std::vector<PdeSnapshot> snapshots;
    bool touched_down = false;
    std::optional<TouchdownInfo> touchdown;

    const PdeSnapshot& last() const { return snapshots.back(); }
};

struct PdeRunConfig {
    int n_intervals = 100;
    double length = 1.0;
    double dt = 1e-3;
    double t_fin = 1.0;
    /// Constant initial diffusivity or one value per node (n_intervals + 1).
    std::variant<double, std::vector<double>> d_init = 1.0;
    SourceModel source = SourceModel::linear(0.0, 1.0);
    EntropyModel entropy = EntropyModel::constant();
    /// Steps between stored snapshots; 0 picks a cadence keeping at most
    /// ~200 snapshots. The initial and final states are always stored.
    int snapshot_every = 0;
    double floor = 1e-10;

    /// Steps actually taken: t_fin/dt rounded up.
    long step_count() const;

    void validate() const;
};

/// M(D) = R V / D^3 with u and V rebuilt from D; recomputed fresh at every
/// evaluation.
NodalField multiplier(const DiffusivityField& d, const SourceModel& src,
                      const EntropyModel& ent);

/// Integrate D_t = M(D) D with the built-in third-order pair until t_fin or
/// touchdown. On touchdown the last valid state is kept (and snapshotted)
/// and no further stepping occurs.
TrajectoryRecord run(const PdeRunConfig& cfg);

struct MinDSweepRow {
    double dt = 0.0;
    double t_last = 0.0; // last resolved time (see below), or the final time
    double min_d = 0.0;  // min of D at t_last
    bool touched_down = false;
};

/// Re-run the configuration for each time step in `dt_list` (strictly
/// decreasing) and record how low D got before the plunge outruns the step
/// size. A run's reported point is the last step where min D lost at most
/// 20% in one step; one step later, spurious oscillations set in and the
/// values are integration artifacts, which is also where the runs stop.
/// Rows run in parallel.
std::vector<MinDSweepRow> min_d_sweep(const PdeRunConfig& base,
                                      const std::vector<double>& dt_list);

} // namespace btn1d
