#pragma once

#include <optional>
#include <string>
#include <vector>

#include "delta_solver.hpp"
#include "pde_solver.hpp"

namespace btn1d {

/// Relative Euclidean error ||a - ref||_2 / ||ref||_2. Throws ZeroReference
/// when ||ref||_2 = 0 and InvalidArgument on shape mismatch.
double rel_l2_error(const std::vector<double>& a, const std::vector<double>& ref);

struct ConvergenceRow {
    double h = 0.0;
    double dt = 0.0;
    double t_reached = 0.0;
    double error = 0.0;
    std::optional<double> observed_order; // absent on the first row
};

struct ConvergenceSeries {
    std::string label; // "D", "D1", "D2"
    std::vector<ConvergenceRow> rows;
};

struct ConvergenceTable {
    std::string reference; // "exact-oracle" or "fine-reference dt_ref=..."
    std::vector<ConvergenceSeries> series;
};

/// Exact solution of the field equation when Phi'' = 1 (V reduces to R,
/// so D^2 D_t = R^2 integrates in closed form).
double exact_constant_phi2_solution(double d_init, double r, double t);

/// Space-time study against the closed-form solution: for each h the run
/// uses dt = h and the error is measured at the reached time. Requires the
/// Constant entropy and a constant initial value; h values must divide the
/// domain length and decrease strictly.
struct PdeExactStudy {
    SourceModel source = SourceModel::linear(0.0, 1.0);
    double d_init = 1.0;
    double t_fin = 0.1;
    double length = 1.0;
    std::vector<double> h_list;
};
ConvergenceTable convergence_pde_exact(const PdeExactStudy& study);

/// Time-only study on a fixed grid against a fine-reference run at dt_ref
/// (dt_ref < min(dt)/10 required). Both runs share the grid, so the spatial
/// error cancels in the comparison. When the reference grid is a nested
/// refinement of a row's grid the reference is restricted to the coarse
/// node set.
struct PdeTimeStudy {
    SourceModel source = SourceModel::linear(0.0, 1.0);
    EntropyModel entropy = EntropyModel::constant();
    int n_intervals = 10000;
    double d_init = 1.0;
    double t_fin = 0.01;
    double length = 1.0;
    double dt_ref = 1e-7;
    std::vector<double> dt_list;
};
ConvergenceTable convergence_pde_time(const PdeTimeStudy& study);

/// Time study for the two-component delta system, one error series per
/// variable, against a fine-reference run at dt_ref.
struct DeltaTimeStudy {
    SourceModel source = SourceModel::delta_pair(1.0, 0.9, 0.1, 0.9);
    EntropyModel entropy = EntropyModel::square();
    double d1_init = 1.0;
    double d2_init = 1.0;
    double t_fin = 0.1;
    double dt_ref = 1e-5;
    std::vector<double> dt_list;
};
ConvergenceTable convergence_delta(const DeltaTimeStudy& study);

} // namespace btn1d
