#pragma once

#include <functional>
#include <vector>

namespace btn1d {

/// Double Butcher tableau for a partitioned implicit-explicit Runge-Kutta
/// scheme with shared weights. Matrices are stored row-major, stages x
/// stages.
struct ImexTableau {
    int stages = 0;
    std::vector<std::vector<double>> a_ex; // explicit part, strictly lower triangular
    std::vector<std::vector<double>> a_im; // implicit part, lower triangular, nonzero diagonal
    std::vector<double> b;                 // shared weights
    std::vector<double> c_ex;
    std::vector<double> c_im;

    /// Structural checks: shapes, triangularity, nonzero implicit diagonal,
    /// and row sums matching the abscissae to 1e-12. Throws InvalidArgument.
    void validate() const;

    /// Whether the last implicit row equals the weight vector, making the
    /// update coincide with the final implicit stage.
    bool stiffly_accurate(double tol = 1e-12) const;
};

/// The 4-stage, third-order, L-stable pair used throughout: explicit rows
/// (0,0,0,0), (0,0,0,0), (0,1,0,0), (0,1/4,1/4,0) with weights
/// (0, 1/6, 1/6, 2/3), and a diagonally implicit companion built from
/// lambda = 0.24169426078821, mu = lambda/4, eta = 0.12915286960590.
ImexTableau ssp_ldirk3_433();

/// Residuals of the classical third-order conditions, evaluated separately
/// for the explicit and implicit matrices:
///   [0]  sum_j b_j                 - 1
///   [1]  2 sum_{j,k} b_j a_jk      - 1
///   [2]  3 sum_{j,k,l} b_j a_jk a_jl - 1
///   [3]  6 sum_{j,k,l} b_j a_jk a_kl - 1
struct OrderConditionReport {
    double explicit_residuals[4] = {0, 0, 0, 0};
    double implicit_residuals[4] = {0, 0, 0, 0};

    double max_residual() const;
    bool third_order(double tol = 1e-10) const { return max_residual() < tol; }
};

OrderConditionReport check_order3(const ImexTableau& t);

/// Per-component multiplier of the system state' = M(state) * state,
/// evaluated at an explicit stage value.
using MultiplierFn =
    std::function<std::vector<double>(const std::vector<double>& explicit_state)>;

/// One partitioned step for the multiplicative system: multipliers are
/// frozen at explicit stage values, so every implicit stage reduces to a
/// componentwise scalar division. Throws SingularStage when a stage
/// denominator magnitude drops below 1e-14; the result must then be
/// discarded by the caller.
std::vector<double> imex_step(const std::vector<double>& state, double dt,
                              const MultiplierFn& multiplier, const ImexTableau& tableau);

} // namespace btn1d
