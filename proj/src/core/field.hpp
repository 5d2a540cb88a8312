#pragma once

#include <vector>

#include "entropy.hpp"
#include "source.hpp"

namespace btn1d {

/// Uniform grid of N intervals on [0, length]; nodes are indexed 0..N
/// inclusive so both boundary conditions (u_N = 0, V_0 = 0) are literal
/// array entries.
struct Grid {
    int intervals = 0;
    double length = 1.0;

    Grid() = default;
    Grid(int n, double len);

    double spacing() const { return length / intervals; }
    int nodes() const { return intervals + 1; }
    double node(int i) const { return length * static_cast<double>(i) / intervals; }

    bool operator==(const Grid&) const = default;
};

/// Per-node real values (u, V, R samples, Phi'' samples, ...).
struct NodalField {
    Grid grid;
    std::vector<double> values;

    NodalField() = default;
    NodalField(Grid g, std::vector<double> v);
    static NodalField constant(Grid g, double value);
};

/// The diffusivity D on the grid. Every value is strictly positive while the
/// field is alive; a field breaking this only appears inside the touchdown
/// termination path and is never stepped again.
struct DiffusivityField {
    Grid grid;
    std::vector<double> values;

    DiffusivityField() = default;
    DiffusivityField(Grid g, std::vector<double> v);
    static DiffusivityField constant(Grid g, double value);

    double min_value() const;
    int argmin_index() const;
};

/// Composite trapezoid of nodal values over the whole grid.
double trapezoid(const Grid& g, const std::vector<double>& values);

/// u(x) = integral over (x, 1) of R/D, accumulated right-to-left in
/// trapezoid panels: u_N = 0, u_i = u_{i+1} + (R_i/D_i + R_{i+1}/D_{i+1}) h/2.
/// Throws NonPositiveDiffusivity if any D_i <= 0.
NodalField compute_u(const DiffusivityField& d, const SourceModel& src);

/// V(x) = integral over (0, x) of Phi''(u) S, accumulated left-to-right:
/// V_0 = 0, V_i = V_{i-1} + (Phi''_i S_i + Phi''_{i-1} S_{i-1}) h/2.
/// Requires a pointwise source (linear); propagates DomainViolation from
/// Phi''.
NodalField compute_V(const NodalField& u, const SourceModel& src, const EntropyModel& ent);

/// Trapezoid approximation of E[D] = integral of R^2/D Phi''(u).
double energy(const DiffusivityField& d, const NodalField& u, const SourceModel& src,
              const EntropyModel& ent);

/// Checks the a-priori bound max|u| <= ||S||_1 ||1/D||_1. The left side is
/// the grid max; the right side uses the closed-form ||S||_1 and the
/// trapezoid of 1/D.
struct BoundReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
};

BoundReport sup_bound_check(const DiffusivityField& d, const NodalField& u,
                            const SourceModel& src);

} // namespace btn1d
