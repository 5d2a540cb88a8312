// Independent reference computations used by the tests. These deliberately
// avoid the library's own integration and quadrature paths.
#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "core/delta_solver.hpp"
#include "core/entropy.hpp"
#include "core/source.hpp"

namespace oracle {

/// D(x, t) when Phi'' = 1: D^2 D_t = R^2 integrates to (D0^3 + 3 R^2 t)^(1/3).
inline double constant_phi2_exact(double d0, double r, double t) {
    return std::cbrt(d0 * d0 * d0 + 3.0 * r * r * t);
}

/// Classical fixed-step RK4 on y' = f(y) for a small system.
inline std::vector<double> rk4(std::vector<double> y,
                               const std::function<std::vector<double>(const std::vector<double>&)>& f,
                               double dt, long steps) {
    const size_t n = y.size();
    for (long s = 0; s < steps; ++s) {
        const std::vector<double> k1 = f(y);
        std::vector<double> tmp(n);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt / 2.0 * k1[i];
        const std::vector<double> k2 = f(tmp);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt / 2.0 * k2[i];
        const std::vector<double> k3 = f(tmp);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
        const std::vector<double> k4 = f(tmp);
        for (size_t i = 0; i < n; ++i) {
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    return y;
}

/// Right-hand side of the raw delta system, written directly from the
/// plateau ODEs (not via the solver's multiplier form).
inline std::function<std::vector<double>(const std::vector<double>&)>
delta_rhs(const btn1d::DeltaPairSource& p, const btn1d::EntropyModel& ent) {
    return [p, ent](const std::vector<double>& y) {
        const double d1 = y[0], d2 = y[1];
        const double u_x1 = (p.a - p.b) * (1.0 - p.x1) / d2;
        const double u_x0 = p.a * (p.x1 - p.x0) / d1 + u_x1;
        const double f1 = p.a * p.a * ent.phi2(u_x0) / (d1 * d1);
        const double f2 =
            (p.a - p.b) * (p.a * ent.phi2(u_x0) - p.b * ent.phi2(u_x1)) / (d2 * d2);
        return std::vector<double>{f1, f2};
    };
}

/// Brute-force scan of the ratio-dominance inequality int S+ >= kappa int S-
/// (or its mirror) on a dense grid; used to cross-check the closed-form
/// classifier branch.
inline bool ratio_dominance_scan(const btn1d::SourceModel& src, double kappa, bool forward,
                                 int samples = 20000) {
    const double len = src.domain_length();
    double pos = 0.0, neg = 0.0;
    const double h = len / samples;
    for (int i = 1; i <= samples; ++i) {
        const double xm = (i - 0.5) * h;
        const double s = src.eval_S(xm);
        if (s > 0.0) pos += s * h;
        else neg -= s * h;
        const bool ok = forward ? pos >= kappa * neg - 1e-12 : pos <= kappa * neg + 1e-12;
        if (!ok) return false;
    }
    return true;
}

} // namespace oracle
