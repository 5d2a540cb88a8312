#include "field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace btn1d {

Grid::Grid(int n, double len) : intervals(n), length(len) {
    if (n < 2) throw InvalidArgument("grid needs at least 2 intervals");
    if (!(len > 0.0) || !std::isfinite(len)) throw InvalidArgument("grid length must be positive");
}

NodalField::NodalField(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.nodes()) {
        throw InvalidArgument("nodal field length does not match grid");
    }
}

NodalField NodalField::constant(Grid g, double value) {
    return NodalField(g, std::vector<double>(g.nodes(), value));
}

DiffusivityField::DiffusivityField(Grid g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.nodes()) {
        throw InvalidArgument("diffusivity field length does not match grid");
    }
}

DiffusivityField DiffusivityField::constant(Grid g, double value) {
    return DiffusivityField(g, std::vector<double>(g.nodes(), value));
}

double DiffusivityField::min_value() const {
    return *std::min_element(values.begin(), values.end());
}

int DiffusivityField::argmin_index() const {
    return static_cast<int>(std::min_element(values.begin(), values.end()) - values.begin());
}

double trapezoid(const Grid& g, const std::vector<double>& values) {
    const double h = g.spacing();
    double sum = 0.0;
    for (int i = 0; i < g.intervals; ++i) {
        sum += (values[i] + values[i + 1]) * h / 2.0;
    }
    return sum;
}

namespace {

void require_positive(const DiffusivityField& d, const char* where) {
    for (int i = 0; i < d.grid.nodes(); ++i) {
        if (!(d.values[i] > 0.0)) {
            std::ostringstream msg;
            msg << where << ": D[" << i << "] = " << d.values[i] << " is not positive";
            throw NonPositiveDiffusivity(msg.str());
        }
    }
}

} // namespace

NodalField compute_u(const DiffusivityField& d, const SourceModel& src) {
    require_positive(d, "compute_u");
    const Grid& g = d.grid;
    const double h = g.spacing();
    std::vector<double> u(g.nodes());
    u[g.intervals] = 0.0;
    double ratio_right = src.eval_R(g.node(g.intervals)) / d.values[g.intervals];
    for (int i = g.intervals - 1; i >= 0; --i) {
        const double ratio_left = src.eval_R(g.node(i)) / d.values[i];
        u[i] = u[i + 1] + (ratio_left + ratio_right) * h / 2.0;
        ratio_right = ratio_left;
    }
    return NodalField(g, std::move(u));
}

NodalField compute_V(const NodalField& u, const SourceModel& src, const EntropyModel& ent) {
    const Grid& g = u.grid;
    const double h = g.spacing();
    std::vector<double> v(g.nodes());
    v[0] = 0.0;
    double left = ent.phi2(u.values[0]) * src.eval_S(g.node(0));
    for (int i = 1; i < g.nodes(); ++i) {
        const double right = ent.phi2(u.values[i]) * src.eval_S(g.node(i));
        v[i] = v[i - 1] + (right + left) * h / 2.0;
        left = right;
    }
    return NodalField(g, std::move(v));
}

double energy(const DiffusivityField& d, const NodalField& u, const SourceModel& src,
              const EntropyModel& ent) {
    require_positive(d, "energy");
    const Grid& g = d.grid;
    std::vector<double> integrand(g.nodes());
    for (int i = 0; i < g.nodes(); ++i) {
        const double r = src.eval_R(g.node(i));
        integrand[i] = r * r / d.values[i] * ent.phi2(u.values[i]);
    }
    return trapezoid(g, integrand);
}

BoundReport sup_bound_check(const DiffusivityField& d, const NodalField& u,
                            const SourceModel& src) {
    BoundReport rep;
    for (double v : u.values) rep.lhs = std::max(rep.lhs, std::abs(v));
    std::vector<double> inv(d.grid.nodes());
    for (int i = 0; i < d.grid.nodes(); ++i) inv[i] = 1.0 / d.values[i];
    rep.rhs = src.s_total_variation() * trapezoid(d.grid, inv);
    rep.satisfied = rep.lhs <= rep.rhs * (1.0 + 1e-8);
    return rep;
}

} // namespace btn1d
