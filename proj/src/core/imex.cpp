#include "imex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace btn1d {

void ImexTableau::validate() const {
    const auto fail = [](const std::string& what) { throw InvalidArgument("tableau: " + what); };
    if (stages < 1) fail("needs at least one stage");
    const size_t s = static_cast<size_t>(stages);
    if (a_ex.size() != s || a_im.size() != s || b.size() != s || c_ex.size() != s ||
        c_im.size() != s) {
        fail("inconsistent dimensions");
    }
    for (size_t i = 0; i < s; ++i) {
        if (a_ex[i].size() != s || a_im[i].size() != s) fail("matrix rows must have s entries");
        for (size_t j = i; j < s; ++j) {
            if (a_ex[i][j] != 0.0) fail("explicit matrix must be strictly lower triangular");
        }
        for (size_t j = i + 1; j < s; ++j) {
            if (a_im[i][j] != 0.0) fail("implicit matrix must be lower triangular");
        }
        if (a_im[i][i] == 0.0) fail("implicit diagonal entries must be nonzero");
        double row_ex = 0.0, row_im = 0.0;
        for (size_t j = 0; j < s; ++j) {
            row_ex += a_ex[i][j];
            row_im += a_im[i][j];
        }
        if (std::abs(row_ex - c_ex[i]) > 1e-12) fail("explicit row sum differs from c");
        if (std::abs(row_im - c_im[i]) > 1e-12) fail("implicit row sum differs from c");
    }
}

bool ImexTableau::stiffly_accurate(double tol) const {
    for (int j = 0; j < stages; ++j) {
        if (std::abs(a_im[stages - 1][j] - b[j]) > tol) return false;
    }
    return true;
}

ImexTableau ssp_ldirk3_433() {
    const double lambda = 0.24169426078821;
    const double mu = lambda / 4.0;
    const double eta = 0.12915286960590;

    ImexTableau t;
    t.stages = 4;
    t.a_ex = {{0, 0, 0, 0},
              {0, 0, 0, 0},
              {0, 1, 0, 0},
              {0, 0.25, 0.25, 0}};
    t.a_im = {{lambda, 0, 0, 0},
              {-lambda, lambda, 0, 0},
              {0, 1 - lambda, lambda, 0},
              {mu, eta, 0.5 - mu - eta - lambda, lambda}};
    t.b = {0, 1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0};
    t.c_ex = {0, 0, 1, 0.5};
    t.c_im = {lambda, 0, 1, 0.5};
    t.validate();
    return t;
}

namespace {

void order3_residuals(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                      double out[4]) {
    const int s = static_cast<int>(b.size());
    double sum1 = 0.0, sum2 = 0.0, sum3 = 0.0, sum4 = 0.0;
    for (int j = 0; j < s; ++j) {
        sum1 += b[j];
        double row = 0.0;
        for (int k = 0; k < s; ++k) row += a[j][k];
        sum2 += b[j] * row;
        sum3 += b[j] * row * row;
        for (int k = 0; k < s; ++k) {
            double row_k = 0.0;
            for (int l = 0; l < s; ++l) row_k += a[k][l];
            sum4 += b[j] * a[j][k] * row_k;
        }
    }
    out[0] = std::abs(sum1 - 1.0);
    out[1] = std::abs(2.0 * sum2 - 1.0);
    out[2] = std::abs(3.0 * sum3 - 1.0);
    out[3] = std::abs(6.0 * sum4 - 1.0);
}

} // namespace

double OrderConditionReport::max_residual() const {
    double m = 0.0;
    for (int i = 0; i < 4; ++i) {
        m = std::max(m, explicit_residuals[i]);
        m = std::max(m, implicit_residuals[i]);
    }
    return m;
}

OrderConditionReport check_order3(const ImexTableau& t) {
    OrderConditionReport rep;
    order3_residuals(t.a_ex, t.b, rep.explicit_residuals);
    order3_residuals(t.a_im, t.b, rep.implicit_residuals);
    return rep;
}

std::vector<double> imex_step(const std::vector<double>& state, double dt,
                              const MultiplierFn& multiplier, const ImexTableau& tableau) {
    if (!(dt > 0.0)) throw InvalidArgument("imex_step: dt must be positive");
    const int s = tableau.stages;
    const size_t n = state.size();

    // flux[i] = M(stage_ex_i) (*) stage_im_i, the reusable per-stage product
    std::vector<std::vector<double>> flux(s);
    std::vector<double> stage_ex = state;
    std::vector<double> stage_im(n);

    for (int i = 0; i < s; ++i) {
        if (i > 0) {
            stage_ex = state;
            for (int j = 0; j < i; ++j) {
                const double a = tableau.a_ex[i][j];
                if (a == 0.0) continue;
                for (size_t k = 0; k < n; ++k) stage_ex[k] += dt * a * flux[j][k];
            }
        }
        const std::vector<double> m = multiplier(stage_ex);
        if (m.size() != n) throw InvalidArgument("imex_step: multiplier size mismatch");

        stage_im = state;
        for (int j = 0; j < i; ++j) {
            const double a = tableau.a_im[i][j];
            if (a == 0.0) continue;
            for (size_t k = 0; k < n; ++k) stage_im[k] += dt * a * flux[j][k];
        }
        const double diag = tableau.a_im[i][i];
        for (size_t k = 0; k < n; ++k) {
            const double denom = 1.0 - dt * diag * m[k];
            if (std::abs(denom) < 1e-14) {
                std::ostringstream msg;
                msg << "stage " << i + 1 << ", component " << k
                    << ": denominator 1 - dt*a*M = " << denom
                    << " (dt too large for the local multiplier)";
                throw SingularStage(msg.str());
            }
            stage_im[k] /= denom;
        }

        flux[i].resize(n);
        for (size_t k = 0; k < n; ++k) flux[i][k] = m[k] * stage_im[k];
    }

    std::vector<double> next = state;
    for (int i = 0; i < s; ++i) {
        const double w = tableau.b[i];
        if (w == 0.0) continue;
        for (size_t k = 0; k < n; ++k) next[k] += dt * w * flux[i][k];
    }
    return next;
}

} // namespace btn1d
