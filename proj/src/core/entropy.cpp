#include "entropy.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "errors.hpp"

namespace btn1d {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

EntropyModel EntropyModel::constant() {
    EntropyModel m;
    m.kind = EntropyKind::Constant;
    m.domain_lower = kNegInf;
    m.k_lower = 1.0;
    m.k_upper = 1.0;
    m.phi3_sign = Phi3Sign::NonNegative; // Phi''' = 0
    return m;
}

EntropyModel EntropyModel::exp_neg() {
    EntropyModel m;
    m.kind = EntropyKind::ExpNeg;
    m.domain_lower = kNegInf;
    m.phi3_sign = Phi3Sign::NonPositive; // Phi''' = -exp(-u)
    return m;
}

EntropyModel EntropyModel::fisher() {
    EntropyModel m;
    m.kind = EntropyKind::Fisher;
    m.domain_lower = -1.0; // open bound: Phi'' defined for u > -1 only
    m.phi3_sign = Phi3Sign::NonPositive; // Phi''' = -(u+1)^-2
    return m;
}

EntropyModel EntropyModel::sin_rational(double sigma) {
    EntropyModel m;
    m.kind = EntropyKind::SinRational;
    m.sigma = sigma;
    m.domain_lower = kNegInf;
    if (sigma >= 2.0) {
        // denominator u^2 (sin u + sigma) + 1 >= u^2 + 1 >= 1
        m.k_upper = 1.0;
    }
    m.phi3_sign = Phi3Sign::Indefinite;
    return m;
}

EntropyModel EntropyModel::square() {
    EntropyModel m;
    m.kind = EntropyKind::Square;
    m.domain_lower = kNegInf;
    m.phi3_sign = Phi3Sign::Indefinite; // Phi''' = 2u changes sign
    return m;
}

double EntropyModel::phi2(double u) const {
    if (!std::isfinite(u) || u <= domain_lower) {
        std::ostringstream msg;
        msg << "phi2(" << name() << "): u = " << u << " outside admissible domain (u > "
            << domain_lower << ")";
        throw DomainViolation(msg.str());
    }
    switch (kind) {
    case EntropyKind::Constant:
        return 1.0;
    case EntropyKind::ExpNeg:
        return std::exp(-u);
    case EntropyKind::Fisher:
        return 1.0 / (u + 1.0);
    case EntropyKind::SinRational:
        return 1.0 / (u * u * (std::sin(u) + sigma) + 1.0);
    case EntropyKind::Square:
        return u * u;
    }
    throw InvalidArgument("phi2: unknown entropy kind");
}

bool EntropyModel::phi_prime_diverges_pos() const {
    switch (kind) {
    case EntropyKind::Constant: return true;  // Phi' = u
    case EntropyKind::ExpNeg: return false;   // Phi'(inf) = finite
    case EntropyKind::Fisher: return true;    // Phi' = log(1+u)
    case EntropyKind::SinRational: return false; // Phi'' <= 1/(u^2+1), integrable
    case EntropyKind::Square: return true;    // Phi' = u^3/3
    }
    return false;
}

bool EntropyModel::phi_prime_diverges_neg() const {
    switch (kind) {
    case EntropyKind::Constant: return true;
    case EntropyKind::ExpNeg: return true; // integral of exp(-u) over (-inf, 0) diverges
    case EntropyKind::Fisher: return false; // domain bounded below at -1
    case EntropyKind::SinRational: return false;
    case EntropyKind::Square: return true;
    }
    return false;
}

bool EntropyModel::touchdown_integral_diverges_pos() const {
    // integral over (1, inf) of dv / (Phi''(v) v^4): diverges only when
    // Phi'' decays at least as fast as v^-3; exp(-v) qualifies.
    return kind == EntropyKind::ExpNeg;
}

bool EntropyModel::touchdown_integral_diverges_neg() const {
    // Phi''(-v) grows (ExpNeg) or decays at most quadratically (the rest);
    // the integrand is o(v^-2) in every built-in case.
    return false;
}

bool EntropyModel::strictly_convex() const {
    switch (kind) {
    case EntropyKind::Constant: return true;
    case EntropyKind::ExpNeg: return true;
    case EntropyKind::Fisher: return true;
    case EntropyKind::SinRational: return sigma >= 2.0;
    case EntropyKind::Square: return false; // Phi''(0) = 0
    }
    return false;
}

std::string EntropyModel::name() const {
    switch (kind) {
    case EntropyKind::Constant: return "constant";
    case EntropyKind::ExpNeg: return "exp-neg";
    case EntropyKind::Fisher: return "fisher";
    case EntropyKind::SinRational: {
        std::ostringstream s;
        s << "sin-rational(sigma=" << sigma << ")";
        return s.str();
    }
    case EntropyKind::Square: return "square";
    }
    return "unknown";
}

} // namespace btn1d
