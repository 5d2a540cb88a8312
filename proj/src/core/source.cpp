#include "source.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace btn1d {

const char* to_string(PositivityCondition c) {
    switch (c) {
    case PositivityCondition::None: return "none";
    case PositivityCondition::SingleSignSource: return "single-sign-source";
    case PositivityCondition::AlignedPrimitiveConvexity: return "aligned-primitive-convexity";
    case PositivityCondition::BoundedRatioDominance: return "bounded-ratio-dominance";
    case PositivityCondition::DivergentPhiPrime: return "divergent-phi-prime";
    case PositivityCondition::DivergentTouchdownIntegral: return "divergent-touchdown-integral";
    case PositivityCondition::EntropyTailRatio: return "entropy-tail-ratio";
    }
    return "none";
}

SourceModel SourceModel::linear(double m, double q, double length) {
    if (!(length > 0.0) || !std::isfinite(length) || !std::isfinite(m) || !std::isfinite(q)) {
        throw InvalidArgument("linear source requires finite m, q and length > 0");
    }
    return SourceModel(LinearSource{m, q, length});
}

SourceModel SourceModel::delta_pair(double a, double b, double x0, double x1) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw InvalidArgument("delta pair requires a > 0 and b > 0");
    }
    if (!(0.0 < x0 && x0 < x1 && x1 < 1.0)) {
        throw InvalidArgument("delta pair requires 0 < x0 < x1 < 1");
    }
    return SourceModel(DeltaPairSource{a, b, x0, x1});
}

const LinearSource& SourceModel::linear_params() const {
    if (!is_linear()) throw InvalidArgument("source is not linear");
    return std::get<LinearSource>(v_);
}

const DeltaPairSource& SourceModel::delta_params() const {
    if (!is_delta_pair()) throw InvalidArgument("source is not a delta pair");
    return std::get<DeltaPairSource>(v_);
}

double SourceModel::domain_length() const {
    return is_linear() ? std::get<LinearSource>(v_).length : 1.0;
}

double SourceModel::eval_S(double x) const {
    if (is_delta_pair()) {
        throw NotPointwise("a delta-pair source has no pointwise values; use eval_R");
    }
    const auto& s = std::get<LinearSource>(v_);
    return s.m * x + s.q;
}

double SourceModel::eval_R(double x) const {
    if (is_linear()) {
        const auto& s = std::get<LinearSource>(v_);
        return s.m * x * x / 2.0 + s.q * x;
    }
    const auto& d = std::get<DeltaPairSource>(v_);
    if (x < d.x0) return 0.0;
    if (x < d.x1) return d.a;
    return d.a - d.b;
}

double SourceModel::s_total_variation() const {
    if (is_delta_pair()) {
        const auto& d = std::get<DeltaPairSource>(v_);
        return d.a + d.b;
    }
    const auto& s = std::get<LinearSource>(v_);
    const double r_end = eval_R(s.length);
    if (s.m == 0.0) return std::abs(s.q) * s.length;
    const double root = -s.q / s.m;
    if (root <= 0.0 || root >= s.length) return std::abs(r_end);
    const double r_root = eval_R(root);
    return std::abs(r_root) + std::abs(r_end - r_root);
}

bool SourceModel::primitive_nonneg_on_domain() const {
    if (is_delta_pair()) {
        const auto& d = std::get<DeltaPairSource>(v_);
        return d.a >= d.b; // plateau values are 0, a, a-b
    }
    const auto& s = std::get<LinearSource>(v_);
    if (eval_R(s.length) < 0.0) return false;
    if (s.m != 0.0) {
        const double vertex = -s.q / s.m;
        if (vertex > 0.0 && vertex < s.length && eval_R(vertex) < 0.0) return false;
    }
    return true; // R(0) = 0
}

bool SourceModel::primitive_nonpos_on_domain() const {
    if (is_delta_pair()) {
        const auto& d = std::get<DeltaPairSource>(v_);
        return d.a <= 0.0 && d.a - d.b <= 0.0; // a > 0 always, so never
    }
    const auto& s = std::get<LinearSource>(v_);
    if (eval_R(s.length) > 0.0) return false;
    if (s.m != 0.0) {
        const double vertex = -s.q / s.m;
        if (vertex > 0.0 && vertex < s.length && eval_R(vertex) > 0.0) return false;
    }
    return true;
}

std::string SourceModel::describe() const {
    std::ostringstream out;
    if (is_linear()) {
        const auto& s = std::get<LinearSource>(v_);
        out << "linear S(x) = " << s.m << " x + " << s.q << " on [0, " << s.length << "]";
    } else {
        const auto& d = std::get<DeltaPairSource>(v_);
        out << "delta pair a = " << d.a << " at x0 = " << d.x0 << ", b = " << d.b
            << " at x1 = " << d.x1;
    }
    return out.str();
}

namespace {

PositivityVerdict guaranteed(PositivityCondition cond, std::string detail) {
    return PositivityVerdict{true, cond, std::move(detail)};
}

PositivityVerdict inconclusive(std::string detail) {
    return PositivityVerdict{false, PositivityCondition::None, std::move(detail)};
}

std::string domain_note(const LinearSource& s) {
    if (s.length == 1.0) return "";
    std::ostringstream out;
    out << " [sign logic extrapolated to the non-unit domain [0, " << s.length << "]]";
    return out.str();
}

PositivityVerdict classify_linear(const SourceModel& src, const LinearSource& s,
                                  const EntropyModel& ent) {
    const std::string note = domain_note(s);
    const double s0 = s.q;
    const double sL = s.m * s.length + s.q;

    // Single-signed S: a linear function attains its extremes at the
    // endpoints, so the endpoint signs decide exactly.
    if (s0 >= 0.0 && sL >= 0.0) {
        std::ostringstream d;
        d << "S >= 0 on [0, " << s.length << "] (S(0) = " << s0 << ", S(L) = " << sL << ")"
          << note;
        return guaranteed(PositivityCondition::SingleSignSource, d.str());
    }
    if (s0 <= 0.0 && sL <= 0.0) {
        std::ostringstream d;
        d << "S <= 0 on [0, " << s.length << "] (S(0) = " << s0 << ", S(L) = " << sL << ")"
          << note;
        return guaranteed(PositivityCondition::SingleSignSource, d.str());
    }

    // Aligned primitive / Phi''' sign.
    if (src.primitive_nonneg_on_domain() && ent.phi3_sign == Phi3Sign::NonNegative) {
        std::ostringstream d;
        d << "R >= 0 on [0, " << s.length << "] and Phi''' >= 0 (declared)" << note;
        return guaranteed(PositivityCondition::AlignedPrimitiveConvexity, d.str());
    }
    if (src.primitive_nonpos_on_domain() && ent.phi3_sign == Phi3Sign::NonPositive) {
        std::ostringstream d;
        d << "R <= 0 on [0, " << s.length << "] and Phi''' <= 0 (declared)" << note;
        return guaranteed(PositivityCondition::AlignedPrimitiveConvexity, d.str());
    }

    // Ratio-weighted dominance of one signed part; needs both Phi'' bounds.
    // S changes sign exactly once at root = -q/m here (the single-sign cases
    // were handled above), so each side of the inequality is monotone past
    // the root and the endpoint value decides.
    if (ent.k_lower && ent.k_upper) {
        const double k_minus = *ent.k_lower;
        const double k_plus = *ent.k_upper;
        if (k_minus > 0.0 && k_plus >= k_minus) {
            const double root = -s.q / s.m;
            const double r_root = src.eval_R(root);
            const double r_end = src.eval_R(s.length);
            if (s0 > 0.0) {
                // positive part first: P(x) = R(min(x, root)), N(x) = R(root) - R(x) past it
                const double pos_end = r_root;
                const double neg_end = r_root - r_end;
                if (pos_end >= (k_plus / k_minus) * neg_end) {
                    std::ostringstream d;
                    d << "int S+ = " << pos_end << " >= (K+/K-) int S- = "
                      << (k_plus / k_minus) * neg_end << " at every x" << note;
                    return guaranteed(PositivityCondition::BoundedRatioDominance, d.str());
                }
            } else {
                // negative part first: N(x) = -R(min(x, root)), P(x) = R(x) - R(root) past it
                const double neg_end = -r_root;
                const double pos_end = r_end - r_root;
                if (pos_end <= (k_minus / k_plus) * neg_end) {
                    std::ostringstream d;
                    d << "int S+ = " << pos_end << " <= (K-/K+) int S- = "
                      << (k_minus / k_plus) * neg_end << " at every x" << note;
                    return guaranteed(PositivityCondition::BoundedRatioDominance, d.str());
                }
            }
        }
    }

    std::ostringstream d;
    d << "no sufficient condition applies: S changes sign at x = " << (-s.q / s.m)
      << ", primitive sign"
      << (src.primitive_nonneg_on_domain() ? " R >= 0" : src.primitive_nonpos_on_domain() ? " R <= 0" : " indefinite")
      << ", Phi''' sign "
      << (ent.phi3_sign == Phi3Sign::NonNegative   ? ">= 0"
          : ent.phi3_sign == Phi3Sign::NonPositive ? "<= 0"
          : ent.phi3_sign == Phi3Sign::Indefinite  ? "indefinite"
                                                   : "unknown")
      << ", Phi'' bounds " << (ent.k_lower && ent.k_upper ? "present" : "absent") << note;
    return inconclusive(d.str());
}

PositivityVerdict classify_delta(const DeltaPairSource& d, const EntropyModel& ent) {
    if (d.a > d.b && ent.phi_prime_diverges_pos()) {
        std::ostringstream out;
        out << "a = " << d.a << " > b = " << d.b << " and Phi'(u) -> inf as u -> inf for "
            << ent.name();
        return guaranteed(PositivityCondition::DivergentPhiPrime, out.str());
    }
    if (d.a < d.b && ent.phi_prime_diverges_neg()) {
        std::ostringstream out;
        out << "a = " << d.a << " < b = " << d.b << " and Phi'(u) -> -inf as u -> -inf for "
            << ent.name();
        return guaranteed(PositivityCondition::DivergentPhiPrime, out.str());
    }
    std::ostringstream out;
    out << "no divergent-Phi'-based guarantee for " << ent.name() << " with a = " << d.a
        << ", b = " << d.b << "; see the delta-system condition checker for the full set";
    return inconclusive(out.str());
}

} // namespace

PositivityVerdict classify_positivity(const SourceModel& src, const EntropyModel& ent) {
    if (src.is_linear()) {
        return classify_linear(src, src.linear_params(), ent);
    }
    return classify_delta(src.delta_params(), ent);
}

} // namespace btn1d
