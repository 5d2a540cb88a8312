#pragma once

#include <optional>
#include <string>

namespace btn1d {

enum class EntropyKind {
    Constant,    // Phi''(u) = 1
    ExpNeg,      // Phi''(u) = exp(-u)
    Fisher,      // Phi''(u) = 1/(u+1), admissible only for u > -1
    SinRational, // Phi''(u) = 1/(u^2 (sin u + sigma) + 1)
    Square,      // Phi''(u) = u^2
};

/// Declared sign of Phi''' on the admissible domain. The reduced dynamics
/// never evaluates Phi''' itself; positivity classification only needs its
/// sign, so it is carried as metadata.
enum class Phi3Sign { NonNegative, NonPositive, Indefinite, Unknown };

/// An entropy generating function, represented by the only quantity the
/// reduced dynamics needs: its second derivative Phi''. Immutable in spirit;
/// fields are public so tests can assemble custom metadata combinations.
struct EntropyModel {
    EntropyKind kind = EntropyKind::Constant;
    double sigma = 0.0; // SinRational parameter; ignored by other kinds

    /// Open lower bound of the admissible u-domain (-inf except Fisher: -1).
    double domain_lower;

    /// Uniform bounds K- <= Phi'' <= K+ where they exist. Either side may be
    /// absent (e.g. SinRational sigma = 2 has an upper bound of 1 but no
    /// positive lower bound).
    std::optional<double> k_lower;
    std::optional<double> k_upper;

    Phi3Sign phi3_sign = Phi3Sign::Unknown;

    static EntropyModel constant();
    static EntropyModel exp_neg();
    static EntropyModel fisher();
    static EntropyModel sin_rational(double sigma);
    static EntropyModel square();

    /// Evaluate Phi''(u). Throws DomainViolation if u is at or below the
    /// domain's open lower bound, or non-finite.
    double phi2(double u) const;

    /// Whether Phi'(u) -> +inf as u -> +inf (equivalently: the integral of
    /// Phi'' over (0, inf) diverges). Declared per variant.
    bool phi_prime_diverges_pos() const;

    /// Whether Phi'(u) -> -inf as u -> -inf. False for Fisher, whose domain
    /// is bounded below.
    bool phi_prime_diverges_neg() const;

    /// Whether the integral of 1/(Phi''(v) v^4) over (1, inf) diverges.
    /// True only for ExpNeg among the built-in variants.
    bool touchdown_integral_diverges_pos() const;

    /// Mirror of the above with Phi''(-v); false for every built-in variant.
    bool touchdown_integral_diverges_neg() const;

    /// Whether Phi'' > 0 everywhere on the admissible domain (strict
    /// convexity). Square fails (Phi''(0) = 0); SinRational holds iff
    /// sigma >= 2.
    bool strictly_convex() const;

    std::string name() const;
};

/// Free-function form of EntropyModel::phi2.
inline double phi2(const EntropyModel& model, double u) { return model.phi2(u); }

} // namespace btn1d
