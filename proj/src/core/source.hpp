#pragma once

#include <string>
#include <variant>

#include "entropy.hpp"

namespace btn1d {

/// S(x) = m x + q on [0, length].
struct LinearSource {
    double m = 0.0;
    double q = 0.0;
    double length = 1.0;
};

/// S = a delta(x - x0) - b delta(x - x1) on [0, 1], with a, b > 0 and
/// 0 < x0 < x1 < 1. Only the primitive R is pointwise-defined.
struct DeltaPairSource {
    double a = 1.0;
    double b = 1.0;
    double x0 = 0.0;
    double x1 = 1.0;
};

/// Which sufficient positivity condition fired, named by what it checks.
enum class PositivityCondition {
    None,
    SingleSignSource,          // S >= 0 or S <= 0 almost everywhere
    AlignedPrimitiveConvexity, // R and the declared Phi''' sign agree
    BoundedRatioDominance,     // K- <= Phi'' <= K+ and one signed part dominates
    DivergentPhiPrime,         // Phi' diverges at the relevant infinity
    DivergentTouchdownIntegral,// integral of 1/(Phi''(v) v^4) diverges
    EntropyTailRatio,          // asymptotic Phi''(z+w)/Phi''(w) vs b/a
};

const char* to_string(PositivityCondition c);

/// Outcome of a sufficient-condition check. `guaranteed == false` never
/// asserts loss of positivity; it only means no implemented condition
/// applies.
struct PositivityVerdict {
    bool guaranteed = false;
    PositivityCondition condition = PositivityCondition::None;
    std::string detail;
};

/// The prescribed source/sink distribution together with its exact primitive
/// R(x) = integral of S over (0, x). Immutable value type.
class SourceModel {
public:
    static SourceModel linear(double m, double q, double length = 1.0);
    static SourceModel delta_pair(double a, double b, double x0, double x1);

    bool is_linear() const { return std::holds_alternative<LinearSource>(v_); }
    bool is_delta_pair() const { return std::holds_alternative<DeltaPairSource>(v_); }

    const LinearSource& linear_params() const;
    const DeltaPairSource& delta_params() const;

    /// Domain length: L for linear sources, 1 for delta pairs.
    double domain_length() const;

    /// Pointwise S(x). Throws NotPointwise for delta pairs, which are handled
    /// exclusively through the primitive.
    double eval_S(double x) const;

    /// Exact closed-form primitive R(x); no quadrature. For the delta pair
    /// the plateau boundaries follow the right-continuous convention:
    /// R(x0) = a and R(x1) = a - b.
    double eval_R(double x) const;

    /// Total variation of S: the closed-form L1 norm of m x + q over
    /// [0, length] (splitting at the sign change), or a + b for a delta pair.
    double s_total_variation() const;

    /// Exact check that R >= 0 on the whole domain, evaluated at x = 0, x = L
    /// and the vertex -q/m when interior (linear), or as a >= b (delta pair).
    bool primitive_nonneg_on_domain() const;

    /// Mirror check: R <= 0 on the whole domain.
    bool primitive_nonpos_on_domain() const;

    std::string describe() const;

private:
    explicit SourceModel(LinearSource s) : v_(s) {}
    explicit SourceModel(DeltaPairSource s) : v_(s) {}

    std::variant<LinearSource, DeltaPairSource> v_;
};

/// Decide whether positivity of D is guaranteed for this source/entropy pair
/// by one of the implemented sufficient conditions. Exact sign logic for
/// linear sources; declared divergent-Phi' metadata for delta pairs.
PositivityVerdict classify_positivity(const SourceModel& src, const EntropyModel& ent);

} // namespace btn1d
