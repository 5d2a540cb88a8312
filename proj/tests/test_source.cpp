#include "doctest.h"

#include <cmath>
#include <random>

#include "core/errors.hpp"
#include "core/source.hpp"
#include "test_oracles.hpp"

using namespace btn1d;

TEST_CASE("linear eval_S") {
    const SourceModel src = SourceModel::linear(-1.98, 1.0);
    CHECK(src.eval_S(0.0) == 1.0);
    CHECK(src.eval_S(0.5) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(src.eval_S(1.0) == doctest::Approx(-0.98).epsilon(1e-12));
}

TEST_CASE("delta pair has no pointwise S") {
    const SourceModel src = SourceModel::delta_pair(1.0, 0.99, 0.1, 0.9);
    CHECK_THROWS_AS(src.eval_S(0.5), NotPointwise);
}

TEST_CASE("eval_R closed forms") {
    const SourceModel lin = SourceModel::linear(-1.98, 1.0);
    CHECK(lin.eval_R(0.0) == 0.0);
    CHECK(lin.eval_R(1.0) == doctest::Approx(0.01).epsilon(1e-12));

    const SourceModel del = SourceModel::delta_pair(1.0, 0.99, 0.1, 0.9);
    CHECK(del.eval_R(0.5) == 1.0);
    CHECK(del.eval_R(0.95) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(del.eval_R(0.05) == 0.0);
    // right-continuous plateau boundaries
    CHECK(del.eval_R(0.1) == 1.0);
    CHECK(del.eval_R(0.9) == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("delta primitive takes exactly the three plateau values") {
    const SourceModel del = SourceModel::delta_pair(1.4, 0.3, 0.25, 0.75);
    for (int i = 0; i <= 1000; ++i) {
        const double x = i / 1000.0;
        const double r = del.eval_R(x);
        const bool plateau = r == 0.0 || r == 1.4 || r == doctest::Approx(1.1);
        CHECK(plateau);
    }
}

TEST_CASE("linear primitive differentiates back to S") {
    const SourceModel src = SourceModel::linear(0.7, -0.3, 1.5);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(0.01, 1.49);
    const double eps = 1e-5;
    for (int i = 0; i < 200; ++i) {
        const double x = dist(rng);
        const double slope = (src.eval_R(x + eps) - src.eval_R(x - eps)) / (2.0 * eps);
        CHECK(slope == doctest::Approx(src.eval_S(x)).epsilon(1e-8));
    }
}

TEST_CASE("construction validation") {
    CHECK_THROWS_AS(SourceModel::linear(0.0, 1.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(SourceModel::delta_pair(0.0, 1.0, 0.1, 0.9), InvalidArgument);
    CHECK_THROWS_AS(SourceModel::delta_pair(1.0, 1.0, 0.9, 0.1), InvalidArgument);
    CHECK_THROWS_AS(SourceModel::delta_pair(1.0, 1.0, 0.0, 0.9), InvalidArgument);
}

TEST_CASE("primitive sign check at construction points") {
    CHECK(SourceModel::linear(-1.98, 1.0).primitive_nonneg_on_domain());
    // same slope on the longer domain dips negative past x = 1/0.99
    CHECK_FALSE(SourceModel::linear(-1.98, 1.0, 1.5).primitive_nonneg_on_domain());
    // rescaled slope keeps R >= 0 on [0, 1.5]
    CHECK(SourceModel::linear(-1.98 / 1.5, 1.0, 1.5).primitive_nonneg_on_domain());
    CHECK(SourceModel::linear(0.0, -1.0).primitive_nonpos_on_domain());
    CHECK(SourceModel::delta_pair(1.0, 0.9, 0.1, 0.9).primitive_nonneg_on_domain());
    CHECK_FALSE(SourceModel::delta_pair(0.9, 1.0, 0.1, 0.9).primitive_nonneg_on_domain());
}

TEST_CASE("total variation of S") {
    // no sign change: |integral|
    CHECK(SourceModel::linear(0.0, 1.0).s_total_variation() == doctest::Approx(1.0));
    // sign change at 1/1.98; value cross-checked against dense sampling
    const SourceModel src = SourceModel::linear(-1.98, 1.0);
    double scan = 0.0;
    const int n = 200000;
    for (int i = 1; i <= n; ++i) {
        scan += std::abs(src.eval_S((i - 0.5) / n)) / n;
    }
    CHECK(src.s_total_variation() == doctest::Approx(scan).epsilon(1e-8));
    CHECK(src.s_total_variation() == doctest::Approx(0.4950505).epsilon(1e-6));
    CHECK(SourceModel::delta_pair(1.0, 0.99, 0.1, 0.9).s_total_variation() ==
          doctest::Approx(1.99));
}

TEST_CASE("classify: single-signed sources") {
    const EntropyModel any = EntropyModel::sin_rational(2.0);
    const auto v1 = classify_positivity(SourceModel::linear(0.0, 1.0), any);
    CHECK(v1.guaranteed);
    CHECK(v1.condition == PositivityCondition::SingleSignSource);

    const auto v2 = classify_positivity(SourceModel::linear(0.0, -1.0), any);
    CHECK(v2.guaranteed);
    CHECK(v2.condition == PositivityCondition::SingleSignSource);

    const auto v3 = classify_positivity(SourceModel::linear(1.0, 0.0), any);
    CHECK(v3.guaranteed); // S = x >= 0, root at the boundary
    CHECK(v3.condition == PositivityCondition::SingleSignSource);
}

TEST_CASE("classify: sign-changing source needs more structure") {
    EntropyModel unknown = EntropyModel::sin_rational(2.0);
    unknown.phi3_sign = Phi3Sign::Unknown;
    unknown.k_upper.reset();
    const auto v = classify_positivity(SourceModel::linear(-1.98, 1.0), unknown);
    CHECK_FALSE(v.guaranteed);
    CHECK(v.condition == PositivityCondition::None);
}

TEST_CASE("classify: aligned primitive and declared convexity sign") {
    EntropyModel ent = EntropyModel::square();
    ent.phi3_sign = Phi3Sign::NonNegative;
    const auto v = classify_positivity(SourceModel::linear(-1.98, 1.0), ent);
    CHECK(v.guaranteed);
    CHECK(v.condition == PositivityCondition::AlignedPrimitiveConvexity);

    // mirrored: R <= 0 with Phi''' <= 0; S = 1.98x - 1 changes sign upward
    EntropyModel neg = EntropyModel::exp_neg();
    REQUIRE(neg.phi3_sign == Phi3Sign::NonPositive);
    const SourceModel mirrored = SourceModel::linear(1.98, -1.0);
    REQUIRE(mirrored.primitive_nonpos_on_domain());
    const auto vm = classify_positivity(mirrored, neg);
    CHECK(vm.guaranteed);
    CHECK(vm.condition == PositivityCondition::AlignedPrimitiveConvexity);
}

TEST_CASE("classify: ratio-weighted dominance, cross-checked by scanning") {
    // entropy with bounds but no usable Phi''' sign
    EntropyModel ent = EntropyModel::constant();
    ent.phi3_sign = Phi3Sign::Indefinite;

    const SourceModel src = SourceModel::linear(-1.98, 1.0);

    SUBCASE("kappa = 1 passes (R >= 0)") {
        REQUIRE(oracle::ratio_dominance_scan(src, 1.0, true));
        const auto v = classify_positivity(src, ent);
        CHECK(v.guaranteed);
        CHECK(v.condition == PositivityCondition::BoundedRatioDominance);
    }
    SUBCASE("kappa = 1.02 still passes") {
        ent.k_lower = 1.0;
        ent.k_upper = 1.02;
        REQUIRE(oracle::ratio_dominance_scan(src, 1.02, true));
        const auto v = classify_positivity(src, ent);
        CHECK(v.guaranteed);
        CHECK(v.condition == PositivityCondition::BoundedRatioDominance);
    }
    SUBCASE("kappa = 2 fails both directions") {
        ent.k_lower = 1.0;
        ent.k_upper = 2.0;
        REQUIRE_FALSE(oracle::ratio_dominance_scan(src, 2.0, true));
        REQUIRE_FALSE(oracle::ratio_dominance_scan(src, 0.5, false));
        const auto v = classify_positivity(src, ent);
        CHECK_FALSE(v.guaranteed);
    }
    SUBCASE("mirror branch: negative part dominates") {
        ent.k_lower = 1.0;
        ent.k_upper = 1.02;
        const SourceModel neg_first = SourceModel::linear(1.98, -1.0);
        REQUIRE(oracle::ratio_dominance_scan(neg_first, 1.0 / 1.02, false));
        const auto v = classify_positivity(neg_first, ent);
        CHECK(v.guaranteed);
        CHECK(v.condition == PositivityCondition::BoundedRatioDominance);
    }
}

TEST_CASE("classify: non-unit domain notes the extrapolation") {
    const auto v = classify_positivity(SourceModel::linear(-1.98 / 1.5, 1.0, 1.5),
                                       EntropyModel::fisher());
    CHECK(v.detail.find("[0, 1.5]") != std::string::npos);
}

TEST_CASE("classify: delta pair uses divergent-Phi' metadata") {
    const SourceModel src = SourceModel::delta_pair(1.0, 0.9, 0.1, 0.9);
    const auto fisher = classify_positivity(src, EntropyModel::fisher());
    CHECK(fisher.guaranteed);
    CHECK(fisher.condition == PositivityCondition::DivergentPhiPrime);

    const auto sinr = classify_positivity(src, EntropyModel::sin_rational(2.0));
    CHECK_FALSE(sinr.guaranteed);

    // sink-dominant mirror: ExpNeg has Phi'(-inf) = -inf
    const SourceModel sink = SourceModel::delta_pair(0.9, 1.0, 0.1, 0.9);
    const auto mirrored = classify_positivity(sink, EntropyModel::exp_neg());
    CHECK(mirrored.guaranteed);
    const auto fisher_sink = classify_positivity(sink, EntropyModel::fisher());
    CHECK_FALSE(fisher_sink.guaranteed);
}
