#include <cmath>
#include <vector>

#include "doctest.h"
#include "fairband/instances.hpp"
#include "fairband/kwik.hpp"

using namespace fairband;

TEST_CASE("prior draws take the two values of each arm with equal frequency") {
    Rng rng(31);
    const int k = 3;
    int low = 0, high = 0, adjacent_equal = 0;
    const int n = 10000;
    for (int rep = 0; rep < n; ++rep) {
        const LowerBoundDraw draw = sample_lower_bound_instance(k, rng);
        // arm 1: means 4/9 or 5/9
        if (draw.means[0] == doctest::Approx(4.0 / 9.0)) ++low;
        else if (draw.means[0] == doctest::Approx(5.0 / 9.0)) ++high;
        for (double mu : draw.means) {
            CHECK(mu > 1.0 / 3.0);
            CHECK(mu <= 2.0 / 3.0 + 1.0 / (3.0 * k) + 1e-15);
        }
        if (draw.means[0] == draw.means[1]) ++adjacent_equal;
    }
    CHECK(low + high == n);
    CHECK(std::abs(static_cast<double>(low) / n - 0.5) < 0.02);
    // high coin of arm i meets low coin of arm i+1: probability 1/4
    CHECK(std::abs(static_cast<double>(adjacent_equal) / n - 0.25) < 0.02);
    CHECK_THROWS_AS(sample_lower_bound_instance(1, rng), std::invalid_argument);
}

TEST_CASE("posterior odds match direct evaluation") {
    CHECK(posterior_odds({5, 0.4, 0, 0}) == doctest::Approx(1.0));  // no evidence
    // k=1, p=1/3, one success: (1 + 1/(3*1*(1/3)))^1 = 2
    CHECK(posterior_odds({1, 1.0 / 3.0, 1, 1}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(posterior_odds({1, 0.9, 0, 1}), std::invalid_argument);  // p + 1/(3k) >= 1
}

TEST_CASE("posterior odds equal the brute-force Bayes ratio for all m <= 12") {
    for (int k : {2, 5, 10}) {
        const double step = 1.0 / (3.0 * k);
        const double p = 1.0 / 3.0 + step;  // arm 1's low candidate
        for (int m = 0; m <= 12; ++m) {
            for (int s = 0; s <= m; ++s) {
                // two-point prior 1/2-1/2; posterior ratio of the high candidate
                const double like_high = std::pow(p + step, s) * std::pow(1.0 - p - step, m - s);
                const double like_low = std::pow(p, s) * std::pow(1.0 - p, m - s);
                const double oracle = like_high / like_low;
                const double x = posterior_odds({k, p, s, m});
                CHECK(std::abs(x - oracle) <= 1e-12 * std::abs(oracle));
            }
        }
    }
}

TEST_CASE("distinguishing thresholds") {
    CHECK_FALSE(is_distinguished(1.0, 0.1));
    CHECK(is_distinguished(19.0, 0.05));   // boundary (1-d)/d = 19
    CHECK(is_distinguished(0.01, 0.1));    // low side, 0.01 <= 1/9
    CHECK_FALSE(is_distinguished(8.9, 0.1));
    CHECK(is_distinguished_log(std::log(19.0), 0.05));
    CHECK_FALSE(is_distinguished_log(0.0, 0.1));
}

TEST_CASE("adversarial conjunction sequence enumerates everything below all-ones") {
    const auto seq2 = adversarial_conjunction_sequence(2);
    REQUIRE(seq2.size() == 3);
    CHECK(seq2[0].first.bits == std::vector<std::uint8_t>{0, 0});
    CHECK(seq2[1].first.bits == std::vector<std::uint8_t>{0, 1});  // weight-1 ties by binary value: 01 < 10
    CHECK(seq2[2].first.bits == std::vector<std::uint8_t>{1, 0});
    for (const auto& [ctx, label] : seq2) CHECK(label == 0.0);

    for (int d : {3, 5, 8}) {
        const auto seq = adversarial_conjunction_sequence(d);
        CHECK(seq.size() == (std::size_t{1} << d) - 1);
        // labels are realized by the all-variables conjunction
        const std::uint32_t all = (1u << d) - 1u;
        for (const auto& [ctx, label] : seq) {
            CHECK(((all & ~ones_mask(ctx)) == 0 ? 1.0 : 0.0) == label);
        }
    }
    CHECK_THROWS_AS(adversarial_conjunction_sequence(1), std::invalid_argument);
    CHECK_THROWS_AS(adversarial_conjunction_sequence(17), std::invalid_argument);
}

TEST_CASE("the enumeration learner abstains on every adversarial element") {
    for (int d : {3, 4, 6}) {
        ConjunctionEnumLearner learner(d);
        std::int64_t bots = 0;
        for (const auto& [ctx, label] : adversarial_conjunction_sequence(d)) {
            const Prediction p = learner.predict(ctx);
            if (!p.has_value()) {
                ++bots;
                learner.feedback(ctx, label);
            }
        }
        CHECK(bots == (std::int64_t{1} << d) - 1);
    }
}

TEST_CASE("linear instances map inner products into [0,1]") {
    Rng rng(77);
    const LinearInstance li = make_linear_instance(3, 3, rng);
    for (int rep = 0; rep < 1000; ++rep) {
        const auto ctxs = li.sample_contexts(rng);
        for (int j = 0; j < 3; ++j) {
            const double v = li.instance.payoff(j, ctxs[static_cast<std::size_t>(j)]);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            // independent dot-product oracle
            const auto& theta = std::get<LinearArm>(li.instance.arms[static_cast<std::size_t>(j)]).theta;
            const auto& x = std::get<RealContext>(ctxs[static_cast<std::size_t>(j)]).values;
            double raw = 0.0;
            for (std::size_t i = 0; i < theta.size(); ++i) raw += theta[i] * x[i];
            CHECK(std::abs(v - (raw + 1.0) / 2.0) < 1e-12);
        }
    }
    // theta = e1, x = e1: raw payoff 1 before rescaling
    BanditInstance inst;
    inst.k = 1;
    inst.arms.push_back(LinearArm{{1.0, 0.0, 0.0}});
    CHECK(inst.payoff(0, RealContext{{1.0, 0.0, 0.0}}) == doctest::Approx(1.0));  // (1+1)/2
}

TEST_CASE("unit ball samples stay inside the ball") {
    Rng rng(5);
    for (int rep = 0; rep < 500; ++rep) {
        const auto v = sample_unit_ball(4, rng);
        double n2 = 0.0;
        for (double x : v) n2 += x * x;
        CHECK(n2 <= 1.0 + 1e-12);
    }
    for (int rep = 0; rep < 100; ++rep) {
        const auto v = sample_unit_ball(3, rng, /*positive_orthant=*/true);
        for (double x : v) CHECK(x >= 0.0);
    }
}

TEST_CASE("conjunction instances have nonempty variable sets and boolean payoffs") {
    Rng rng(6);
    const ConjunctionInstance ci = make_conjunction_instance(8, 4, rng);
    for (int j = 0; j < 4; ++j) CHECK(ci.true_variables(j) != 0);
    const auto ctxs = ci.sample_contexts(rng);
    for (int j = 0; j < 4; ++j) {
        const double v = ci.instance.payoff(j, ctxs[static_cast<std::size_t>(j)]);
        CHECK((v == 0.0 || v == 1.0));
    }
}
