#include <cmath>
#include <vector>

#include "doctest.h"
#include "fairband/instances.hpp"
#include "fairband/kwik.hpp"

using namespace fairband;

namespace {

// Independent check of a span prediction: solve the least-squares system over
// the raw observed (context, label) pairs by normal equations with Gaussian
// elimination, then compare residual and value.
double least_squares_value(const std::vector<std::vector<double>>& xs, const std::vector<double>& ys,
                           const std::vector<double>& q) {
    const std::size_t d = q.size();
    std::vector<std::vector<double>> a(d, std::vector<double>(d + 1, 0.0));
    for (std::size_t r = 0; r < xs.size(); ++r) {
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) a[i][j] += xs[r][i] * xs[r][j];
            a[i][d] += xs[r][i] * ys[r];
        }
    }
    for (std::size_t i = 0; i < d; ++i) a[i][i] += 1e-12;  // ridge for stability
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < d; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col || a[col][col] == 0.0) continue;
            const double f = a[r][col] / a[col][col];
            for (std::size_t cc = col; cc <= d; ++cc) a[r][cc] -= f * a[col][cc];
        }
    }
    double value = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        if (a[i][i] != 0.0) value += q[i] * a[i][d] / a[i][i];
    return value;
}

}  // namespace

TEST_CASE("bernoulli-mean learner answers exactly at the sample-size threshold") {
    // eps = 0.5, delta = 0.1: radius crosses 0.5 between 5 and 6 samples
    BernoulliMeanLearner learner(0.5, 0.1);
    CHECK_FALSE(learner.predict(UnitContext{}).has_value());  // no data
    for (int i = 0; i < 5; ++i) learner.feedback(UnitContext{}, 1.0);
    CHECK(std::sqrt(std::log(20.0) / 10.0) > 0.5);
    CHECK_FALSE(learner.predict(UnitContext{}).has_value());
    learner.feedback(UnitContext{}, 1.0);
    CHECK(std::sqrt(std::log(20.0) / 12.0) <= 0.5);
    const Prediction p = learner.predict(UnitContext{});
    REQUIRE(p.has_value());
    CHECK(*p == doctest::Approx(1.0));
    CHECK(*p >= 1.0 - 0.5);  // deterministic stream of ones stays in [1-eps, 1]
}

TEST_CASE("bernoulli-mean learner abstention count respects its cap") {
    for (double eps : {0.1, 0.2, 0.45}) {
        for (double delta : {0.01, 0.2}) {
            BernoulliMeanLearner learner(eps, delta);
            Rng rng(7);
            KwikBudget budget{eps, delta, 0, learner.bound()};
            const double mu = 0.63;
            for (int t = 0; t < 3000; ++t) {
                const Prediction p = learner.predict(UnitContext{});
                budget.note(p);
                if (!p.has_value()) learner.feedback(UnitContext{}, rng.bernoulli(mu) ? 1.0 : 0.0);
            }
            CHECK(budget.within_bound());
            CHECK(budget.dont_know_count <= static_cast<std::int64_t>(
                      std::ceil(std::log(2.0 / delta) / (2.0 * eps * eps))));
        }
    }
}

TEST_CASE("bernoulli-mean values are eps-accurate across seeded streams") {
    const double eps = 0.2, delta = 0.1;
    int inaccurate_streams = 0;
    const int streams = 1000;
    for (int s = 0; s < streams; ++s) {
        Rng rng = Rng::substream(1000, static_cast<std::uint64_t>(s));
        const double mu = rng.uniform01();
        BernoulliMeanLearner learner(eps, delta);
        bool bad = false;
        for (int t = 0; t < 400; ++t) {
            const Prediction p = learner.predict(UnitContext{});
            if (p.has_value()) {
                if (std::abs(*p - mu) > eps) bad = true;
            } else {
                learner.feedback(UnitContext{}, rng.bernoulli(mu) ? 1.0 : 0.0);
            }
        }
        if (bad) ++inaccurate_streams;
    }
    const double slack = 3.0 * std::sqrt(delta * (1.0 - delta) / streams);
    CHECK(static_cast<double>(inaccurate_streams) / streams <= delta + slack);
}

TEST_CASE("noiseless linear learner replays observed points and abstains off-span") {
    NoiselessLinearLearner learner(2);
    CHECK_FALSE(learner.predict(RealContext{{0.5, 0.0}}).has_value());  // empty basis
    learner.feedback(RealContext{{1.0, 0.0}}, 0.3);
    const Prediction replay = learner.predict(RealContext{{1.0, 0.0}});
    REQUIRE(replay.has_value());
    CHECK(*replay == doctest::Approx(0.3));
    const Prediction scaled = learner.predict(RealContext{{0.5, 0.0}});
    REQUIRE(scaled.has_value());
    CHECK(*scaled == doctest::Approx(0.15));  // linearity
    CHECK_FALSE(learner.predict(RealContext{{0.0, 1.0}}).has_value());

    learner.feedback(RealContext{{0.0, 1.0}}, 0.4);
    CHECK(learner.rank() == 2);
    // full span: never abstains again
    const Prediction any = learner.predict(RealContext{{0.3, -0.2}});
    REQUIRE(any.has_value());
    CHECK(*any == doctest::Approx(0.3 * 0.3 + (-0.2) * 0.4));
}

TEST_CASE("noiseless linear learner is exact with at most d abstentions") {
    for (int d : {3, 5}) {
        for (int s = 0; s < 50; ++s) {
            Rng rng = Rng::substream(2000 + d, static_cast<std::uint64_t>(s));
            const std::vector<double> theta = sample_unit_ball(d, rng, /*positive_orthant=*/true);
            NoiselessLinearLearner learner(d);
            std::vector<std::vector<double>> seen;
            std::vector<double> labels;
            int bots = 0;
            for (int t = 0; t < 200; ++t) {
                const std::vector<double> x = sample_unit_ball(d, rng, /*positive_orthant=*/true);
                double truth = 0.0;
                for (int i = 0; i < d; ++i) truth += theta[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
                const Prediction p = learner.predict(RealContext{x});
                if (p.has_value()) {
                    CHECK(std::abs(*p - truth) <= 1e-9);
                    // agreement with an independent least-squares route
                    const double ls = least_squares_value(seen, labels, x);
                    CHECK(std::abs(*p - ls) <= 1e-6);
                } else {
                    ++bots;
                    learner.feedback(RealContext{x}, truth);
                    seen.push_back(x);
                    labels.push_back(truth);
                }
            }
            CHECK(bots <= d);
        }
    }
}

TEST_CASE("enum conjunction learner answers only when the version space agrees") {
    ConjunctionEnumLearner learner(2);
    // full version space on all-ones: every conjunction outputs 1
    const Prediction ones = learner.predict(BoolContext{{1, 1}});
    REQUIRE(ones.has_value());
    CHECK(*ones == 1.0);

    // feedback ((1,0), 1) removes conjunctions using variable 2
    learner.feedback(BoolContext{{1, 0}}, 1.0);
    CHECK(learner.version_space_size() == 2);
    CHECK(learner.contains(0b00));   // empty conjunction
    CHECK(learner.contains(0b01));   // {1}
    CHECK_FALSE(learner.contains(0b10));
    CHECK_FALSE(learner.contains(0b11));

    // {empty, {1}} agree on (1,1) and disagree on (0,1)
    const Prediction agree = learner.predict(BoolContext{{1, 1}});
    REQUIRE(agree.has_value());
    CHECK(*agree == 1.0);
    CHECK_FALSE(learner.predict(BoolContext{{0, 1}}).has_value());

    CHECK_THROWS_AS(ConjunctionEnumLearner(17), std::invalid_argument);
}

TEST_CASE("enum conjunction learner keeps the target and meets its cap") {
    for (int d : {4, 6}) {
        for (int s = 0; s < 30; ++s) {
            Rng rng = Rng::substream(3000 + d, static_cast<std::uint64_t>(s));
            const std::uint32_t target = static_cast<std::uint32_t>(rng.uniform_below(std::uint64_t{1} << d));
            ConjunctionEnumLearner learner(d);
            int bots = 0;
            for (int t = 0; t < 400; ++t) {
                BoolContext ctx;
                ctx.bits.resize(static_cast<std::size_t>(d));
                for (auto& b : ctx.bits) b = rng.bernoulli(0.5) ? 1 : 0;
                const double truth = ((target & ~ones_mask(ctx)) == 0) ? 1.0 : 0.0;
                const Prediction p = learner.predict(ctx);
                if (p.has_value()) {
                    CHECK(*p == truth);  // deterministic learner: always exact
                } else {
                    ++bots;
                    learner.feedback(ctx, truth);
                }
                CHECK(learner.contains(target));  // version-space soundness
            }
            CHECK(bots <= (1 << d) - 1);
        }
    }
}

TEST_CASE("lifted linear learner recovers affine arm payoffs exactly") {
    Rng rng(4100);
    const int d = 3;
    const LinearInstance li = make_linear_instance(d, 1, rng);
    LinearPayoffLearner learner(d);
    int bots = 0;
    for (int t = 0; t < 300; ++t) {
        const auto ctxs = li.sample_contexts(rng);
        const double truth = li.instance.payoff(0, ctxs[0]);
        const Prediction p = learner.predict(ctxs[0]);
        if (p.has_value()) {
            CHECK(std::abs(*p - truth) <= 1e-9);
        } else {
            ++bots;
            learner.feedback(ctxs[0], truth);
        }
    }
    CHECK(bots <= d + 1);
}
