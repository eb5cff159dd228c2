#include <cmath>
#include <vector>

#include "doctest.h"
#include "fairband/audit.hpp"
#include "fairband/fair_bandits.hpp"
#include "fairband/instances.hpp"

using namespace fairband;

namespace {

Trace make_trace(const std::vector<std::vector<double>>& dists, int k) {
    Trace trace;
    for (std::size_t t = 0; t < dists.size(); ++t) {
        RoundTrace row;
        row.t = static_cast<std::int64_t>(t) + 1;
        row.contexts.assign(static_cast<std::size_t>(k), UnitContext{});
        row.distribution.probs = dists[t];
        int chosen = 0;
        while (row.distribution.probs[static_cast<std::size_t>(chosen)] <= 0.0) ++chosen;
        row.chosen = chosen;
        row.reward = 0.0;
        trace.append(row);
    }
    return trace;
}

}  // namespace

TEST_CASE("favoring the weaker arm is flagged") {
    const BanditInstance inst = make_classic_instance({0.3, 0.7});
    const Trace trace = make_trace({{0.6, 0.4}}, 2);
    const ViolationReport report = audit_fairness(trace, inst);
    REQUIRE(report.violated);
    CHECK(report.first_violation_round == 1);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].j == 0);
    CHECK(report.violations[0].j_prime == 1);
    CHECK(report.violations[0].prob_j == doctest::Approx(0.6));
    CHECK(report.violations[0].value_j == doctest::Approx(0.3));
}

TEST_CASE("equal-value arms with a probability gap are violations") {
    const BanditInstance inst = make_classic_instance({0.5, 0.5});
    CHECK(audit_fairness(make_trace({{0.7, 0.3}}, 2), inst).violated);
}

TEST_CASE("uniform play never violates") {
    const BanditInstance inst = make_classic_instance({0.1, 0.4, 0.9});
    const Trace trace = make_trace(std::vector<std::vector<double>>(50, {1.0 / 3, 1.0 / 3, 1.0 / 3}), 3);
    const ViolationReport report = audit_fairness(trace, inst);
    CHECK_FALSE(report.violated);
    CHECK(report.first_violation_round == 0);
}

TEST_CASE("a long fair-bandits reference run audits clean") {
    Rng rng(11);
    const LowerBoundDraw draw = sample_lower_bound_instance(5, rng);
    FairBandits fb(5, 0.2);
    Trace trace;
    for (std::int64_t t = 1; t <= 5000; ++t) {
        auto [dist, chosen] = fb.step(rng);
        const double reward = rng.bernoulli(draw.means[static_cast<std::size_t>(chosen)]) ? 1.0 : 0.0;
        trace.append(RoundTrace{t, std::vector<Context>(5, UnitContext{}), dist, chosen, reward});
        fb.update(chosen, reward);
    }
    CHECK_FALSE(audit_fairness(trace, draw.instance()).violated);
}

TEST_CASE("pseudo-regret accumulates the expected per-round gaps") {
    // uniform play over (0.9, 0.1) for 10 rounds: 10 * (0.9 - 0.5) = 4
    const BanditInstance inst = make_classic_instance({0.9, 0.1});
    const Trace uniform = make_trace(std::vector<std::vector<double>>(10, {0.5, 0.5}), 2);
    const auto series = cumulative_pseudo_regret(uniform, inst);
    REQUIRE(series.size() == 10);
    CHECK(series.back() == doctest::Approx(4.0));
    CHECK(series.front() == doctest::Approx(0.4));

    // point mass on the best arm: zero regret
    const Trace best = make_trace(std::vector<std::vector<double>>(10, {1.0, 0.0}), 2);
    CHECK(cumulative_pseudo_regret(best, inst).back() == doctest::Approx(0.0));
}

TEST_CASE("contextual pseudo-regret uses per-round values") {
    BanditInstance inst;
    inst.k = 2;
    inst.arms.push_back(DialArm{});
    inst.arms.push_back(DialArm{});
    Trace trace;
    RoundTrace row;
    row.t = 1;
    row.contexts = {RealContext{{0.8}}, RealContext{{0.3}}};
    row.distribution.probs = {0.5, 0.5};
    row.chosen = 0;
    row.reward = 0.8;
    trace.append(row);
    const auto series = cumulative_pseudo_regret(trace, inst);
    CHECK(series.back() == doctest::Approx(0.25));  // 0.8 - (0.55)
}

TEST_CASE("regret series are nonnegative and nondecreasing") {
    Rng rng(23);
    const LowerBoundDraw draw = sample_lower_bound_instance(4, rng);
    FairBandits fb(4, 0.1);
    Trace trace;
    for (std::int64_t t = 1; t <= 500; ++t) {
        auto [dist, chosen] = fb.step(rng);
        const double reward = rng.bernoulli(draw.means[static_cast<std::size_t>(chosen)]) ? 1.0 : 0.0;
        trace.append(RoundTrace{t, std::vector<Context>(4, UnitContext{}), dist, chosen, reward});
        fb.update(chosen, reward);
    }
    const auto series = cumulative_pseudo_regret(trace, draw.instance());
    double prev = 0.0;
    for (double v : series) {
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
}

TEST_CASE("the auditor matches an independent pairwise scan on random traces") {
    Rng rng(31);
    for (int rep = 0; rep < 50; ++rep) {
        const int k = 2 + static_cast<int>(rng.uniform_below(5));
        std::vector<double> means;
        for (int j = 0; j < k; ++j) means.push_back(rng.uniform01());
        const BanditInstance inst = make_classic_instance(means);
        Trace trace;
        const int T = 1 + static_cast<int>(rng.uniform_below(100));
        for (int t = 1; t <= T; ++t) {
            // random distribution over a random support
            std::vector<double> w(static_cast<std::size_t>(k), 0.0);
            double sum = 0.0;
            for (auto& x : w) {
                x = rng.bernoulli(0.7) ? rng.uniform01() : 0.0;
                sum += x;
            }
            if (sum == 0.0) {
                w[0] = 1.0;
                sum = 1.0;
            }
            for (auto& x : w) x /= sum;
            RoundTrace row;
            row.t = t;
            row.contexts.assign(static_cast<std::size_t>(k), UnitContext{});
            row.distribution.probs = w;
            int chosen = 0;
            for (int j = 0; j < k; ++j)
                if (w[static_cast<std::size_t>(j)] > 0.0) chosen = j;
            row.chosen = chosen;
            trace.append(row);
        }
        const ViolationReport report = audit_fairness(trace, inst);

        // independent scan, written out longhand
        std::size_t expected = 0;
        bool any = false;
        for (const auto& row : trace.rows()) {
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) {
                    if (a == b) continue;
                    if (row.distribution.probs[static_cast<std::size_t>(a)] >
                            row.distribution.probs[static_cast<std::size_t>(b)] + 1e-12 &&
                        means[static_cast<std::size_t>(a)] <= means[static_cast<std::size_t>(b)]) {
                        ++expected;
                        any = true;
                    }
                }
        }
        CHECK(report.violations.size() == expected);
        CHECK(report.violated == any);
    }
}
