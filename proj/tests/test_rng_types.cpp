#include <cmath>
#include <vector>

#include "doctest.h"
#include "fairband/bandit_instance.hpp"
#include "fairband/rng.hpp"
#include "fairband/types.hpp"

using namespace fairband;

TEST_CASE("identical seeds yield identical draw sequences") {
    Rng a(12345), b(12345);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng s1 = Rng::substream(7, 3), s2 = Rng::substream(7, 3), s3 = Rng::substream(7, 4);
    bool diverged = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = s1.next_u64();
        CHECK(x == s2.next_u64());
        if (x != s3.next_u64()) diverged = true;
    }
    CHECK(diverged);
}

TEST_CASE("uniform_below is in range and covers small supports") {
    Rng rng(9);
    std::vector<int> hits(5, 0);
    for (int i = 0; i < 5000; ++i) hits[static_cast<std::size_t>(rng.uniform_below(5))] += 1;
    for (int h : hits) CHECK(h > 800);  // ~1000 each
    CHECK_THROWS_AS(rng.uniform_below(0), std::invalid_argument);
}

TEST_CASE("degenerate Bernoulli arms are deterministic") {
    Rng rng(1);
    const BanditInstance one = make_classic_instance({1.0});
    const BanditInstance zero = make_classic_instance({0.0});
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_reward(one, 0, UnitContext{}, rng) == 1.0);
        CHECK(sample_reward(zero, 0, UnitContext{}, rng) == 0.0);
    }
}

TEST_CASE("classic reward sampling concentrates at the mean") {
    // mu = 0.5 with 10^6 draws: CLT tolerance 3 sigma = 0.0015, spec asks 0.002
    Rng rng(42);
    const BanditInstance inst = make_classic_instance({0.5});
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) sum += sample_reward(inst, 0, UnitContext{}, rng);
    CHECK(std::abs(sum / n - 0.5) < 0.002);
}

TEST_CASE("reward sampling is mean-correct on the whole grid") {
    for (int g = 0; g <= 10; ++g) {
        const double mu = g / 10.0;
        Rng rng(100 + static_cast<std::uint64_t>(g));
        const BanditInstance inst = make_classic_instance({mu});
        double sum = 0.0;
        const int n = 100000;
        for (int i = 0; i < n; ++i) sum += sample_reward(inst, 0, UnitContext{}, rng);
        CHECK(std::abs(sum / n - mu) < 0.01);
    }
}

TEST_CASE("sample_reward validates its arguments") {
    Rng rng(0);
    const BanditInstance inst = make_classic_instance({0.5, 0.5});
    CHECK_THROWS_AS(sample_reward(inst, 2, UnitContext{}, rng), std::out_of_range);

    BanditInstance lin;
    lin.k = 1;
    lin.arms.push_back(LinearArm{{1.0, 0.0}});
    CHECK_THROWS_AS(lin.payoff(0, RealContext{{0.5}}), std::invalid_argument);  // dimension mismatch
    CHECK_THROWS_AS(lin.payoff(0, UnitContext{}), std::invalid_argument);       // type mismatch
}

TEST_CASE("trace appends enforce consecutive rounds") {
    Trace trace;
    auto row = [](std::int64_t t) {
        RoundTrace r;
        r.t = t;
        r.contexts = {UnitContext{}};
        r.distribution = ArmDistribution::uniform(1);
        r.chosen = 0;
        r.reward = 1.0;
        return r;
    };
    trace.append(row(1));
    CHECK(trace.size() == 1);
    for (std::int64_t t = 2; t <= 6; ++t) trace.append(row(t));
    CHECK(trace.size() == 6);
    CHECK_THROWS_AS(trace.append(row(9)), std::invalid_argument);

    // chosen arm must carry positive probability
    RoundTrace bad = row(7);
    bad.distribution = ArmDistribution::point_mass(0, 1);
    bad.chosen = 0;
    trace.append(bad);
    RoundTrace zero = row(8);
    zero.contexts = {UnitContext{}, UnitContext{}};
    zero.distribution = ArmDistribution::point_mass(0, 2);
    zero.chosen = 1;
    CHECK_THROWS_AS(trace.append(zero), std::invalid_argument);
}

TEST_CASE("arm distributions validate") {
    ArmDistribution d = ArmDistribution::uniform(3);
    d.validate();
    CHECK(d.probs[0] == doctest::Approx(1.0 / 3.0));
    ArmDistribution bad;
    bad.probs = {0.5, 0.4};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
