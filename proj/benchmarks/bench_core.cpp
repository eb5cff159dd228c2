#include <benchmark/benchmark.h>

#include "fairband/baselines.hpp"
#include "fairband/chaining.hpp"
#include "fairband/fair_bandits.hpp"
#include "fairband/instances.hpp"
#include "fairband/kwik.hpp"

using namespace fairband;

static void BM_fair_bandits_round(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    Rng rng(1);
    const LowerBoundDraw draw = sample_lower_bound_instance(k, rng);
    FairBandits fb(k, 0.1);
    for (auto _ : state) {
        auto [dist, chosen] = fb.step(rng);
        benchmark::DoNotOptimize(dist);
        fb.update(chosen, rng.bernoulli(draw.means[static_cast<std::size_t>(chosen)]) ? 1.0 : 0.0);
    }
}
BENCHMARK(BM_fair_bandits_round)->Arg(10)->Arg(50)->Arg(200);

static void BM_chained_set(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    Rng rng(2);
    std::vector<Interval> iv;
    std::vector<int> cand;
    for (int j = 0; j < k; ++j) {
        double a = rng.uniform01(), b = rng.uniform01();
        if (a > b) std::swap(a, b);
        iv.push_back(Interval{a, b});
        cand.push_back(j);
    }
    for (auto _ : state) {
        auto out = chained_set(cand, iv, 0);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_chained_set)->Arg(10)->Arg(100);

static void BM_ucb_round(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    Rng rng(3);
    const LowerBoundDraw draw = sample_lower_bound_instance(k, rng);
    UcbBaseline ucb(k);
    for (auto _ : state) {
        auto [dist, chosen] = ucb.step(rng);
        benchmark::DoNotOptimize(dist);
        ucb.update(chosen, rng.bernoulli(draw.means[static_cast<std::size_t>(chosen)]) ? 1.0 : 0.0);
    }
}
BENCHMARK(BM_ucb_round)->Arg(10)->Arg(200);

static void BM_posterior_odds(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(posterior_odds({10, 0.4, 600, 1200}));
    }
}
BENCHMARK(BM_posterior_odds);

static void BM_enum_predict(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    ConjunctionEnumLearner learner(d);
    BoolContext ctx;
    ctx.bits.assign(static_cast<std::size_t>(d), 1);
    ctx.bits[0] = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(learner.predict(ctx));
    }
}
BENCHMARK(BM_enum_predict)->Arg(8)->Arg(12);

static void BM_linear_predict(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    Rng rng(4);
    NoiselessLinearLearner learner(d);
    const std::vector<double> theta = sample_unit_ball(d, rng, true);
    for (int i = 0; i < d; ++i) {
        const auto x = sample_unit_ball(d, rng, true);
        double y = 0.0;
        for (int j = 0; j < d; ++j) y += theta[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        if (!learner.predict(RealContext{x}).has_value()) learner.feedback(RealContext{x}, y);
    }
    const RealContext query{sample_unit_ball(d, rng, true)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(learner.predict(query));
    }
}
BENCHMARK(BM_linear_predict)->Arg(5)->Arg(20);

BENCHMARK_MAIN();
