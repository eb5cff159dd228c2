#include "fairband/instances.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fairband {

LowerBoundDraw sample_lower_bound_instance(int k, Rng& rng) {
    if (k < 2) throw std::invalid_argument("sample_lower_bound_instance: k must be >= 2");
    LowerBoundDraw draw;
    draw.k = k;
    draw.means.resize(static_cast<std::size_t>(k));
    draw.high_coin.resize(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) {
        const bool high = rng.bernoulli(0.5);
        const int offset = high ? i + 1 : i;
        draw.high_coin[static_cast<std::size_t>(i - 1)] = high ? 1 : 0;
        draw.means[static_cast<std::size_t>(i - 1)] =
            1.0 / 3.0 + static_cast<double>(offset) / (3.0 * static_cast<double>(k));
    }
    return draw;
}

double log_posterior_odds(const PosteriorQuery& q) {
    if (q.k < 1) throw std::invalid_argument("posterior_odds: k must be >= 1");
    if (q.s < 0 || q.m < 0 || q.s > q.m) throw std::invalid_argument("posterior_odds: need 0 <= s <= m");
    const double step = 1.0 / (3.0 * static_cast<double>(q.k));
    if (!(q.p > 0.0 && q.p + step < 1.0))
        throw std::invalid_argument("posterior_odds: degenerate candidate means");
    const double up = std::log1p(step / q.p);
    const double down = std::log1p(-step / (1.0 - q.p));
    return static_cast<double>(q.s) * up + static_cast<double>(q.m - q.s) * down;
}

double posterior_odds(const PosteriorQuery& q) { return std::exp(log_posterior_odds(q)); }

bool is_distinguished(double odds, double delta) {
    if (!(odds > 0.0)) throw std::invalid_argument("is_distinguished: odds must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("is_distinguished: delta must be in (0,1)");
    return odds >= (1.0 - delta) / delta || odds <= delta / (1.0 - delta);
}

bool is_distinguished_log(double log_odds, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("is_distinguished: delta must be in (0,1)");
    const double thr = std::log((1.0 - delta) / delta);
    return log_odds >= thr || log_odds <= -thr;
}

std::vector<std::pair<BoolContext, double>> adversarial_conjunction_sequence(int d) {
    if (d < 2 || d > 16) throw std::invalid_argument("adversarial_conjunction_sequence: d must be in [2,16]");
    const std::uint32_t all = (d == 32) ? 0xffffffffu : ((1u << d) - 1u);
    std::vector<std::uint32_t> masks;
    masks.reserve((1u << d) - 1u);
    for (std::uint32_t m = 0; m < all; ++m) masks.push_back(m);  // everything except all-ones
    std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
        const int wa = std::popcount(a), wb = std::popcount(b);
        if (wa != wb) return wa < wb;
        return a < b;
    });
    std::vector<std::pair<BoolContext, double>> out;
    out.reserve(masks.size());
    for (std::uint32_t m : masks) {
        BoolContext ctx;
        ctx.bits.resize(static_cast<std::size_t>(d));
        // first component is the most significant bit of the tie-break value
        for (int i = 0; i < d; ++i) ctx.bits[static_cast<std::size_t>(i)] = (m >> (d - 1 - i)) & 1u;
        out.emplace_back(std::move(ctx), 0.0);
    }
    return out;
}

std::vector<double> sample_unit_ball(int d, Rng& rng, bool positive_orthant) {
    if (d < 1) throw std::invalid_argument("sample_unit_ball: d must be >= 1");
    std::vector<double> v(static_cast<std::size_t>(d));
    double norm2 = 0.0;
    for (auto& x : v) {
        x = rng.normal();
        if (positive_orthant) x = std::abs(x);
        norm2 += x * x;
    }
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) return sample_unit_ball(d, rng, positive_orthant);
    const double radius = std::pow(rng.uniform01(), 1.0 / static_cast<double>(d));
    for (auto& x : v) x *= radius / norm;
    return v;
}

LinearInstance make_linear_instance(int d, int k, Rng& rng) {
    if (d < 1) throw std::invalid_argument("make_linear_instance: d must be >= 1");
    if (k < 1) throw std::invalid_argument("make_linear_instance: k must be >= 1");
    LinearInstance out;
    out.d = d;
    out.instance.k = k;
    for (int j = 0; j < k; ++j) out.instance.arms.push_back(LinearArm{sample_unit_ball(d, rng)});
    out.instance.validate();
    return out;
}

std::vector<Context> LinearInstance::sample_contexts(Rng& rng) const {
    std::vector<Context> ctxs;
    ctxs.reserve(static_cast<std::size_t>(instance.k));
    for (int j = 0; j < instance.k; ++j) ctxs.push_back(RealContext{sample_unit_ball(d, rng)});
    return ctxs;
}

ConjunctionInstance make_conjunction_instance(int d, int k, Rng& rng, int max_vars) {
    if (d < 1 || d > 32) throw std::invalid_argument("make_conjunction_instance: d must be in [1,32]");
    if (k < 1) throw std::invalid_argument("make_conjunction_instance: k must be >= 1");
    if (max_vars < 1) throw std::invalid_argument("make_conjunction_instance: max_vars must be >= 1");
    ConjunctionInstance out;
    out.d = d;
    out.instance.k = k;
    const int cap = std::min(max_vars, d);
    for (int j = 0; j < k; ++j) {
        const int size = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(cap)));
        // sample `size` distinct variables
        std::uint32_t mask = 0;
        int chosen = 0;
        while (chosen < size) {
            const int v = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(d)));
            if (!(mask & (1u << v))) {
                mask |= (1u << v);
                ++chosen;
            }
        }
        out.instance.arms.push_back(ConjunctionArm{mask});
    }
    out.instance.validate();
    return out;
}

std::vector<Context> ConjunctionInstance::sample_contexts(Rng& rng) const {
    std::vector<Context> ctxs;
    ctxs.reserve(static_cast<std::size_t>(instance.k));
    for (int j = 0; j < instance.k; ++j) {
        BoolContext ctx;
        ctx.bits.resize(static_cast<std::size_t>(d));
        for (auto& b : ctx.bits) b = rng.bernoulli(0.5) ? 1 : 0;
        ctxs.push_back(std::move(ctx));
    }
    return ctxs;
}

std::uint32_t ConjunctionInstance::true_variables(int arm) const {
    return std::get<ConjunctionArm>(instance.arms.at(static_cast<std::size_t>(arm))).variables;
}

}  // namespace fairband
