#include "fairband/baselines.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fairband {

UcbBaseline::UcbBaseline(int k) : k_(k) {
    if (k < 1) throw std::invalid_argument("UcbBaseline: k must be >= 1");
    sums_.assign(static_cast<std::size_t>(k), 0.0);
    means_.assign(static_cast<std::size_t>(k), 0.0);
    pulls_.assign(static_cast<std::size_t>(k), 0);
}

std::pair<ArmDistribution, int> UcbBaseline::step(Rng&) {
    int chosen;
    if (t_ <= k_) {
        chosen = static_cast<int>(t_ - 1);  // round-robin warmup
    } else {
        const double lt = std::log(static_cast<double>(t_));
        chosen = 0;
        double best = -1.0;
        for (int j = 0; j < k_; ++j) {
            const auto n = static_cast<double>(pulls_[static_cast<std::size_t>(j)]);
            const double index = means_[static_cast<std::size_t>(j)] + std::sqrt(lt / (2.0 * n));
            if (index > best) {
                best = index;
                chosen = j;
            }
        }
    }
    return {ArmDistribution::point_mass(chosen, k_), chosen};
}

void UcbBaseline::update(int arm, double reward) {
    if (arm < 0 || arm >= k_) throw std::out_of_range("UcbBaseline::update: arm out of range");
    auto& n = pulls_[static_cast<std::size_t>(arm)];
    auto& s = sums_[static_cast<std::size_t>(arm)];
    n += 1;
    s += reward;
    means_[static_cast<std::size_t>(arm)] = s / static_cast<double>(n);
    t_ += 1;
}

std::pair<ArmDistribution, int> uniform_step(int k, Rng& rng) {
    if (k < 1) throw std::invalid_argument("uniform_step: k must be >= 1");
    const int chosen = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(k)));
    return {ArmDistribution::uniform(k), chosen};
}

ConjunctionBandit::ConjunctionBandit(int k, int d) : k_(k), d_(d) {
    if (k < 1) throw std::invalid_argument("ConjunctionBandit: k must be >= 1");
    if (d < 1 || d > 32) throw std::invalid_argument("ConjunctionBandit: d must be in [1,32]");
    const std::uint32_t full = (d == 32) ? 0xffffffffu : ((1u << d) - 1u);
    candidates_.assign(static_cast<std::size_t>(k), full);
    last_contexts_.assign(static_cast<std::size_t>(k), 0);
}

std::pair<ArmDistribution, int> ConjunctionBandit::step(const std::vector<Context>& contexts, Rng& rng) {
    if (static_cast<int>(contexts.size()) != k_)
        throw std::invalid_argument("ConjunctionBandit: expected one context per arm");
    last_active_.clear();
    for (int j = 0; j < k_; ++j) {
        const auto* ctx = std::get_if<BoolContext>(&contexts[static_cast<std::size_t>(j)]);
        if (!ctx || static_cast<int>(ctx->bits.size()) != d_)
            throw std::invalid_argument("ConjunctionBandit: context dimension mismatch for arm " + std::to_string(j));
        last_contexts_[static_cast<std::size_t>(j)] = ones_mask(*ctx);
        // candidate conjunction fires iff every candidate variable is 1
        if ((candidates_[static_cast<std::size_t>(j)] & ~last_contexts_[static_cast<std::size_t>(j)]) == 0)
            last_active_.push_back(j);
    }
    if (last_active_.empty()) {
        last_was_fallback_ = true;
        const int chosen = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(k_)));
        return {ArmDistribution::uniform(k_), chosen};
    }
    last_was_fallback_ = false;
    const int chosen = last_active_[rng.uniform_below(last_active_.size())];
    return {ArmDistribution::uniform_over(last_active_, k_), chosen};
}

void ConjunctionBandit::update(int arm, double reward) {
    if (arm < 0 || arm >= k_) throw std::out_of_range("ConjunctionBandit::update: arm out of range");
    if (!last_was_fallback_) return;  // no pruning when the active set was nonempty
    if (reward == 1.0) {
        const std::uint32_t zeros = ~last_contexts_[static_cast<std::size_t>(arm)];
        candidates_[static_cast<std::size_t>(arm)] &= ~zeros;
    }
}

}  // namespace fairband
