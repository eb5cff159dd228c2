#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "fairband/rng.hpp"
#include "fairband/types.hpp"

namespace fairband {

// Index policy without any fairness constraint: round-robin warmup, then a
// point mass on the arm maximizing mean + sqrt(ln t / (2 n)), lowest index on
// ties. The radius constant is tuned down from the textbook 2 ln t / n; the
// classic constant over-explores badly on tightly packed means.
class UcbBaseline {
public:
    explicit UcbBaseline(int k);

    std::pair<ArmDistribution, int> step(Rng& rng);
    void update(int arm, double reward);

    int k() const { return k_; }
    std::int64_t round() const { return t_; }
    const std::vector<double>& means() const { return means_; }
    const std::vector<std::int64_t>& pulls() const { return pulls_; }

private:
    int k_;
    std::int64_t t_ = 1;
    std::vector<double> sums_;
    std::vector<double> means_;
    std::vector<std::int64_t> pulls_;
};

// Trivially fair reference policy.
std::pair<ArmDistribution, int> uniform_step(int k, Rng& rng);

// Unfair conjunction-learning policy: per-arm candidate variable sets that
// shrink on payoff-1 observations; plays uniformly over the arms whose
// candidate conjunction fires, or over all arms when none does.
class ConjunctionBandit {
public:
    ConjunctionBandit(int k, int d);

    // Distribution and chosen arm for the given per-arm boolean contexts.
    std::pair<ArmDistribution, int> step(const std::vector<Context>& contexts, Rng& rng);

    // Pruning rule: only a reward of exactly 1 on an all-arms round removes
    // the variables that were 0 in the pulled arm's context.
    void update(int arm, double reward);

    const std::vector<std::uint32_t>& candidates() const { return candidates_; }
    const std::vector<int>& last_active() const { return last_active_; }
    int k() const { return k_; }
    int d() const { return d_; }

private:
    int k_;
    int d_;
    std::vector<std::uint32_t> candidates_;      // bitmask per arm
    std::vector<std::uint32_t> last_contexts_;   // ones-mask per arm from the last step
    std::vector<int> last_active_;
    bool last_was_fallback_ = false;
};

}  // namespace fairband
