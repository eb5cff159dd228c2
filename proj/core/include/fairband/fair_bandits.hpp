#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "fairband/chaining.hpp"
#include "fairband/rng.hpp"
#include "fairband/types.hpp"

namespace fairband {

// Fair stochastic-bandit algorithm: keep a confidence interval per arm, shrink
// the active set to the component chained to the highest upper bound, and play
// uniformly over it. Removed arms are never played again.
class FairBandits {
public:
    struct Arm {
        double mean = 0.5;       // initialization convention for unpulled arms
        std::int64_t pulls = 0;
        Interval interval{0.0, 1.0};
    };

    FairBandits(int k, double delta);

    // radius = sqrt( ln((pi*tau)^2 / (3*delta)) / (2*n) )
    // Strictly decreasing in n, increasing in tau, decreasing in delta.
    static double confidence_radius(std::int64_t tau, std::int64_t pulls, double delta);

    // One round: shrink the active set to the arms chained to the current
    // top-upper-bound arm, then draw uniformly from it. Does not advance t;
    // call update() with the observed reward to finish the round.
    std::pair<ArmDistribution, int> step(Rng& rng);

    // Distribution step() would commit to, without sampling or mutating state.
    ArmDistribution peek_distribution() const;

    // The shrink half of step(): replace the active set with the chained set,
    // without sampling. Used when replaying a recorded run.
    void shrink_active();

    // Record the pulled arm's reward: running-mean update, re-centered interval
    // with radius at tau = t+1, everything else untouched bit-for-bit.
    void update(int arm, double reward);

    int k() const { return k_; }
    double delta() const { return delta_; }
    std::int64_t round() const { return t_; }  // 1-based index of the upcoming round
    const std::vector<Arm>& arms() const { return arms_; }
    const std::vector<int>& active() const { return active_; }
    bool is_active(int arm) const;

private:
    std::vector<int> chain_to_top(const std::vector<int>& candidates) const;

    int k_;
    double delta_;
    std::int64_t t_ = 1;
    std::vector<Arm> arms_;
    std::vector<int> active_;
};

}  // namespace fairband
