#pragma once
#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "fairband/rng.hpp"
#include "fairband/types.hpp"

namespace fairband {

// --------------------------------------------------------------------------
// Ground-truth payoff specifications. Rewards are Bernoulli around the payoff
// value in every family; conjunction payoffs are 0/1, so their rewards are
// noiseless as a byproduct.
// --------------------------------------------------------------------------
struct ClassicArm {
    double mean = 0.0;  // in [0,1]
};

// Payoff (<theta, x> + 1) / 2 for ||theta|| <= 1, ||x|| <= 1. The shift maps
// raw inner products in [-1,1] onto [0,1] so Bernoulli sampling is valid.
struct LinearArm {
    std::vector<double> theta;
};

// Conjunction over a subset of boolean variables, empty set = always 1.
struct ConjunctionArm {
    std::uint32_t variables = 0;  // bitmask over {0..d-1}
};

// Payoff = first coordinate of the context; used as the adjustable arm when
// probing a fair algorithm at every payoff level.
struct DialArm {};

using ArmSpec = std::variant<ClassicArm, LinearArm, ConjunctionArm, DialArm>;

struct BanditInstance {
    int k = 0;
    std::vector<ArmSpec> arms;

    void validate() const;

    // Expected reward of `arm` under `ctx`, always in [0,1].
    double payoff(int arm, const Context& ctx) const;
};

double dot(const std::vector<double>& a, const std::vector<double>& b);

// Bernoulli reward with mean payoff(arm, ctx). Advances the rng exactly once.
double sample_reward(const BanditInstance& instance, int arm, const Context& ctx, Rng& rng);

BanditInstance make_classic_instance(const std::vector<double>& means);

}  // namespace fairband
