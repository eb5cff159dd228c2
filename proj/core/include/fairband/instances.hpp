#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "fairband/bandit_instance.hpp"
#include "fairband/rng.hpp"
#include "fairband/types.hpp"

namespace fairband {

// --------------------------------------------------------------------------
// Hard-instance prior for classic bandits: arm i (1-based) has mean
// 1/3 + i/(3k) or 1/3 + (i+1)/(3k), a fair independent coin per arm. Adjacent
// arms share a mean with probability 1/4, which is what forces fair play to
// stay uniform for a long time.
// --------------------------------------------------------------------------
struct LowerBoundDraw {
    int k = 0;
    std::vector<double> means;            // index 0 = arm 1
    std::vector<std::uint8_t> high_coin;  // 1 when the +1 branch was drawn

    BanditInstance instance() const { return make_classic_instance(means); }
};

LowerBoundDraw sample_lower_bound_instance(int k, Rng& rng);

// --------------------------------------------------------------------------
// Posterior odds between the two candidate means of an arm, given s ones in m
// observations. p is the lower candidate; the other is p + 1/(3k).
//   X = (1 + 1/(3kp))^s * (1 - 1/(3k(1-p)))^(m-s)
// --------------------------------------------------------------------------
struct PosteriorQuery {
    int k = 0;
    double p = 0.0;       // lower candidate mean
    std::int64_t s = 0;   // observed ones
    std::int64_t m = 0;   // total observations
};

double log_posterior_odds(const PosteriorQuery& q);
double posterior_odds(const PosteriorQuery& q);  // exp of the above

// One of the two candidates carries posterior mass >= 1-delta, i.e.
// X >= (1-delta)/delta or X <= delta/(1-delta).
bool is_distinguished(double odds, double delta);
bool is_distinguished_log(double log_odds, double delta);

// --------------------------------------------------------------------------
// Adversarial query sequence for conjunction learners: every boolean vector
// except all-ones, in nondecreasing Hamming weight (ties by binary value),
// all labeled 0. The labels are realized by the conjunction over all d
// variables, and every prefix leaves two disagreeing consistent conjunctions,
// so a sound learner must abstain on every element.
// --------------------------------------------------------------------------
std::vector<std::pair<BoolContext, double>> adversarial_conjunction_sequence(int d);

// --------------------------------------------------------------------------
// Contextual instance generators.
// --------------------------------------------------------------------------
struct LinearInstance {
    BanditInstance instance;             // k LinearArm specs, ||theta_j|| <= 1
    int d = 0;

    // fresh per-arm contexts in the unit ball
    std::vector<Context> sample_contexts(Rng& rng) const;
};

LinearInstance make_linear_instance(int d, int k, Rng& rng);

// Vector uniform in the d-dimensional unit ball (positive orthant optional).
std::vector<double> sample_unit_ball(int d, Rng& rng, bool positive_orthant = false);

struct ConjunctionInstance {
    BanditInstance instance;  // k ConjunctionArm specs
    int d = 0;

    std::vector<Context> sample_contexts(Rng& rng) const;
    std::uint32_t true_variables(int arm) const;
};

// Random conjunction instance; each arm's true variable set has size in
// [1, max_vars] so payoff-1 rounds occur often enough to learn from.
ConjunctionInstance make_conjunction_instance(int d, int k, Rng& rng, int max_vars = 3);

}  // namespace fairband
