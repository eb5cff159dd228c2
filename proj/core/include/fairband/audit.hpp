#pragma once
#include <cmath>
#include <cstdint>
#include <vector>

#include "fairband/bandit_instance.hpp"
#include "fairband/types.hpp"

namespace fairband {

// One unfair round: arm j was favored over j' although its true value was not
// strictly higher.
struct Violation {
    std::int64_t t = 0;
    int j = 0;
    int j_prime = 0;
    double prob_j = 0.0;
    double prob_j_prime = 0.0;
    double value_j = 0.0;
    double value_j_prime = 0.0;
};

struct ViolationReport {
    std::vector<Violation> violations;
    bool violated = false;
    std::int64_t first_violation_round = 0;  // 0 when clean
};

// Ground-truth referee: flags every (t, j, j') with pi_j > pi_j' while
// f_j(x_j) <= f_j'(x_j'). Ties in value with a strict probability gap count;
// the probability comparison uses a 1e-12 tolerance.
ViolationReport audit_fairness(const Trace& trace, const BanditInstance& instance);

// Same rule on one round's raw probabilities and true values; shared with the
// stored-trace auditor, which only has these columns.
void audit_round(std::int64_t t, const std::vector<double>& probs, const std::vector<double>& values,
                 std::vector<Violation>& out);

// Partial sums of per-round expected regret, computed from the recorded
// distribution rather than the realized pull.
std::vector<double> cumulative_pseudo_regret(const Trace& trace, const BanditInstance& instance);

// Shared across fairness experiments: fraction of violating runs allowed for a
// delta-fair algorithm over n runs, with three-sigma binomial slack.
inline double violation_budget(double delta, std::int64_t n) {
    return delta + 3.0 * std::sqrt(delta * (1.0 - delta) / static_cast<double>(n));
}

}  // namespace fairband
