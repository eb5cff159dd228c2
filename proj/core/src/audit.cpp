#include "fairband/audit.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairband {

namespace {
constexpr double kProbTol = 1e-12;

std::vector<double> round_values(const RoundTrace& row, const BanditInstance& instance) {
    if (static_cast<int>(row.contexts.size()) != instance.k)
        throw std::invalid_argument("audit: trace/instance arity mismatch");
    std::vector<double> values(static_cast<std::size_t>(instance.k));
    for (int j = 0; j < instance.k; ++j)
        values[static_cast<std::size_t>(j)] = instance.payoff(j, row.contexts[static_cast<std::size_t>(j)]);
    return values;
}
}  // namespace

void audit_round(std::int64_t t, const std::vector<double>& probs, const std::vector<double>& values,
                 std::vector<Violation>& out) {
    const int k = static_cast<int>(probs.size());
    if (static_cast<int>(values.size()) != k) throw std::invalid_argument("audit_round: arity mismatch");
    for (int j = 0; j < k; ++j) {
        for (int jp = 0; jp < k; ++jp) {
            if (j == jp) continue;
            const double pj = probs[static_cast<std::size_t>(j)];
            const double pjp = probs[static_cast<std::size_t>(jp)];
            if (pj > pjp + kProbTol && values[static_cast<std::size_t>(j)] <= values[static_cast<std::size_t>(jp)]) {
                out.push_back(Violation{t, j, jp, pj, pjp, values[static_cast<std::size_t>(j)],
                                        values[static_cast<std::size_t>(jp)]});
            }
        }
    }
}

ViolationReport audit_fairness(const Trace& trace, const BanditInstance& instance) {
    ViolationReport report;
    for (const RoundTrace& row : trace.rows()) {
        if (row.distribution.arms() != instance.k)
            throw std::invalid_argument("audit: trace/instance arity mismatch");
        audit_round(row.t, row.distribution.probs, round_values(row, instance), report.violations);
    }
    report.violated = !report.violations.empty();
    report.first_violation_round = report.violated ? report.violations.front().t : 0;
    return report;
}

std::vector<double> cumulative_pseudo_regret(const Trace& trace, const BanditInstance& instance) {
    std::vector<double> out;
    out.reserve(trace.size());
    double acc = 0.0;
    for (const RoundTrace& row : trace.rows()) {
        const std::vector<double> values = round_values(row, instance);
        const double best = *std::max_element(values.begin(), values.end());
        double expected = 0.0;
        for (int j = 0; j < instance.k; ++j)
            expected += row.distribution.probs[static_cast<std::size_t>(j)] * values[static_cast<std::size_t>(j)];
        acc += best - expected;
        out.push_back(acc);
    }
    return out;
}

}  // namespace fairband
