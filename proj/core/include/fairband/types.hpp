#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fairband/rng.hpp"

namespace fairband {

// --------------------------------------------------------------------------
// Contexts. Classic (no-context) arms see UnitContext; the linear family uses
// real vectors of Euclidean norm <= 1; the conjunction family uses 0/1 bits.
// --------------------------------------------------------------------------
struct UnitContext {
    bool operator==(const UnitContext&) const = default;
};

struct RealContext {
    std::vector<double> values;
    bool operator==(const RealContext&) const = default;
};

struct BoolContext {
    std::vector<std::uint8_t> bits;  // each 0 or 1
    bool operator==(const BoolContext&) const = default;
};

using Context = std::variant<UnitContext, RealContext, BoolContext>;

inline std::size_t context_dim(const Context& ctx) {
    if (const auto* r = std::get_if<RealContext>(&ctx)) return r->values.size();
    if (const auto* b = std::get_if<BoolContext>(&ctx)) return b->bits.size();
    return 0;
}

// Bitmask of the 1-coordinates of a boolean context (dimension <= 32).
inline std::uint32_t ones_mask(const BoolContext& ctx) {
    if (ctx.bits.size() > 32) throw std::invalid_argument("ones_mask: dimension > 32");
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < ctx.bits.size(); ++i)
        if (ctx.bits[i]) m |= (1u << i);
    return m;
}

// --------------------------------------------------------------------------
// Distribution over arms as recorded in the trace (before sampling).
// --------------------------------------------------------------------------
struct ArmDistribution {
    std::vector<double> probs;

    int arms() const { return static_cast<int>(probs.size()); }

    // entries in [0,1], sum within 1e-12 of 1
    void validate() const {
        double sum = 0.0;
        for (double p : probs) {
            if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("ArmDistribution: entry outside [0,1]");
            sum += p;
        }
        if (sum < 1.0 - 1e-12 || sum > 1.0 + 1e-12)
            throw std::invalid_argument("ArmDistribution: probabilities sum to " + std::to_string(sum));
    }

    static ArmDistribution uniform(int k) {
        ArmDistribution d;
        d.probs.assign(static_cast<std::size_t>(k), 1.0 / k);
        return d;
    }

    // Uniform over a subset of arms, zero elsewhere.
    static ArmDistribution uniform_over(const std::vector<int>& support, int k) {
        if (support.empty()) throw std::invalid_argument("ArmDistribution: empty support");
        ArmDistribution d;
        d.probs.assign(static_cast<std::size_t>(k), 0.0);
        for (int j : support) d.probs.at(static_cast<std::size_t>(j)) = 1.0 / static_cast<double>(support.size());
        return d;
    }

    static ArmDistribution point_mass(int j, int k) {
        ArmDistribution d;
        d.probs.assign(static_cast<std::size_t>(k), 0.0);
        d.probs.at(static_cast<std::size_t>(j)) = 1.0;
        return d;
    }

    int sample(Rng& rng) const {
        const double u = rng.uniform01();
        double acc = 0.0;
        int last_positive = -1;
        for (int j = 0; j < arms(); ++j) {
            if (probs[static_cast<std::size_t>(j)] <= 0.0) continue;
            last_positive = j;
            acc += probs[static_cast<std::size_t>(j)];
            if (u < acc) return j;
        }
        if (last_positive < 0) throw std::logic_error("ArmDistribution: no positive entry");
        return last_positive;  // u landed in the rounding slack at the top
    }
};

// --------------------------------------------------------------------------
// Per-round trace record: everything the auditor needs. The distribution is
// the one the algorithm committed to before the arm was sampled.
// --------------------------------------------------------------------------
struct RoundTrace {
    std::int64_t t = 0;  // 1-based round index
    std::vector<Context> contexts;
    ArmDistribution distribution;
    int chosen = 0;
    double reward = 0.0;
};

class Trace {
public:
    void append(RoundTrace row) {
        if (row.t != static_cast<std::int64_t>(rows_.size()) + 1)
            throw std::invalid_argument("Trace::append: round index " + std::to_string(row.t) +
                                        " does not follow length " + std::to_string(rows_.size()));
        if (row.chosen < 0 || row.chosen >= row.distribution.arms() ||
            row.distribution.probs[static_cast<std::size_t>(row.chosen)] <= 0.0)
            throw std::invalid_argument("Trace::append: chosen arm has zero probability");
        rows_.push_back(std::move(row));
    }

    const std::vector<RoundTrace>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }
    const RoundTrace& operator[](std::size_t i) const { return rows_[i]; }

private:
    std::vector<RoundTrace> rows_;
};

}  // namespace fairband
