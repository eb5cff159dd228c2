#include "fairband/fair_bandits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fairband {

FairBandits::FairBandits(int k, double delta) : k_(k), delta_(delta) {
    if (k < 1) throw std::invalid_argument("FairBandits: k must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("FairBandits: delta must be in (0,1)");
    arms_.assign(static_cast<std::size_t>(k), Arm{});
    active_.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) active_[static_cast<std::size_t>(i)] = i;
}

double FairBandits::confidence_radius(std::int64_t tau, std::int64_t pulls, double delta) {
    if (pulls < 1) throw std::invalid_argument("confidence_radius: needs at least one sample");
    if (tau < 1) throw std::invalid_argument("confidence_radius: tau must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("confidence_radius: delta must be in (0,1)");
    const double pt = std::numbers::pi * static_cast<double>(tau);
    return std::sqrt(std::log(pt * pt / (3.0 * delta)) / (2.0 * static_cast<double>(pulls)));
}

std::vector<int> FairBandits::chain_to_top(const std::vector<int>& candidates) const {
    // top = highest upper bound, lowest index on ties
    int top = candidates.front();
    for (int j : candidates)
        if (arms_[static_cast<std::size_t>(j)].interval.upper > arms_[static_cast<std::size_t>(top)].interval.upper)
            top = j;
    std::vector<Interval> intervals(static_cast<std::size_t>(k_));
    for (int j : candidates) intervals[static_cast<std::size_t>(j)] = arms_[static_cast<std::size_t>(j)].interval;
    return chained_set(candidates, intervals, top, Overlap::closed);
}

ArmDistribution FairBandits::peek_distribution() const {
    if (active_.empty()) throw std::logic_error("FairBandits: empty active set");
    return ArmDistribution::uniform_over(chain_to_top(active_), k_);
}

void FairBandits::shrink_active() {
    if (active_.empty()) throw std::logic_error("FairBandits: empty active set");
    active_ = chain_to_top(active_);
}

std::pair<ArmDistribution, int> FairBandits::step(Rng& rng) {
    shrink_active();
    ArmDistribution dist = ArmDistribution::uniform_over(active_, k_);
    const int chosen = active_[rng.uniform_below(active_.size())];
    return {std::move(dist), chosen};
}

bool FairBandits::is_active(int arm) const {
    return std::find(active_.begin(), active_.end(), arm) != active_.end();
}

void FairBandits::update(int arm, double reward) {
    if (!is_active(arm)) throw std::invalid_argument("FairBandits::update: arm " + std::to_string(arm) + " not active");
    if (!(reward >= 0.0 && reward <= 1.0)) throw std::invalid_argument("FairBandits::update: reward outside [0,1]");
    Arm& a = arms_[static_cast<std::size_t>(arm)];
    const double n_old = static_cast<double>(a.pulls);
    a.pulls += 1;
    a.mean = (a.mean * n_old + reward) / static_cast<double>(a.pulls);
    const double radius = confidence_radius(t_ + 1, a.pulls, delta_);
    a.interval = Interval{a.mean - radius, a.mean + radius};
    t_ += 1;
}

}  // namespace fairband
