#include "fairband/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fairband {

// ---------------------------------------------------------------------------
// Parameter selection
// ---------------------------------------------------------------------------
KwikBoundFn KwikBoundFn::constant(double value) {
    KwikBoundFn b;
    b.m = [value](double, double) { return value; };
    b.crossover = [value](double T, double k, double) { return k * value / T; };
    return b;
}

KwikBoundFn KwikBoundFn::hoeffding() {
    KwikBoundFn b;
    b.m = [](double eps, double delta) { return std::ceil(std::log(2.0 / delta) / (2.0 * eps * eps)); };
    // continuous crossover of eps*T = k * c / eps^2 with c = ln(2/delta)/2
    b.crossover = [](double T, double k, double delta) {
        const double c = std::log(2.0 / delta) / 2.0;
        return std::cbrt(k * c / T);
    };
    return b;
}

std::pair<double, double> kwik_to_fair_params(std::int64_t T, int k, double delta, const KwikBoundFn& bound) {
    if (T < 1) throw std::invalid_argument("kwik_to_fair_params: T must be >= 1");
    if (k < 1) throw std::invalid_argument("kwik_to_fair_params: k must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("kwik_to_fair_params: delta must be in (0,1)");
    if (!bound.m) throw std::invalid_argument("kwik_to_fair_params: missing bound function");

    const double Td = static_cast<double>(T);
    const double delta_star = std::min(delta, 1.0 / Td) / (static_cast<double>(k) * Td * Td);

    std::vector<double> candidates;
    for (int i = 0; i <= 40; ++i) candidates.push_back(std::ldexp(1.0, -i));
    if (bound.crossover) {
        double x = bound.crossover(Td, static_cast<double>(k), delta_star);
        if (std::isfinite(x)) candidates.push_back(std::clamp(x, std::ldexp(1.0, -40), 1.0));
    }

    double best_value = std::numeric_limits<double>::infinity();
    double best_eps = 0.0;
    for (double eps : candidates) {
        double m_val;
        try {
            m_val = bound.m(eps, delta_star);
        } catch (...) {
            continue;  // the bound rejects this (eps, delta*)
        }
        if (!std::isfinite(m_val)) continue;
        const double value = std::max(eps * Td, static_cast<double>(k) * m_val);
        // ties resolve to the largest eps, so a flat minimum lands on the crossover
        if (value < best_value * (1.0 - 1e-12) ||
            (value <= best_value * (1.0 + 1e-12) && eps > best_eps)) {
            best_value = value;
            best_eps = eps;
        }
    }
    if (!(best_eps > 0.0)) throw std::invalid_argument("kwik_to_fair_params: bound rejected every candidate epsilon");
    return {best_eps, delta_star};
}

// ---------------------------------------------------------------------------
// KwikToFair
// ---------------------------------------------------------------------------
KwikToFair::KwikToFair(int k, double delta, std::int64_t T, const KwikBoundFn& bound, LearnerFactory factory)
    : k_(k), T_(T) {
    if (k < 1) throw std::invalid_argument("KwikToFair: k must be >= 1");
    const auto [eps_star, delta_star] = kwik_to_fair_params(T, k, delta, bound);
    eps_star_ = eps_star;
    delta_star_ = delta_star;
    learners_.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) learners_.push_back(factory(j, eps_star_, delta_star_));
    answered_dont_knows_.assign(static_cast<std::size_t>(k), 0);
}

std::pair<ArmDistribution, int> KwikToFair::step(const std::vector<Context>& contexts, Rng& rng) {
    if (static_cast<int>(contexts.size()) != k_)
        throw std::invalid_argument("KwikToFair: expected one context per arm");
    last_contexts_ = contexts;
    last_.predictions.clear();
    last_.active.clear();
    last_.any_dont_know = false;
    for (int j = 0; j < k_; ++j) {
        Prediction p = learners_[static_cast<std::size_t>(j)]->predict(contexts[static_cast<std::size_t>(j)]);
        if (!p.has_value()) last_.any_dont_know = true;
        last_.predictions.push_back(p);
    }

    if (last_.any_dont_know) {
        const int chosen = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(k_)));
        return {ArmDistribution::uniform(k_), chosen};
    }

    // all numeric: chain the open prediction intervals to the best prediction
    int top = 0;
    for (int j = 1; j < k_; ++j)
        if (*last_.predictions[static_cast<std::size_t>(j)] > *last_.predictions[static_cast<std::size_t>(top)]) top = j;
    std::vector<Interval> intervals(static_cast<std::size_t>(k_));
    std::vector<int> all(static_cast<std::size_t>(k_));
    for (int j = 0; j < k_; ++j) {
        const double s = *last_.predictions[static_cast<std::size_t>(j)];
        intervals[static_cast<std::size_t>(j)] = Interval{s - eps_star_, s + eps_star_};
        all[static_cast<std::size_t>(j)] = j;
    }
    last_.active = chained_set(all, intervals, top, Overlap::open);
    const int chosen = last_.active[rng.uniform_below(last_.active.size())];
    return {ArmDistribution::uniform_over(last_.active, k_), chosen};
}

void KwikToFair::update(int arm, double reward) {
    if (arm < 0 || arm >= k_) throw std::out_of_range("KwikToFair::update: arm out of range");
    if (last_contexts_.empty()) throw std::logic_error("KwikToFair::update: no step pending");
    // the pulled arm's learner is fed every round; abstaining learners that
    // were not pulled keep their state untouched
    if (!last_.predictions[static_cast<std::size_t>(arm)].has_value())
        answered_dont_knows_[static_cast<std::size_t>(arm)] += 1;
    learners_[static_cast<std::size_t>(arm)]->feedback(last_contexts_[static_cast<std::size_t>(arm)], reward);
    t_ += 1;
}

// ---------------------------------------------------------------------------
// Doubling wrapper
// ---------------------------------------------------------------------------
KwikToFairDoubling::KwikToFairDoubling(int k, double delta, const KwikBoundFn& bound, LearnerFactory factory)
    : k_(k), delta_(delta), bound_(bound), factory_(std::move(factory)) {}

double KwikToFairDoubling::epoch_confidence(double delta, int epoch) {
    const double pe = std::numbers::pi * static_cast<double>(epoch);
    return 6.0 * delta / (pe * pe);
}

void KwikToFairDoubling::ensure_epoch() {
    if (rounds_left_ > 0) return;
    epoch_ += 1;
    rounds_left_ = std::int64_t{1} << epoch_;
    inner_ = std::make_unique<KwikToFair>(k_, epoch_confidence(delta_, epoch_), rounds_left_, bound_, factory_);
}

std::pair<ArmDistribution, int> KwikToFairDoubling::step(const std::vector<Context>& contexts, Rng& rng) {
    ensure_epoch();
    return inner_->step(contexts, rng);
}

void KwikToFairDoubling::update(int arm, double reward) {
    inner_->update(arm, reward);
    rounds_left_ -= 1;
}

// ---------------------------------------------------------------------------
// FairBanditsReplay
// ---------------------------------------------------------------------------
ArmDistribution FairBanditsReplay::distribution(const std::vector<CommittedRound>& history,
                                                const std::vector<Context>&) const {
    // reuse the memo when `history` extends what was already replayed
    bool extends = replayed_ && history.size() >= consumed_.size();
    if (extends) {
        for (std::size_t i = 0; i < consumed_.size(); ++i) {
            if (history[i].chosen != consumed_[i].first || history[i].reward != consumed_[i].second) {
                extends = false;
                break;
            }
        }
    }
    if (!extends) {
        replayed_ = std::make_unique<FairBandits>(k_, delta_);
        consumed_.clear();
    }
    for (std::size_t i = consumed_.size(); i < history.size(); ++i) {
        // re-apply the shrink a live round would have done, then the recorded pull
        replayed_->shrink_active();
        replayed_->update(history[i].chosen, history[i].reward);
        consumed_.emplace_back(history[i].chosen, history[i].reward);
    }
    return replayed_->peek_distribution();
}

// ---------------------------------------------------------------------------
// FairToKwik
// ---------------------------------------------------------------------------
FairToKwik::FairToKwik(double eps, double delta, std::int64_t T, FairQueryAlg& alg)
    : T_(T), alg_(alg) {
    if (T < 1) throw std::invalid_argument("FairToKwik: T must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("FairToKwik: delta must be in (0,1)");
    if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("FairToKwik: eps must be in [0,1]");
    if (eps == 0.0) {
        // exact-prediction variant for boolean-valued classes
        eps_star_ = 1.0;
        delta_star_ = delta / (2.0 * static_cast<double>(T));
        levels_ = 1;
    } else {
        eps_star_ = eps / 2.0;
        delta_star_ = delta * eps_star_ / static_cast<double>(T);
        levels_ = static_cast<int>(std::ceil(1.0 / eps_star_));
    }
}

double FairToKwik::dial_value(int level) const {
    if (level < 0 || level > levels_) throw std::out_of_range("FairToKwik: dial level out of range");
    return std::min(1.0, static_cast<double>(level) * eps_star_);
}

Context FairToKwik::dial_context(int level) const { return RealContext{{dial_value(level)}}; }

Prediction FairToKwik::step(const Context& x, const std::function<double()>& label, Rng& rng) {
    if (t_ > T_) throw std::logic_error("FairToKwik: horizon exhausted");
    constexpr double kTol = 1e-12;

    // the wrapped algorithm's distribution at every dial level, history fixed
    std::vector<ArmDistribution> dists;
    dists.reserve(static_cast<std::size_t>(levels_) + 1);
    std::vector<int> tied;  // levels with p1 == p2
    for (int l = 0; l <= levels_; ++l) {
        std::vector<Context> ctxs{x, dial_context(l)};
        ArmDistribution d = alg_.distribution(history_, ctxs);
        if (d.arms() != 2) throw std::invalid_argument("FairToKwik: wrapped algorithm must have two arms");
        if (std::abs(d.probs[0] - d.probs[1]) <= kTol) tied.push_back(l);
        dists.push_back(std::move(d));
    }

    if (tied.size() >= 2) {
        // equal play at two levels: one of them forces regret, so burn a
        // committed round on a random tied level and abstain
        const int level = tied[rng.uniform_below(tied.size())];
        std::vector<Context> ctxs{x, dial_context(level)};
        const ArmDistribution& dist = dists[static_cast<std::size_t>(level)];
        const int chosen = dist.sample(rng);
        const double reward = (chosen == 0) ? label() : dial_value(level);
        history_.push_back(CommittedRound{ctxs, dist, chosen, reward, level});
        dont_knows_ += 1;
        t_ += 1;
        return std::nullopt;
    }

    // numeric prediction: the largest level where the query arm is strictly
    // favored sandwiches the target value
    int level_hat = -1;
    for (int l = 0; l <= levels_; ++l)
        if (dists[static_cast<std::size_t>(l)].probs[0] > dists[static_cast<std::size_t>(l)].probs[1] + kTol)
            level_hat = l;
    t_ += 1;
    if (level_hat < 0) return 0.0;  // query arm never favored
    return std::min(1.0, static_cast<double>(level_hat) * eps_star_);
}

}  // namespace fairband
