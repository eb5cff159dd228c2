#pragma once
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "fairband/chaining.hpp"
#include "fairband/fair_bandits.hpp"
#include "fairband/kwik.hpp"
#include "fairband/rng.hpp"
#include "fairband/types.hpp"

namespace fairband {

// --------------------------------------------------------------------------
// KwikToFair: one learner per arm. When every learner answers, play uniformly
// over the arms whose prediction intervals (s - eps*, s + eps*) chain to the
// best prediction; when any abstains, play uniformly over all arms. Only the
// pulled arm's learner sees feedback, every round.
// --------------------------------------------------------------------------

// Declared abstention cap of a learner family, plus (optionally) the exact
// epsilon solving eps*T = k*m(eps, delta) when a closed form exists.
struct KwikBoundFn {
    std::function<double(double eps, double delta)> m;
    std::function<double(double T, double k, double delta)> crossover;  // may be empty

    static KwikBoundFn constant(double value);               // span learners: m = value
    static KwikBoundFn hoeffding();                          // m = ceil(ln(2/delta)/(2 eps^2))
};

// delta* = min(delta, 1/T) / (k T^2); eps* minimizes max(eps*T, k*m(eps, delta*))
// over the geometric grid {2^-i} in (0,1] plus the exact crossover. Among
// candidates tied at the minimum, the largest eps wins, so a flat stretch
// resolves to the crossover point.
std::pair<double, double> kwik_to_fair_params(std::int64_t T, int k, double delta, const KwikBoundFn& bound);

using LearnerFactory = std::function<std::unique_ptr<KwikLearner>(int arm, double eps, double delta)>;

class KwikToFair {
public:
    KwikToFair(int k, double delta, std::int64_t T, const KwikBoundFn& bound, LearnerFactory factory);

    struct RoundInfo {
        std::vector<Prediction> predictions;
        bool any_dont_know = false;
        std::vector<int> active;  // empty on abstention rounds
    };

    std::pair<ArmDistribution, int> step(const std::vector<Context>& contexts, Rng& rng);
    void update(int arm, double reward);  // routes feedback to the pulled arm's learner

    double epsilon_star() const { return eps_star_; }
    double delta_star() const { return delta_star_; }
    std::int64_t round() const { return t_; }
    std::int64_t horizon() const { return T_; }
    const RoundInfo& last_round() const { return last_; }
    // abstentions that were answered with feedback, per arm
    const std::vector<std::int64_t>& answered_dont_knows() const { return answered_dont_knows_; }

private:
    int k_;
    std::int64_t T_;
    double eps_star_ = 0.0;
    double delta_star_ = 0.0;
    std::int64_t t_ = 1;
    std::vector<std::unique_ptr<KwikLearner>> learners_;
    std::vector<Context> last_contexts_;
    RoundInfo last_;
    std::vector<std::int64_t> answered_dont_knows_;
};

// Anytime wrapper: epoch E = 1, 2, ... runs a fresh KwikToFair with horizon
// 2^E and confidence 6*delta/(pi*E)^2; the epoch confidences sum to delta.
class KwikToFairDoubling {
public:
    KwikToFairDoubling(int k, double delta, const KwikBoundFn& bound, LearnerFactory factory);

    std::pair<ArmDistribution, int> step(const std::vector<Context>& contexts, Rng& rng);
    void update(int arm, double reward);

    int epoch() const { return epoch_; }
    static double epoch_confidence(double delta, int epoch);
    const KwikToFair& inner() const { return *inner_; }

private:
    void ensure_epoch();

    int k_;
    double delta_;
    KwikBoundFn bound_;
    LearnerFactory factory_;
    int epoch_ = 0;
    std::int64_t rounds_left_ = 0;
    std::unique_ptr<KwikToFair> inner_;
};

// --------------------------------------------------------------------------
// FairToKwik: turn a fair two-arm bandit algorithm into a KWIK learner by
// probing its arm distribution against a dial arm that can take every payoff
// level l*eps*. Queries never mutate the algorithm; its history advances only
// on abstention rounds.
// --------------------------------------------------------------------------

struct CommittedRound {
    std::vector<Context> contexts;  // (query arm, dial arm)
    ArmDistribution distribution;   // the wrapped algorithm's distribution when committed
    int chosen = 0;
    double reward = 0.0;
    int level = 0;                  // dial level played
};

// A fair algorithm exposed as a pure function of (history, contexts).
class FairQueryAlg {
public:
    virtual ~FairQueryAlg() = default;
    virtual ArmDistribution distribution(const std::vector<CommittedRound>& history,
                                         const std::vector<Context>& contexts) const = 0;
};

// Classic fair-bandits lifted to the two-arm contextual instance: replays the
// committed (arm, reward) pairs through the interval/chaining updates and
// returns the distribution the replayed state would play now. Contexts are
// ignored, which is exactly the classic specialization.
class FairBanditsReplay final : public FairQueryAlg {
public:
    FairBanditsReplay(int k, double delta) : k_(k), delta_(delta) {}

    ArmDistribution distribution(const std::vector<CommittedRound>& history,
                                 const std::vector<Context>& contexts) const override;

private:
    int k_;
    double delta_;
    // incremental replay memo; rebuilt whenever the history is not an
    // extension of what was already consumed
    mutable std::unique_ptr<FairBandits> replayed_;
    mutable std::vector<std::pair<int, double>> consumed_;
};

class FairToKwik {
public:
    // eps = 0 selects the exact-prediction variant: eps* = 1, levels {0, 1},
    // delta* = delta/(2T). Otherwise eps* = eps/2, delta* = delta*eps*/T and
    // the dial levels are l*eps* for l = 0..ceil(1/eps*).
    FairToKwik(double eps, double delta, std::int64_t T, FairQueryAlg& alg);

    // One protocol round: x is the query, label() supplies this round's
    // feedback y with E[y] = f*(x), consumed only when the result is an
    // abstention and the wrapped algorithm pulls the query arm.
    Prediction step(const Context& x, const std::function<double()>& label, Rng& rng);

    double epsilon_star() const { return eps_star_; }
    double delta_star() const { return delta_star_; }
    int levels() const { return levels_; }
    double dial_value(int level) const;
    Context dial_context(int level) const;
    std::int64_t dont_know_count() const { return dont_knows_; }
    const std::vector<CommittedRound>& committed() const { return history_; }

private:
    double eps_star_;
    double delta_star_;
    std::int64_t T_;
    int levels_;  // highest dial level; valid levels are 0..levels_
    FairQueryAlg& alg_;
    std::vector<CommittedRound> history_;
    std::int64_t t_ = 1;
    std::int64_t dont_knows_ = 0;
};

}  // namespace fairband
