#pragma once
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "fairband/types.hpp"

namespace fairband {

// A learner either answers with a value in [0,1] or abstains (nullopt).
using Prediction = std::optional<double>;

// Tracks abstentions against a learner's declared cap m(eps, delta). The cap
// only binds on runs where every abstention is answered with feedback.
struct KwikBudget {
    double epsilon = 0.0;
    double delta = 0.0;
    std::int64_t dont_know_count = 0;
    double bound = 0.0;

    void note(const Prediction& p) {
        if (!p.has_value()) ++dont_know_count;
    }
    bool within_bound() const { return static_cast<double>(dont_know_count) <= bound; }
};

class KwikLearner {
public:
    virtual ~KwikLearner() = default;

    // Pure: repeated calls with the same context return the same prediction.
    virtual Prediction predict(const Context& x) const = 0;

    // Accepts feedback at any time, not only after an abstention; extra
    // feedback can only shrink uncertainty.
    virtual void feedback(const Context& x, double y) = 0;

    // Declared cap on answered abstentions.
    virtual double bound() const = 0;
};

// --------------------------------------------------------------------------
// Mean of a Bernoulli arm (ignores contexts). Answers once the Hoeffding
// radius sqrt(ln(2/delta)/(2n)) drops to eps; abstention cap
// ceil(ln(2/delta)/(2 eps^2)).
// --------------------------------------------------------------------------
class BernoulliMeanLearner final : public KwikLearner {
public:
    BernoulliMeanLearner(double epsilon, double delta);

    Prediction predict(const Context& x) const override;
    void feedback(const Context& x, double y) override;
    double bound() const override;

    std::int64_t count() const { return count_; }
    double mean() const;

private:
    double epsilon_;
    double delta_;
    double sum_ = 0.0;
    std::int64_t count_ = 0;
};

// --------------------------------------------------------------------------
// Noiseless linear target on the unit ball: answers exactly when the query is
// in the span of observed contexts, abstains otherwise; at most d abstentions
// since each answered one adds an independent direction.
// --------------------------------------------------------------------------
class NoiselessLinearLearner final : public KwikLearner {
public:
    explicit NoiselessLinearLearner(int d, double span_tol = 1e-9);

    Prediction predict(const Context& x) const override;
    void feedback(const Context& x, double y) override;
    double bound() const override { return static_cast<double>(d_); }

    int rank() const { return static_cast<int>(basis_.size()); }

private:
    struct Projection {
        std::vector<double> coeffs;
        double residual_norm = 0.0;
        std::vector<double> residual;
    };
    Projection project(const std::vector<double>& x) const;

    int d_;
    double span_tol_;
    std::vector<std::vector<double>> basis_;  // orthonormal directions
    std::vector<double> basis_values_;        // target value along each direction
};

// --------------------------------------------------------------------------
// Version-space learner for boolean conjunctions, d <= 16. Answers when all
// surviving conjunctions agree on the query; feedback removes every
// conjunction inconsistent with the rounded label.
// --------------------------------------------------------------------------
class ConjunctionEnumLearner final : public KwikLearner {
public:
    explicit ConjunctionEnumLearner(int d);

    Prediction predict(const Context& x) const override;
    void feedback(const Context& x, double y) override;
    double bound() const override;

    std::int64_t version_space_size() const;
    bool contains(std::uint32_t variables) const;

private:
    int d_;
    std::vector<char> alive_;  // indexed by variable-set bitmask
};

// --------------------------------------------------------------------------
// Adapter that learns the affine payoff (<theta, x> + 1)/2 of a linear arm by
// lifting contexts to ((x, 1)/sqrt(2)), where the payoff is again linear with
// parameter norm <= 1. Exact, with at most d+1 abstentions.
// --------------------------------------------------------------------------
class LinearPayoffLearner final : public KwikLearner {
public:
    explicit LinearPayoffLearner(int d, double span_tol = 1e-9);

    Prediction predict(const Context& x) const override;
    void feedback(const Context& x, double y) override;
    double bound() const override { return inner_.bound(); }

private:
    Context lift(const Context& x) const;

    int d_;
    NoiselessLinearLearner inner_;
};

}  // namespace fairband
