#include "fairband/bandit_instance.hpp"

#include <cmath>
#include <string>

namespace fairband {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void BanditInstance::validate() const {
    if (k < 1) throw std::invalid_argument("BanditInstance: k must be >= 1");
    if (static_cast<int>(arms.size()) != k)
        throw std::invalid_argument("BanditInstance: k != number of arm specs");
    for (const auto& spec : arms) {
        if (const auto* c = std::get_if<ClassicArm>(&spec)) {
            if (!(c->mean >= 0.0 && c->mean <= 1.0))
                throw std::invalid_argument("BanditInstance: classic mean outside [0,1]");
        } else if (const auto* l = std::get_if<LinearArm>(&spec)) {
            if (std::sqrt(dot(l->theta, l->theta)) > 1.0 + 1e-12)
                throw std::invalid_argument("BanditInstance: ||theta|| > 1");
        }
    }
}

double BanditInstance::payoff(int arm, const Context& ctx) const {
    if (arm < 0 || arm >= k) throw std::out_of_range("payoff: arm " + std::to_string(arm) + " out of range");
    const ArmSpec& spec = arms[static_cast<std::size_t>(arm)];
    if (const auto* c = std::get_if<ClassicArm>(&spec)) {
        return c->mean;
    }
    if (const auto* l = std::get_if<LinearArm>(&spec)) {
        const auto* x = std::get_if<RealContext>(&ctx);
        if (!x) throw std::invalid_argument("payoff: linear arm needs a real-vector context");
        if (x->values.size() != l->theta.size())
            throw std::invalid_argument("payoff: context dimension mismatch");
        const double raw = dot(l->theta, x->values);  // in [-1, 1]
        double v = (raw + 1.0) / 2.0;
        if (v < 0.0) v = 0.0;
        if (v > 1.0) v = 1.0;  // guards fp slack at the boundary
        return v;
    }
    if (const auto* cj = std::get_if<ConjunctionArm>(&spec)) {
        const auto* x = std::get_if<BoolContext>(&ctx);
        if (!x) throw std::invalid_argument("payoff: conjunction arm needs a boolean context");
        const std::uint32_t present = ones_mask(*x);
        return (cj->variables & ~present) == 0 ? 1.0 : 0.0;
    }
    // DialArm
    const auto* x = std::get_if<RealContext>(&ctx);
    if (!x || x->values.empty()) throw std::invalid_argument("payoff: dial arm needs a nonempty real context");
    const double v = x->values.front();
    if (v < 0.0 || v > 1.0) throw std::invalid_argument("payoff: dial value outside [0,1]");
    return v;
}

double sample_reward(const BanditInstance& instance, int arm, const Context& ctx, Rng& rng) {
    const double p = instance.payoff(arm, ctx);
    const ArmSpec& spec = instance.arms[static_cast<std::size_t>(arm)];
    // Classic arms draw Bernoulli rewards. Linear arms pay out the payoff value
    // itself: the span-based learner wants exact labels. Conjunction and dial
    // payoffs are already deterministic.
    if (std::holds_alternative<ClassicArm>(spec)) return rng.bernoulli(p) ? 1.0 : 0.0;
    return p;
}

BanditInstance make_classic_instance(const std::vector<double>& means) {
    BanditInstance inst;
    inst.k = static_cast<int>(means.size());
    for (double m : means) inst.arms.push_back(ClassicArm{m});
    inst.validate();
    return inst;
}

}  // namespace fairband
