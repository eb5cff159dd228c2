#include "fairband/kwik.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fairband {

namespace {

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

const RealContext& as_real(const Context& x) {
    const auto* r = std::get_if<RealContext>(&x);
    if (!r) throw std::invalid_argument("KwikLearner: expected a real-vector context");
    return *r;
}

}  // namespace

// ---------------------------------------------------------------------------
// BernoulliMeanLearner
// ---------------------------------------------------------------------------
BernoulliMeanLearner::BernoulliMeanLearner(double epsilon, double delta)
    : epsilon_(epsilon), delta_(delta) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("BernoulliMeanLearner: epsilon in (0,1]");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("BernoulliMeanLearner: delta in (0,1)");
}

double BernoulliMeanLearner::mean() const {
    if (count_ == 0) throw std::logic_error("BernoulliMeanLearner: no observations");
    return sum_ / static_cast<double>(count_);
}

Prediction BernoulliMeanLearner::predict(const Context&) const {
    if (count_ == 0) return std::nullopt;
    const double radius = std::sqrt(std::log(2.0 / delta_) / (2.0 * static_cast<double>(count_)));
    if (radius <= epsilon_) return clamp01(sum_ / static_cast<double>(count_));
    return std::nullopt;
}

void BernoulliMeanLearner::feedback(const Context&, double y) {
    if (!(y >= 0.0 && y <= 1.0)) throw std::invalid_argument("BernoulliMeanLearner: label outside [0,1]");
    sum_ += y;
    count_ += 1;
}

double BernoulliMeanLearner::bound() const {
    return std::ceil(std::log(2.0 / delta_) / (2.0 * epsilon_ * epsilon_));
}

// ---------------------------------------------------------------------------
// NoiselessLinearLearner
// ---------------------------------------------------------------------------
NoiselessLinearLearner::NoiselessLinearLearner(int d, double span_tol) : d_(d), span_tol_(span_tol) {
    if (d < 1) throw std::invalid_argument("NoiselessLinearLearner: d must be >= 1");
    if (!(span_tol > 0.0)) throw std::invalid_argument("NoiselessLinearLearner: tolerance must be positive");
}

NoiselessLinearLearner::Projection NoiselessLinearLearner::project(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != d_)
        throw std::invalid_argument("NoiselessLinearLearner: context dimension " + std::to_string(x.size()) +
                                    " != " + std::to_string(d_));
    Projection p;
    p.residual = x;
    p.coeffs.assign(basis_.size(), 0.0);
    // two Gram-Schmidt passes keep the residual orthogonal to working precision
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            double c = 0.0;
            for (int j = 0; j < d_; ++j) c += basis_[i][static_cast<std::size_t>(j)] * p.residual[static_cast<std::size_t>(j)];
            p.coeffs[i] += c;
            for (int j = 0; j < d_; ++j) p.residual[static_cast<std::size_t>(j)] -= c * basis_[i][static_cast<std::size_t>(j)];
        }
    }
    double norm2 = 0.0;
    for (double v : p.residual) norm2 += v * v;
    p.residual_norm = std::sqrt(norm2);
    return p;
}

Prediction NoiselessLinearLearner::predict(const Context& x) const {
    const auto& ctx = as_real(x);
    const Projection p = project(ctx.values);
    if (p.residual_norm > span_tol_) return std::nullopt;
    double value = 0.0;
    for (std::size_t i = 0; i < basis_.size(); ++i) value += p.coeffs[i] * basis_values_[i];
    return clamp01(value);
}

void NoiselessLinearLearner::feedback(const Context& x, double y) {
    const auto& ctx = as_real(x);
    Projection p = project(ctx.values);
    if (p.residual_norm <= span_tol_) return;  // nothing new to learn in the noiseless model
    if (rank() >= d_)
        throw std::logic_error("NoiselessLinearLearner: rank-deficient solve, residual outside a full-rank span");
    double predicted = 0.0;
    for (std::size_t i = 0; i < basis_.size(); ++i) predicted += p.coeffs[i] * basis_values_[i];
    std::vector<double> q = p.residual;
    for (double& v : q) v /= p.residual_norm;
    basis_.push_back(std::move(q));
    // value of the target along the new direction, by linearity
    basis_values_.push_back((y - predicted) / p.residual_norm);
}

// ---------------------------------------------------------------------------
// ConjunctionEnumLearner
// ---------------------------------------------------------------------------
ConjunctionEnumLearner::ConjunctionEnumLearner(int d) : d_(d) {
    if (d < 1 || d > 16) throw std::invalid_argument("ConjunctionEnumLearner: d must be in [1,16]");
    alive_.assign(std::size_t{1} << d, 1);
}

Prediction ConjunctionEnumLearner::predict(const Context& x) const {
    const auto* ctx = std::get_if<BoolContext>(&x);
    if (!ctx) throw std::invalid_argument("ConjunctionEnumLearner: expected a boolean context");
    if (static_cast<int>(ctx->bits.size()) != d_)
        throw std::invalid_argument("ConjunctionEnumLearner: context dimension mismatch");
    const std::uint32_t present = ones_mask(*ctx);
    int seen = -1;  // -1 none, 0/1 label, 2 disagreement
    for (std::uint32_t v = 0; v < alive_.size(); ++v) {
        if (!alive_[v]) continue;
        const int label = ((v & ~present) == 0) ? 1 : 0;
        if (seen == -1) seen = label;
        else if (seen != label) return std::nullopt;
    }
    if (seen == -1) throw std::logic_error("ConjunctionEnumLearner: version space is empty");
    return static_cast<double>(seen);
}

void ConjunctionEnumLearner::feedback(const Context& x, double y) {
    const auto* ctx = std::get_if<BoolContext>(&x);
    if (!ctx) throw std::invalid_argument("ConjunctionEnumLearner: expected a boolean context");
    const std::uint32_t present = ones_mask(*ctx);
    const int label = y >= 0.5 ? 1 : 0;  // conjunction payoffs are boolean
    for (std::uint32_t v = 0; v < alive_.size(); ++v) {
        if (!alive_[v]) continue;
        const int predicted = ((v & ~present) == 0) ? 1 : 0;
        if (predicted != label) alive_[v] = 0;
    }
}

double ConjunctionEnumLearner::bound() const {
    return static_cast<double>((std::int64_t{1} << d_) - 1);
}

std::int64_t ConjunctionEnumLearner::version_space_size() const {
    std::int64_t n = 0;
    for (char a : alive_) n += a;
    return n;
}

bool ConjunctionEnumLearner::contains(std::uint32_t variables) const {
    return variables < alive_.size() && alive_[variables];
}

// ---------------------------------------------------------------------------
// LinearPayoffLearner
// ---------------------------------------------------------------------------
LinearPayoffLearner::LinearPayoffLearner(int d, double span_tol) : d_(d), inner_(d + 1, span_tol) {}

Context LinearPayoffLearner::lift(const Context& x) const {
    const auto& ctx = as_real(x);
    if (static_cast<int>(ctx.values.size()) != d_)
        throw std::invalid_argument("LinearPayoffLearner: context dimension mismatch");
    RealContext lifted;
    lifted.values.reserve(static_cast<std::size_t>(d_) + 1);
    const double inv_sqrt2 = 0.7071067811865475244;
    for (double v : ctx.values) lifted.values.push_back(v * inv_sqrt2);
    lifted.values.push_back(inv_sqrt2);
    return lifted;
}

Prediction LinearPayoffLearner::predict(const Context& x) const { return inner_.predict(lift(x)); }

void LinearPayoffLearner::feedback(const Context& x, double y) { inner_.feedback(lift(x), y); }

}  // namespace fairband
