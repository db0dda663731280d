#include "paretogeo/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace paretogeo {

ParetoParams::ParetoParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("ParetoParams: alpha must be positive and finite, got " +
                                    std::to_string(alpha));
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("ParetoParams: beta must be positive and finite, got " +
                                    std::to_string(beta));
    }
}

SampleSet::SampleSet(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("SampleSet: empty sample");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
            throw std::invalid_argument("SampleSet: value #" + std::to_string(i + 1) +
                                        " is not a positive finite number");
        }
    }
}

SufficientStats::SufficientStats(std::size_t n_, double q1_, double q2_)
    : n(n_), q1(q1_), q2(q2_) {
    if (n < 1) throw std::invalid_argument("SufficientStats: n must be >= 1");
    if (!(q1 > 0.0) || !std::isfinite(q1)) {
        throw std::invalid_argument("SufficientStats: q1 must be positive and finite");
    }
    if (!std::isfinite(q2)) throw std::invalid_argument("SufficientStats: q2 must be finite");
    // Summing logs of equal values can land a few ulps under n log q1.
    const double floor = static_cast<double>(n) * std::log(q1);
    const double slack = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max({std::abs(q2), std::abs(floor), 1.0});
    if (q2 < floor - slack) {
        throw std::invalid_argument("SufficientStats: q2 < n log q1 is impossible for a sample");
    }
}

double SufficientStats::rate() const noexcept { return rate_at(q1); }

double SufficientStats::rate_at(double alpha) const noexcept {
    return q2 - static_cast<double>(n) * std::log(alpha);
}

bool SufficientStats::is_degenerate() const noexcept {
    const double floor = static_cast<double>(n) * std::log(q1);
    const double slack = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max({std::abs(q2), std::abs(floor), 1.0});
    return q2 - floor <= slack;
}

namespace model {

double pdf(double x, const ParetoParams& p) {
    if (!(x >= p.alpha())) return 0.0;
    return std::exp(log_likelihood(x, p));
}

double log_likelihood(double x, const ParetoParams& p) {
    if (!(x >= p.alpha())) return -std::numeric_limits<double>::infinity();
    const double b = p.beta();
    return std::log(b) + b * std::log(p.alpha()) - (b + 1.0) * std::log(x);
}

double cdf(double x, const ParetoParams& p) {
    if (!(x > p.alpha())) return 0.0;
    return -std::expm1(p.beta() * std::log(p.alpha() / x));
}

double quantile_from_uniform(double u, const ParetoParams& p) {
    if (!(u > 0.0) || u > 1.0) {
        throw std::invalid_argument("quantile_from_uniform: u must lie in (0, 1]");
    }
    return p.alpha() * std::pow(u, -1.0 / p.beta());
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) {
    for (auto& word : state_) word = splitmix64(seed);
}

std::uint64_t Xoshiro256::next() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Xoshiro256::uniform_open() noexcept {
    while (true) {
        const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        if (u > 0.0) return u;
    }
}

SampleSet sample(const ParetoParams& p, std::uint64_t seed, std::size_t n) {
    if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
    Xoshiro256 rng(seed);
    std::vector<double> xs(n);
    for (double& x : xs) x = quantile_from_uniform(rng.uniform_open(), p);
    return SampleSet(std::move(xs));
}

SufficientStats sufficient_stats(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("sufficient_stats: empty sample");
    double q1 = std::numeric_limits<double>::infinity();
    double q2 = 0.0;
    for (double x : xs) {
        if (!(x > 0.0)) throw std::invalid_argument("sufficient_stats: nonpositive observation");
        q1 = std::min(q1, x);
        q2 += std::log(x);
    }
    return SufficientStats(xs.size(), q1, q2);
}

ParetoParams mle(const SufficientStats& s) {
    if (s.is_degenerate()) {
        throw DegenerateSampleError("degenerate sample: all observations equal, beta MLE undefined");
    }
    return ParetoParams(s.q1, static_cast<double>(s.n) / s.rate());
}

double mle_beta_given_alpha(const SufficientStats& s, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("mle_beta_given_alpha: alpha must be > 0");
    if (alpha > s.q1) throw AlphaExceedsMinimumError();
    const double r = s.rate_at(alpha);
    if (!(r > 0.0)) {
        throw DegenerateSampleError("degenerate sample: q2 - n log alpha is not positive");
    }
    return static_cast<double>(s.n) / r;
}

numerics::Matrix2 negative_hessian_form(const ParetoParams& p) {
    const double a = p.alpha();
    const double b = p.beta();
    return {{{b / (a * a), -1.0 / a}, {-1.0 / a, 1.0 / (b * b)}}};
}

}  // namespace model
}  // namespace paretogeo
