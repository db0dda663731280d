#pragma once

#include "paretogeo/numerics.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace paretogeo {

/// A point (alpha, beta) of the two-parameter Pareto family: alpha is the
/// scale (lower end of the support), beta the tail index.
class ParetoParams {
public:
    ParetoParams(double alpha, double beta);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

    friend bool operator==(const ParetoParams&, const ParetoParams&) = default;

private:
    double alpha_;
    double beta_;
};

class DegenerateSampleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class AlphaExceedsMinimumError : public std::domain_error {
public:
    AlphaExceedsMinimumError()
        : std::domain_error("alpha exceeds minimum observation") {}
};

/// Nonempty set of strictly positive observations.
class SampleSet {
public:
    explicit SampleSet(std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    std::vector<double> values_;
};

/// (n, min x, sum log x). Everything Bayesian depends on data only through this.
struct SufficientStats {
    std::size_t n;
    double q1;
    double q2;

    SufficientStats(std::size_t n, double q1, double q2);

    /// q2 - n log q1; the Gamma rate of the marginal posterior of beta.
    double rate() const noexcept;
    /// q2 - n log alpha, for a conditioning value alpha <= q1.
    double rate_at(double alpha) const noexcept;
    /// True when all observations are (numerically) equal.
    bool is_degenerate() const noexcept;
};

namespace model {

double pdf(double x, const ParetoParams& p);
double log_likelihood(double x, const ParetoParams& p);
double cdf(double x, const ParetoParams& p);

/// Inverse-transform draw: alpha * u^(-1/beta) for u in (0, 1].
double quantile_from_uniform(double u, const ParetoParams& p);

/// xoshiro256** seeded through splitmix64. The stream for a given seed is
/// fixed: u = (next() >> 11) * 2^-53, with u == 0 rejected.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed);

    std::uint64_t next() noexcept;
    /// Uniform on the open interval (0, 1).
    double uniform_open() noexcept;

private:
    std::array<std::uint64_t, 4> state_;
};

SampleSet sample(const ParetoParams& p, std::uint64_t seed, std::size_t n);

SufficientStats sufficient_stats(std::span<const double> xs);
inline SufficientStats sufficient_stats(const SampleSet& xs) { return sufficient_stats(xs.values()); }

/// (q1, n / (q2 - n log q1)). Throws DegenerateSampleError when all
/// observations coincide.
ParetoParams mle(const SufficientStats& s);

/// n / (q2 - n log alpha) for a known alpha <= q1.
double mle_beta_given_alpha(const SufficientStats& s, double alpha);

/// The matrix obtained by (wrongly) taking the negative expected Hessian of
/// the log-likelihood. It is NOT the Fisher-Rao metric: the support depends on
/// alpha, so the regularity condition behind that identity fails. It is
/// indefinite or singular for every beta >= 1.
numerics::Matrix2 negative_hessian_form(const ParetoParams& p);

}  // namespace model
}  // namespace paretogeo
