#include "paretogeo/bayes.hpp"

#include "paretogeo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace paretogeo::bayes {

using numerics::QuadratureResult;

namespace {

// The alpha -> 0 tail is cut where the posterior CDF falls below this.
constexpr double kTailMass = 1e-14;
// Largest log(alpha_hat / alpha) we integrate over before switching to the
// closed-form tail; keeps alpha_hat * e^-u a normal double.
constexpr double kMaxLogDepth = 700.0;

void require_nondegenerate(const SufficientStats& s) {
    if (s.is_degenerate()) {
        throw DegenerateSampleError(
            "degenerate sample: q2 = n log q1, the posterior is improper");
    }
}

double as_real(std::size_t n) { return static_cast<double>(n); }

double beta_hat(const SufficientStats& s) { return as_real(s.n) / s.rate(); }

void require_alpha_in_support(const SufficientStats& s, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
    if (alpha > s.q1) throw AlphaExceedsMinimumError();
}

void require_positive_beta(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("beta must be positive and finite");
    }
}

// Depth L = log(alpha_hat / eps) at which the marginal alpha CDF equals kTailMass.
double tail_cut_depth(const SufficientStats& s) {
    const double n = as_real(s.n);
    const double depth = std::expm1(-std::log(kTailMass) / n) / beta_hat(s);
    return std::min(depth, kMaxLogDepth);
}

QuadratureResult combine(QuadratureResult a, const QuadratureResult& b) {
    a.value += b.value;
    a.abs_error_estimate += b.abs_error_estimate;
    a.evaluations += b.evaluations;
    return a;
}

}  // namespace

GammaPosterior::GammaPosterior(double shape, double rate) : shape_(shape), rate_(rate) {
    if (!(shape > 0.0) || !(rate > 0.0) || !std::isfinite(shape) || !std::isfinite(rate)) {
        throw std::invalid_argument("GammaPosterior: shape and rate must be positive and finite");
    }
}

double GammaPosterior::pdf(double beta) const { return numerics::gamma_pdf(beta, shape_, rate_); }

double GammaPosterior::cdf(double beta) const { return numerics::gamma_cdf(beta, shape_, rate_); }

double GammaPosterior::median() const {
    const double hi = (shape_ + 40.0 * std::sqrt(shape_) + 40.0) / rate_;
    const double tol = numerics::kDefaultRootTolerance * mean();
    return numerics::bisect_root([this](double b) { return cdf(b) - 0.5; }, 0.0, hi, tol);
}

std::string_view to_string(Estimator e) {
    switch (e) {
        case Estimator::mle: return "mle";
        case Estimator::posterior_median: return "posterior_median";
        case Estimator::posterior_mean: return "posterior_mean";
    }
    return "unknown";
}

std::string_view to_string(Conditioning c) {
    switch (c) {
        case Conditioning::none: return "none";
        case Conditioning::known_alpha: return "known_alpha";
        case Conditioning::known_beta: return "known_beta";
    }
    return "unknown";
}

std::optional<Estimator> parse_estimator(std::string_view s) {
    for (Estimator e : {Estimator::mle, Estimator::posterior_median, Estimator::posterior_mean}) {
        if (to_string(e) == s) return e;
    }
    return std::nullopt;
}

std::optional<Conditioning> parse_conditioning(std::string_view s) {
    for (Conditioning c : {Conditioning::none, Conditioning::known_alpha, Conditioning::known_beta}) {
        if (to_string(c) == s) return c;
    }
    return std::nullopt;
}

double jeffreys_prior_unnorm(const ParetoParams& p) { return 1.0 / p.alpha(); }

double joint_posterior_pdf(const ParetoParams& p, const SufficientStats& s) {
    require_nondegenerate(s);
    if (p.alpha() > s.q1) return 0.0;
    const double n = as_real(s.n);
    const double a = p.alpha();
    const double b = p.beta();
    const double log_density = std::log(n) + n * std::log(s.rate()) - numerics::log_gamma(n) +
                               n * std::log(b) + (n * b - 1.0) * std::log(a) - s.q2 * b;
    return std::exp(log_density);
}

double marginal_alpha_pdf(double alpha, const SufficientStats& s) {
    require_nondegenerate(s);
    if (!(alpha > 0.0) || alpha > s.q1) return 0.0;
    const double n = as_real(s.n);
    const double log_density = 2.0 * std::log(n) + n * std::log(s.rate()) - std::log(alpha) -
                               (n + 1.0) * std::log(s.rate_at(alpha));
    return std::exp(log_density);
}

double marginal_alpha_cdf(double t, const SufficientStats& s) {
    require_nondegenerate(s);
    if (!(t > 0.0)) return 0.0;
    if (t >= s.q1) return 1.0;
    const double n = as_real(s.n);
    const double value = std::exp(n * (std::log(s.rate()) - std::log(s.rate_at(t))));
    return std::clamp(value, 0.0, 1.0);
}

double marginal_alpha_cdf_mle_form(double t, const SufficientStats& s) {
    require_nondegenerate(s);
    if (!(t > 0.0)) return 0.0;
    if (t >= s.q1) return 1.0;
    const double n = as_real(s.n);
    const double value = std::exp(-n * std::log1p(beta_hat(s) * std::log(s.q1 / t)));
    return std::clamp(value, 0.0, 1.0);
}

GammaPosterior marginal_beta_posterior(const SufficientStats& s) {
    require_nondegenerate(s);
    return GammaPosterior(as_real(s.n), s.rate());
}

double conditional_alpha_pdf(double alpha, const SufficientStats& s, double beta) {
    require_positive_beta(beta);
    if (!(alpha > 0.0) || alpha > s.q1) return 0.0;
    const double nb = as_real(s.n) * beta;
    return std::exp(std::log(nb) + (nb - 1.0) * std::log(alpha) - nb * std::log(s.q1));
}

double conditional_alpha_cdf(double t, const SufficientStats& s, double beta) {
    require_positive_beta(beta);
    if (!(t > 0.0)) return 0.0;
    if (t >= s.q1) return 1.0;
    return std::exp(as_real(s.n) * beta * std::log(t / s.q1));
}

GammaPosterior conditional_beta_posterior(const SufficientStats& s, double alpha) {
    require_alpha_in_support(s, alpha);
    const double rate = s.rate_at(alpha);
    if (!(rate > 0.0)) {
        throw DegenerateSampleError("degenerate sample: q2 - n log alpha is not positive");
    }
    return GammaPosterior(as_real(s.n) + 1.0, rate);
}

double posterior_median_alpha(const SufficientStats& s) {
    require_nondegenerate(s);
    // 1 - 2^(1/n) = -expm1(log 2 / n)
    const double shift = -std::expm1(std::numbers::ln2 / as_real(s.n));
    return s.q1 * std::exp(shift / beta_hat(s));
}

double posterior_median_alpha_given_beta(const SufficientStats& s, double beta) {
    require_positive_beta(beta);
    return std::exp2(-1.0 / (as_real(s.n) * beta)) * s.q1;
}

double posterior_median_beta(const SufficientStats& s) { return marginal_beta_posterior(s).median(); }

double posterior_mean_alpha(const SufficientStats& s, double tol) {
    require_nondegenerate(s);
    const double a_hat = s.q1;
    const auto cdf_integrand = [&](double u) {
        const double t = a_hat * std::exp(-u);
        if (!(t > 0.0)) return 0.0;
        return marginal_alpha_cdf(t, s) * t;
    };
    const QuadratureResult area = numerics::quad_semi_infinite(cdf_integrand, 0.0, tol);
    return a_hat - area.value;
}

MeanBounds posterior_mean_alpha_bounds(const SufficientStats& s) {
    require_nondegenerate(s);
    const double n = as_real(s.n);
    const double b = beta_hat(s);
    const double a_hat = s.q1;
    const double lo = s.n > 1 ? ((n - 1.0) * b - 1.0) / ((n - 1.0) * b) * a_hat
                              : -std::numeric_limits<double>::infinity();
    const double hi = n * b / (n * b + 1.0) * a_hat;
    return {lo, hi};
}

double posterior_mean_alpha_given_beta(const SufficientStats& s, double beta) {
    require_positive_beta(beta);
    const double nb = as_real(s.n) * beta;
    return nb / (nb + 1.0) * s.q1;
}

double predictive_pdf(double x_new, const SufficientStats& s) {
    require_nondegenerate(s);
    if (!(x_new > 0.0)) return 0.0;
    const double n = as_real(s.n);
    const double bracket = s.q2 + std::log(x_new) - (n + 1.0) * std::log(std::min(x_new, s.q1));
    const double log_density = 2.0 * std::log(n) + n * std::log(s.rate()) - std::log(n + 1.0) -
                               std::log(x_new) - (n + 1.0) * std::log(bracket);
    return std::exp(log_density);
}

double predictive_pdf_given_alpha(double x_new, const SufficientStats& s, double alpha) {
    require_alpha_in_support(s, alpha);
    if (x_new < alpha) return 0.0;
    const double n = as_real(s.n);
    const double rate = s.rate_at(alpha);
    if (!(rate > 0.0)) {
        throw DegenerateSampleError("degenerate sample: q2 - n log alpha is not positive");
    }
    const double bracket = s.q2 + std::log(x_new) - (n + 1.0) * std::log(alpha);
    const double log_density = std::log(n + 1.0) + (n + 1.0) * std::log(rate) - std::log(x_new) -
                               (n + 2.0) * std::log(bracket);
    return std::exp(log_density);
}

double predictive_pdf_given_beta(double x_new, const SufficientStats& s, double beta) {
    require_positive_beta(beta);
    if (!(x_new > 0.0)) return 0.0;
    const double n = as_real(s.n);
    const double nb = n * beta;
    const double log_front = std::log(n / (n + 1.0)) + std::log(beta);
    if (x_new < s.q1) {
        return std::exp(log_front - nb * std::log(s.q1) + (nb - 1.0) * std::log(x_new));
    }
    return std::exp(log_front + beta * std::log(s.q1) - (beta + 1.0) * std::log(x_new));
}

std::vector<PosteriorSummary> estimator_rows(const SufficientStats& s, Conditioning conditioning,
                                             double known_value, double tol) {
    require_nondegenerate(s);
    switch (conditioning) {
        case Conditioning::none: {
            const ParetoParams hat = model::mle(s);
            return {
                {Estimator::mle, conditioning, hat.alpha(), hat.beta(), std::nullopt},
                {Estimator::posterior_median, conditioning, posterior_median_alpha(s),
                 posterior_median_beta(s), std::nullopt},
                {Estimator::posterior_mean, conditioning, posterior_mean_alpha(s, tol),
                 marginal_beta_posterior(s).mean(), std::nullopt},
            };
        }
        case Conditioning::known_alpha: {
            const double a = known_value;
            const GammaPosterior post = conditional_beta_posterior(s, a);
            return {
                {Estimator::mle, conditioning, a, model::mle_beta_given_alpha(s, a), std::nullopt},
                {Estimator::posterior_median, conditioning, a, post.median(), std::nullopt},
                {Estimator::posterior_mean, conditioning, a, post.mean(), std::nullopt},
            };
        }
        case Conditioning::known_beta: {
            const double b = known_value;
            require_positive_beta(b);
            return {
                {Estimator::mle, conditioning, s.q1, b, std::nullopt},
                {Estimator::posterior_median, conditioning, posterior_median_alpha_given_beta(s, b),
                 b, std::nullopt},
                {Estimator::posterior_mean, conditioning, posterior_mean_alpha_given_beta(s, b), b,
                 std::nullopt},
            };
        }
    }
    throw std::invalid_argument("estimator_rows: unknown conditioning");
}

void attach_distances(std::vector<PosteriorSummary>& rows, const ParetoParams& reference) {
    for (PosteriorSummary& row : rows) {
        row.distance_to_reference =
            geometry::distance(reference, ParetoParams(row.alpha_hat, row.beta_hat));
    }
}

std::vector<PosteriorSummary> table2_summary(const SufficientStats& s,
                                             const ParetoParams& reference, double tol) {
    std::vector<PosteriorSummary> rows = estimator_rows(s, Conditioning::none, 0.0, tol);
    for (auto [c, v] : {std::pair{Conditioning::known_alpha, reference.alpha()},
                        std::pair{Conditioning::known_beta, reference.beta()}}) {
        const auto block = estimator_rows(s, c, v, tol);
        rows.insert(rows.end(), block.begin(), block.end());
    }
    attach_distances(rows, reference);
    return rows;
}

QuadratureResult joint_mass(const SufficientStats& s, double tol) {
    require_nondegenerate(s);
    const double q1 = s.q1;
    // Inner integral over alpha in u = log(q1 / alpha), outer over beta.
    const auto alpha_marginal_at = [&](double beta) {
        if (!(beta > 0.0)) return 0.0;
        const auto inner = [&](double u) {
            const double alpha = q1 * std::exp(-u);
            if (!(alpha > 0.0)) return 0.0;
            return joint_posterior_pdf(ParetoParams(alpha, beta), s) * alpha;
        };
        return numerics::quad_semi_infinite(inner, 0.0, 0.1 * tol).value;
    };
    return numerics::quad_semi_infinite(alpha_marginal_at, 0.0, tol);
}

QuadratureResult marginal_alpha_mass(const SufficientStats& s, double tol) {
    require_nondegenerate(s);
    const double q1 = s.q1;
    const double depth = tail_cut_depth(s);
    const auto integrand = [&](double u) {
        const double alpha = q1 * std::exp(-u);
        return marginal_alpha_pdf(alpha, s) * alpha;
    };
    QuadratureResult body = numerics::quad_adaptive(integrand, 0.0, depth, tol);
    body.value += marginal_alpha_cdf(q1 * std::exp(-depth), s);
    return body;
}

QuadratureResult gamma_mass(const GammaPosterior& g, double tol) {
    return numerics::quad_semi_infinite([&](double b) { return g.pdf(b); }, 0.0, tol);
}

QuadratureResult conditional_alpha_mass(const SufficientStats& s, double beta, double tol) {
    require_positive_beta(beta);
    const double q1 = s.q1;
    const auto integrand = [&](double u) {
        const double alpha = q1 * std::exp(-u);
        if (!(alpha > 0.0)) return 0.0;
        return conditional_alpha_pdf(alpha, s, beta) * alpha;
    };
    return numerics::quad_semi_infinite(integrand, 0.0, tol);
}

QuadratureResult predictive_mass(const SufficientStats& s, double tol) {
    require_nondegenerate(s);
    const double q1 = s.q1;
    const double depth = tail_cut_depth(s);
    // Below the cusp the predictive is the marginal alpha density / (n + 1).
    const auto below = [&](double u) {
        const double x = q1 * std::exp(-u);
        return predictive_pdf(x, s) * x;
    };
    const auto above = [&](double w) {
        const double x = q1 * std::exp(w);
        if (!std::isfinite(x)) return 0.0;
        return predictive_pdf(x, s) * x;
    };
    QuadratureResult lower = numerics::quad_adaptive(below, 0.0, depth, 0.5 * tol);
    lower.value += marginal_alpha_cdf(q1 * std::exp(-depth), s) / (as_real(s.n) + 1.0);
    return combine(lower, numerics::quad_semi_infinite(above, 0.0, 0.5 * tol));
}

QuadratureResult predictive_given_alpha_mass(const SufficientStats& s, double alpha, double tol) {
    require_alpha_in_support(s, alpha);
    const auto integrand = [&](double w) {
        const double x = alpha * std::exp(w);
        if (!std::isfinite(x)) return 0.0;
        return predictive_pdf_given_alpha(x, s, alpha) * x;
    };
    return numerics::quad_semi_infinite(integrand, 0.0, tol);
}

QuadratureResult predictive_given_beta_mass(const SufficientStats& s, double beta, double tol) {
    require_positive_beta(beta);
    const double q1 = s.q1;
    const auto below = [&](double u) {
        const double x = q1 * std::exp(-u);
        if (!(x > 0.0)) return 0.0;
        return predictive_pdf_given_beta(x, s, beta) * x;
    };
    const auto above = [&](double w) {
        const double x = q1 * std::exp(w);
        if (!std::isfinite(x)) return 0.0;
        return predictive_pdf_given_beta(x, s, beta) * x;
    };
    return combine(numerics::quad_semi_infinite(below, 0.0, 0.5 * tol),
                   numerics::quad_semi_infinite(above, 0.0, 0.5 * tol));
}

}  // namespace paretogeo::bayes
