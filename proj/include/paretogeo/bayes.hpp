#pragma once

#include "paretogeo/model.hpp"
#include "paretogeo/numerics.hpp"

#include <optional>
#include <string_view>
#include <vector>

// Jeffreys-prior inference for Pareto data. Every function here sees the data
// only through SufficientStats; densities are evaluated in log space because
// powers like (q2 - n log q1)^n overflow for moderate n.
namespace paretogeo::bayes {

/// Gamma(shape, rate) posterior for beta.
class GammaPosterior {
public:
    GammaPosterior(double shape, double rate);

    double shape() const noexcept { return shape_; }
    double rate() const noexcept { return rate_; }
    double mean() const noexcept { return shape_ / rate_; }
    double pdf(double beta) const;
    double cdf(double beta) const;
    /// Root of cdf - 1/2, found by bisection.
    double median() const;

private:
    double shape_;
    double rate_;
};

enum class Estimator { mle, posterior_median, posterior_mean };
enum class Conditioning { none, known_alpha, known_beta };

std::string_view to_string(Estimator e);
std::string_view to_string(Conditioning c);
std::optional<Estimator> parse_estimator(std::string_view s);
std::optional<Conditioning> parse_conditioning(std::string_view s);

struct PosteriorSummary {
    Estimator estimator;
    Conditioning conditioning;
    double alpha_hat;
    double beta_hat;
    /// Fisher-Rao distance from (alpha_hat, beta_hat) to the reference, when
    /// one was supplied.
    std::optional<double> distance_to_reference;
};

struct MeanBounds {
    double lo;
    double hi;
};

/// 1 / alpha, i.e. the Riemannian volume density with constant 1.
double jeffreys_prior_unnorm(const ParetoParams& p);

double joint_posterior_pdf(const ParetoParams& p, const SufficientStats& s);

double marginal_alpha_pdf(double alpha, const SufficientStats& s);
/// ((q2 - n log q1) / (q2 - n log t))^n on (0, q1]; 0 below, 1 above.
double marginal_alpha_cdf(double t, const SufficientStats& s);
/// Same CDF written through the MLE: [1 + beta_hat log(alpha_hat / t)]^-n.
double marginal_alpha_cdf_mle_form(double t, const SufficientStats& s);

GammaPosterior marginal_beta_posterior(const SufficientStats& s);

double conditional_alpha_pdf(double alpha, const SufficientStats& s, double beta);
double conditional_alpha_cdf(double t, const SufficientStats& s, double beta);
GammaPosterior conditional_beta_posterior(const SufficientStats& s, double alpha);

double posterior_median_alpha(const SufficientStats& s);
double posterior_median_alpha_given_beta(const SufficientStats& s, double beta);
double posterior_median_beta(const SufficientStats& s);

/// alpha_hat - int_0^alpha_hat Pr(alpha <= t | x) dt, by quadrature after the
/// substitution t = alpha_hat e^-u.
double posterior_mean_alpha(const SufficientStats& s,
                            double tol = numerics::kDefaultQuadTolerance);
MeanBounds posterior_mean_alpha_bounds(const SufficientStats& s);
double posterior_mean_alpha_given_beta(const SufficientStats& s, double beta);

/// Predictive density of a new draw with both parameters unknown. Continuous
/// on (0, inf) with a cusp at q1 and a singularity at 0.
double predictive_pdf(double x_new, const SufficientStats& s);
double predictive_pdf_given_alpha(double x_new, const SufficientStats& s, double alpha);
double predictive_pdf_given_beta(double x_new, const SufficientStats& s, double beta);

/// The three estimators (MLE, posterior median, posterior mean) under one
/// conditioning. `known_value` is ignored for Conditioning::none.
std::vector<PosteriorSummary> estimator_rows(const SufficientStats& s, Conditioning conditioning,
                                             double known_value = 0.0,
                                             double tol = numerics::kDefaultQuadTolerance);

/// All nine estimator rows, conditioning on the reference parameters in the
/// known-alpha and known-beta blocks, with distances to the reference.
std::vector<PosteriorSummary> table2_summary(const SufficientStats& s,
                                             const ParetoParams& reference,
                                             double tol = numerics::kDefaultQuadTolerance);

void attach_distances(std::vector<PosteriorSummary>& rows, const ParetoParams& reference);

// Total probability mass of each proper posterior density, by quadrature.
// Domains are split at cusps; the alpha -> 0 singularities are cut where the
// closed-form CDF drops below 1e-14 and that tail is added analytically.
numerics::QuadratureResult joint_mass(const SufficientStats& s,
                                      double tol = numerics::kDefaultQuadTolerance);
numerics::QuadratureResult marginal_alpha_mass(const SufficientStats& s,
                                               double tol = numerics::kDefaultQuadTolerance);
numerics::QuadratureResult gamma_mass(const GammaPosterior& g,
                                      double tol = numerics::kDefaultQuadTolerance);
numerics::QuadratureResult conditional_alpha_mass(const SufficientStats& s, double beta,
                                                  double tol = numerics::kDefaultQuadTolerance);
numerics::QuadratureResult predictive_mass(const SufficientStats& s,
                                           double tol = numerics::kDefaultQuadTolerance);
numerics::QuadratureResult predictive_given_alpha_mass(
    const SufficientStats& s, double alpha, double tol = numerics::kDefaultQuadTolerance);
numerics::QuadratureResult predictive_given_beta_mass(
    const SufficientStats& s, double beta, double tol = numerics::kDefaultQuadTolerance);

}  // namespace paretogeo::bayes
