// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include "paretogeo/bayes.hpp"
#include "paretogeo/geometry.hpp"
#include "paretogeo/io.hpp"
#include "paretogeo/model.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace paretogeo;

namespace {

// Tolerances and time budgets.
constexpr double kTableTol = 5e-4;
constexpr double kTailLimit = 1e-6;
constexpr double kPullbackTol = 1e-7;
constexpr double kCurvatureTol = 1e-4;
constexpr double kOdeTol = 1e-6;
constexpr double kSpeedTol = 1e-8;
constexpr double kMassTol = 1e-6;
constexpr double kKsLimit = 0.01;
constexpr double kMleTol = 0.05;
constexpr double kNormalLimit = 0.02;

const SufficientStats kFixture{100, 1.0303, 91.7082};

struct Outcome {
    bool ok;
    std::string detail;
};

Outcome table2() {
    // Stats come from the checked-in fixture file, end to end.
    const SufficientStats s =
        model::sufficient_stats(io::read_sample_file(std::string(PARETOGEO_TEST_DATA) + "/table2_fixture.txt"));
    const auto rows = bayes::table2_summary(s, ParetoParams(1.0, 1.0));
    const double want[9][3] = {
        {1.0303, 1.1271, 0.1238}, {1.0240, 1.1234, 0.1190}, {1.0211, 1.1271, 0.1217},
        {1.0, 1.0905, 0.0866},    {1.0, 1.0977, 0.0932},    {1.0, 1.1014, 0.0965},
        {1.0303, 1.0, 0.0298},    {1.0232, 1.0, 0.0229},    {1.0201, 1.0, 0.0199},
    };
    if (rows.size() != 9) return {false, "expected 9 rows"};
    double worst = 0.0;
    for (int i = 0; i < 9; ++i) {
        worst = std::max({worst, std::abs(rows[i].alpha_hat - want[i][0]),
                          std::abs(rows[i].beta_hat - want[i][1]),
                          std::abs(rows[i].distance_to_reference.value_or(1e9) - want[i][2])});
    }
    std::ostringstream os;
    os << "max abs deviation " << worst;
    return {worst < kTableTol, os.str()};
}

Outcome tail() {
    const double p = bayes::marginal_alpha_cdf_mle_form(0.9, kFixture);
    std::ostringstream os;
    os << "Pr(alpha <= 0.9) = " << p;
    return {p < kTailLimit, os.str()};
}

const double kGrid[3] = {0.5, 1.0, 2.0};

Outcome pullback() {
    double worst = 0.0;
    for (double a : kGrid) {
        for (double b : kGrid) worst = std::max(worst, geometry::pullback_metric_check(ParetoParams(a, b)));
    }
    std::ostringstream os;
    os << "max deviation " << worst;
    return {worst < kPullbackTol, os.str()};
}

Outcome curvature() {
    double worst = 0.0;
    for (double a : kGrid) {
        for (double b : kGrid) {
            worst = std::max(worst, std::abs(geometry::curvature_estimate(ParetoParams(a, b)) + 1.0));
        }
    }
    std::ostringstream os;
    os << "max |K + 1| " << worst;
    return {worst < kCurvatureTol, os.str()};
}

Outcome geodesics() {
    const ParetoParams start(1.0, 1.0);
    constexpr double pi = std::numbers::pi;
    double ode = 0.0;
    double speed = 0.0;
    for (double theta : {0.0, pi / 4, pi / 2, 3 * pi / 4, pi}) {
        const geometry::GeodesicState gs{start, theta, 1.0};
        const ParetoParams a = geometry::geodesic_ode(gs, 1000);
        const ParetoParams b = geometry::geodesic_closed_form(gs);
        ode = std::max({ode, std::abs(a.alpha() - b.alpha()), std::abs(a.beta() - b.beta())});
        for (double t : {0.1, 0.5, 1.0, 2.0}) {
            const double d = geometry::distance(start, geometry::geodesic_closed_form({start, theta, t}));
            speed = std::max(speed, std::abs(d - t));
        }
    }
    std::ostringstream os;
    os << "ode vs closed form " << ode << ", |d - t| " << speed;
    return {ode < kOdeTol && speed < kSpeedTol, os.str()};
}

Outcome normalization() {
    const auto posterior_beta = bayes::marginal_beta_posterior(kFixture);
    const auto conditional_beta = bayes::conditional_beta_posterior(kFixture, 1.0);
    const std::vector<std::pair<std::string, double>> masses = {
        {"joint", bayes::joint_mass(kFixture).value},
        {"marginal_alpha", bayes::marginal_alpha_mass(kFixture).value},
        {"marginal_beta", bayes::gamma_mass(posterior_beta).value},
        {"alpha|beta", bayes::conditional_alpha_mass(kFixture, 1.0).value},
        {"beta|alpha", bayes::gamma_mass(conditional_beta).value},
        {"predictive", bayes::predictive_mass(kFixture).value},
        {"predictive|alpha", bayes::predictive_given_alpha_mass(kFixture, 1.0).value},
        {"predictive|beta", bayes::predictive_given_beta_mass(kFixture, 1.0).value},
    };
    double worst = 0.0;
    std::string name;
    for (const auto& [label, mass] : masses) {
        if (std::abs(mass - 1.0) >= worst) {
            worst = std::abs(mass - 1.0);
            name = label;
        }
    }
    std::ostringstream os;
    os << "worst |mass - 1| " << worst << " (" << name << ")";
    return {worst < kMassTol, os.str()};
}

Outcome bounds() {
    int inside = 0;
    int total = 0;
    for (std::size_t n : {5u, 20u, 100u}) {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const SampleSet xs = model::sample(ParetoParams(1.0 + 0.1 * seed, 0.5 + 0.15 * seed), 1000 + seed, n);
            const SufficientStats s = model::sufficient_stats(xs);
            const double mean = bayes::posterior_mean_alpha(s);
            const auto b = bayes::posterior_mean_alpha_bounds(s);
            ++total;
            if (b.lo <= mean && mean <= b.hi) ++inside;
        }
    }
    std::ostringstream os;
    os << inside << "/" << total << " fixtures inside the bounds";
    return {inside == total, os.str()};
}

Outcome monte_carlo() {
    const ParetoParams truth(1.0, 1.0);
    const SampleSet xs = model::sample(truth, 42, 100000);
    std::vector<double> sorted(xs.values().begin(), xs.values().end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = model::cdf(sorted[i], truth);
        ks = std::max({ks, std::abs(f - static_cast<double>(i) / n), std::abs(f - static_cast<double>(i + 1) / n)});
    }
    const ParetoParams hat = model::mle(model::sufficient_stats(xs));
    const double err = std::max(std::abs(hat.alpha() - 1.0), std::abs(hat.beta() - 1.0));
    std::ostringstream os;
    os << "KS " << ks << ", MLE error " << err;
    return {ks < kKsLimit && err < kMleTol, os.str()};
}

Outcome normal_approx() {
    const auto g = bayes::marginal_beta_posterior(kFixture);
    const double mu = g.mean();
    const double sigma = mu / std::sqrt(static_cast<double>(kFixture.n));
    double sup = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        const double b = mu - 8 * sigma + i * 16 * sigma / 4000.0;
        if (b <= 0.0) continue;
        const double normal = 0.5 * std::erfc(-(b - mu) / (sigma * std::numbers::sqrt2));
        sup = std::max(sup, std::abs(g.cdf(b) - normal));
    }
    std::ostringstream os;
    os << "sup distance " << sup;
    return {sup < kNormalLimit, os.str()};
}

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> check;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "estimator table golden values", 5.0, table2},
        {2, "posterior tail below 0.9", 1.0, tail},
        {3, "half-plane isometry pullback", 1.0, pullback},
        {4, "constant curvature -1", 1.0, curvature},
        {5, "geodesic closed form vs RK4, unit speed", 1.0, geodesics},
        {6, "posterior and predictive normalization", 10.0, normalization},
        {7, "posterior mean bounds", 10.0, bounds},
        {8, "Monte Carlo sampling and MLE", 5.0, monte_carlo},
        {9, "Gamma vs normal approximation", 1.0, normal_approx},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome result{false, ""};
        try {
            result = c.check();
        } catch (const std::exception& e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool ok = result.ok && secs < c.budget_s;
        if (!ok) ++failures;
        std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " | "
                  << result.detail << " | " << std::fixed << std::setprecision(3) << secs << " s (budget "
                  << c.budget_s << " s)" << std::defaultfloat << "\n";
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
    return failures == 0 ? 0 : 1;
}
