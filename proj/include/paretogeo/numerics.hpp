#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace paretogeo::numerics {

using Vec2 = std::array<double, 2>;
using Matrix2 = std::array<std::array<double, 2>, 2>;
using ScalarFunction = std::function<double(double)>;

inline constexpr double kDefaultQuadTolerance = 1e-10;
inline constexpr double kDefaultRootTolerance = 1e-12;
inline constexpr double kDefaultFiniteDiffStep = 1e-5;
inline constexpr int kMaxQuadratureDepth = 200;

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
};

/// Thrown when adaptive quadrature exhausts its subdivision budget before the
/// requested tolerance is met. The best available estimate is kept.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, QuadratureResult best)
        : std::runtime_error(what), best_(best) {}
    const QuadratureResult& best_estimate() const noexcept { return best_; }

private:
    QuadratureResult best_;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on [a, b].
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below `tol` (or below the rounding floor of the sum). The
/// rule never samples the endpoints, so integrable endpoint singularities are
/// allowed. Panels are never split past depth kMaxQuadratureDepth.
QuadratureResult quad_adaptive(const ScalarFunction& f, double a, double b,
                               double tol = kDefaultQuadTolerance);

/// Integral over (a, inf) through u = a + t / (1 - t), t in (0, 1).
QuadratureResult quad_semi_infinite(const ScalarFunction& f, double a,
                                    double tol = kDefaultQuadTolerance);

template <std::size_t N>
using OdeState = std::array<double, N>;

template <std::size_t N>
using VectorField = std::function<OdeState<N>(double, const OdeState<N>&)>;

template <std::size_t N>
struct OdeTrajectory {
    std::vector<double> times;
    std::vector<OdeState<N>> states;

    const OdeState<N>& back() const { return states.back(); }
};

template <std::size_t N>
class TrajectoryError : public std::runtime_error {
public:
    TrajectoryError(double t, OdeState<N> last)
        : std::runtime_error("trajectory left domain at t = " + std::to_string(t)),
          time_(t), last_valid_(last) {}
    double time() const noexcept { return time_; }
    const OdeState<N>& last_valid_state() const noexcept { return last_valid_; }

private:
    double time_;
    OdeState<N> last_valid_;
};

/// Classical fixed-step RK4 from t = 0 to t_end. Every step is stored,
/// including the initial state.
template <std::size_t N>
OdeTrajectory<N> rk4_integrate(const VectorField<N>& field, const OdeState<N>& y0,
                               double t_end, std::size_t steps) {
    if (steps < 1) throw std::invalid_argument("rk4_integrate: steps must be >= 1");

    auto axpy = [](const OdeState<N>& y, double h, const OdeState<N>& k) {
        OdeState<N> out;
        for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h * k[i];
        return out;
    };

    OdeTrajectory<N> traj;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(y0);

    const double h = t_end / static_cast<double>(steps);
    OdeState<N> y = y0;
    for (std::size_t s = 0; s < steps; ++s) {
        const double t = h * static_cast<double>(s);
        const OdeState<N> k1 = field(t, y);
        const OdeState<N> k2 = field(t + 0.5 * h, axpy(y, 0.5 * h, k1));
        const OdeState<N> k3 = field(t + 0.5 * h, axpy(y, 0.5 * h, k2));
        const OdeState<N> k4 = field(t + h, axpy(y, h, k3));
        OdeState<N> next;
        bool finite = true;
        for (std::size_t i = 0; i < N; ++i) {
            next[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            finite = finite && std::isfinite(next[i]);
        }
        if (!finite) throw TrajectoryError<N>(t, y);
        y = next;
        traj.times.push_back(h * static_cast<double>(s + 1));
        traj.states.push_back(y);
    }
    return traj;
}

class BracketError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Bisection on [lo, hi]; requires f(lo) * f(hi) <= 0. Returns the midpoint of
/// the final bracket once its width is <= tol.
double bisect_root(const ScalarFunction& f, double lo, double hi,
                   double tol = kDefaultRootTolerance);

/// Natural log of the gamma function for x > 0 (Lanczos, g = 7).
double log_gamma(double x);

/// Regularized lower incomplete gamma P(shape, rate * x).
double gamma_cdf(double x, double shape, double rate);

/// Gamma(shape, rate) density, evaluated in log space.
double gamma_pdf(double x, double shape, double rate);

/// Central-difference Jacobian J[i][j] = d f_i / d x_j. The step on each axis
/// is h * max(|x_j|, 1).
Matrix2 finite_diff_jacobian(const std::function<Vec2(const Vec2&)>& f, const Vec2& at,
                             double h = kDefaultFiniteDiffStep);

/// Central-difference gradient of a scalar field, same step rule as above.
Vec2 finite_diff_gradient(const std::function<double(const Vec2&)>& f, const Vec2& at,
                          double h = kDefaultFiniteDiffStep);

}  // namespace paretogeo::numerics
