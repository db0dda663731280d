#include "paretogeo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace paretogeo::geometry {

using numerics::Vec2;

HalfPlanePoint::HalfPlanePoint(double x, double y) : x_(x), y_(y) {
    if (!std::isfinite(x)) throw std::invalid_argument("HalfPlanePoint: x must be finite");
    if (!(y > 0.0) || !std::isfinite(y)) {
        throw std::invalid_argument("HalfPlanePoint: y must be positive, got " + std::to_string(y));
    }
}

namespace {

std::size_t christoffel_slot(int k, int i, int j) {
    if (k < 1 || k > 2 || i < 1 || i > 2 || j < 1 || j > 2) {
        throw std::out_of_range("ChristoffelTable: indices must be 1 or 2");
    }
    return static_cast<std::size_t>((k - 1) * 4 + (i - 1) * 2 + (j - 1));
}

}  // namespace

double ChristoffelTable::operator()(int k, int i, int j) const {
    return values_[christoffel_slot(k, i, j)];
}

double& ChristoffelTable::at(int k, int i, int j) { return values_[christoffel_slot(k, i, j)]; }

MetricTensor fisher_metric(const ParetoParams& p) {
    const double a = p.alpha();
    const double b = p.beta();
    return {b * b / (a * a), 0.0, 1.0 / (b * b)};
}

MetricTensor poincare_metric(const HalfPlanePoint& q) {
    const double w = 1.0 / (q.y() * q.y());
    return {w, 0.0, w};
}

ChristoffelTable christoffel(const ParetoParams& p) {
    const double a = p.alpha();
    const double b = p.beta();
    ChristoffelTable table;
    table.at(1, 1, 1) = -1.0 / a;
    table.at(2, 1, 1) = -b * b * b / (a * a);
    table.at(1, 1, 2) = 1.0 / b;
    table.at(1, 2, 1) = 1.0 / b;
    table.at(2, 2, 2) = -1.0 / b;
    return table;
}

double volume_density(const ParetoParams& p) { return 1.0 / p.alpha(); }

HalfPlanePoint to_half_plane(const ParetoParams& p) {
    return HalfPlanePoint(std::log(p.alpha()), 1.0 / p.beta());
}

ParetoParams from_half_plane(const HalfPlanePoint& q) {
    return ParetoParams(std::exp(q.x()), 1.0 / q.y());
}

Vec2 initial_velocity(const ParetoParams& start, double theta0) {
    // Half-plane unit vector y0 (cos, sin) pushed through dF^-1:
    // d alpha = alpha dx, d beta = -beta^2 dy.
    const double a = start.alpha();
    const double b = start.beta();
    const double y0 = 1.0 / b;
    return {a * y0 * std::cos(theta0), -b * b * y0 * std::sin(theta0)};
}

ParetoParams geodesic_closed_form(const GeodesicState& gs) {
    const double half_angle = std::numbers::pi / 4.0 - gs.theta0 / 2.0;
    const double s = std::sin(half_angle);
    const double c = std::cos(half_angle);
    const double beta = gs.start.beta() * (std::exp(gs.t) * s * s + std::exp(-gs.t) * c * c);
    const double alpha = gs.start.alpha() * std::exp(std::sinh(gs.t) * std::cos(gs.theta0) / beta);
    return ParetoParams(alpha, beta);
}

numerics::OdeState<4> geodesic_field(const numerics::OdeState<4>& y) {
    const ParetoParams at(y[0], y[1]);
    const ChristoffelTable gamma = christoffel(at);
    const std::array<double, 2> v = {y[2], y[3]};
    numerics::OdeState<4> dy{y[2], y[3], 0.0, 0.0};
    for (int k = 1; k <= 2; ++k) {
        double acc = 0.0;
        for (int i = 1; i <= 2; ++i) {
            for (int j = 1; j <= 2; ++j) acc -= gamma(k, i, j) * v[i - 1] * v[j - 1];
        }
        dy[static_cast<std::size_t>(k + 1)] = acc;
    }
    return dy;
}

numerics::OdeTrajectory<4> geodesic_ode_trajectory(const GeodesicState& gs, std::size_t steps) {
    const Vec2 v = initial_velocity(gs.start, gs.theta0);
    const numerics::OdeState<4> y0 = {gs.start.alpha(), gs.start.beta(), v[0], v[1]};
    const numerics::VectorField<4> field = [](double, const numerics::OdeState<4>& y) {
        if (!(y[0] > 0.0) || !(y[1] > 0.0)) {
            constexpr double nan = std::numeric_limits<double>::quiet_NaN();
            return numerics::OdeState<4>{nan, nan, nan, nan};
        }
        return geodesic_field(y);
    };
    return numerics::rk4_integrate<4>(field, y0, gs.t, steps);
}

ParetoParams geodesic_ode(const GeodesicState& gs, std::size_t steps) {
    if (gs.t == 0.0) return gs.start;
    const auto traj = geodesic_ode_trajectory(gs, steps);
    return ParetoParams(traj.back()[0], traj.back()[1]);
}

double arcosh_one_plus(double s) {
    if (!(s >= 0.0)) {
        if (s > -1e-15) return 0.0;
        throw std::domain_error("arcosh_one_plus: negative argument");
    }
    if (s < 1e-8) return std::sqrt(2.0 * s) * (1.0 - s / 12.0);
    return std::log1p(s + std::sqrt(s * (s + 2.0)));
}

double distance(const ParetoParams& p0, const ParetoParams& p1) {
    const double b0 = p0.beta();
    const double b1 = p1.beta();
    const double dlog = std::log(p0.alpha()) - std::log(p1.alpha());
    const double db = b0 - b1;
    const double bb = b0 * b1;
    return arcosh_one_plus(bb * (dlog * dlog) / 2.0 + (db * db) / (2.0 * bb));
}

double half_plane_distance(const HalfPlanePoint& q0, const HalfPlanePoint& q1) {
    const double dx = q0.x() - q1.x();
    const double dy = q0.y() - q1.y();
    return arcosh_one_plus((dx * dx + dy * dy) / (2.0 * (q0.y() * q1.y())));
}

double pullback_metric_check(const ParetoParams& p, double h) {
    const auto chart = [](const Vec2& ab) {
        const HalfPlanePoint q = to_half_plane(ParetoParams(ab[0], ab[1]));
        return Vec2{q.x(), q.y()};
    };
    const numerics::Matrix2 jac = numerics::finite_diff_jacobian(chart, {p.alpha(), p.beta()}, h);
    const MetricTensor hm = poincare_metric(to_half_plane(p));
    const numerics::Matrix2 hmat = {{{hm.g11, hm.g12}, {hm.g12, hm.g22}}};

    numerics::Matrix2 pulled{};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            for (std::size_t k = 0; k < 2; ++k) {
                for (std::size_t l = 0; l < 2; ++l) pulled[i][j] += jac[k][i] * hmat[k][l] * jac[l][j];
            }
        }
    }
    const MetricTensor g = fisher_metric(p);
    return std::max({std::abs(pulled[0][0] - g.g11), std::abs(pulled[0][1] - g.g12),
                     std::abs(pulled[1][0] - g.g12), std::abs(pulled[1][1] - g.g22)});
}

double curvature_estimate(const ParetoParams& p, double h) {
    // K = -1 / (2 sqrt(EG)) * [ d_1 (G_1 / sqrt(EG)) + d_2 (E_2 / sqrt(EG)) ]
    const auto metric_at = [](const Vec2& ab) { return fisher_metric(ParetoParams(ab[0], ab[1])); };
    const auto e_of = [&](const Vec2& ab) { return metric_at(ab).g11; };
    const auto g_of = [&](const Vec2& ab) { return metric_at(ab).g22; };
    const auto root_eg = [&](const Vec2& ab) {
        const MetricTensor m = metric_at(ab);
        return std::sqrt(m.g11 * m.g22);
    };
    const auto g1_scaled = [&](const Vec2& ab) {
        return numerics::finite_diff_gradient(g_of, ab, h)[0] / root_eg(ab);
    };
    const auto e2_scaled = [&](const Vec2& ab) {
        return numerics::finite_diff_gradient(e_of, ab, h)[1] / root_eg(ab);
    };
    const Vec2 at = {p.alpha(), p.beta()};
    const double outer = numerics::finite_diff_gradient(g1_scaled, at, h)[0] +
                         numerics::finite_diff_gradient(e2_scaled, at, h)[1];
    return -outer / (2.0 * root_eg(at));
}

std::vector<Polyline> geodesic_ball(const ParetoParams& center, double radius,
                                    std::size_t n_rays, std::size_t n_steps) {
    if (!(radius > 0.0)) throw std::invalid_argument("geodesic_ball: radius must be > 0");
    if (n_rays < 1) throw std::invalid_argument("geodesic_ball: need at least one ray");
    if (n_steps < 2) throw std::invalid_argument("geodesic_ball: need at least two steps per ray");

    std::vector<Polyline> rays;
    rays.reserve(n_rays);
    for (std::size_t k = 0; k < n_rays; ++k) {
        // Equally spaced on [0, 2 pi), stored in (-pi, pi].
        const double theta = std::remainder(2.0 * std::numbers::pi * static_cast<double>(k) /
                                                static_cast<double>(n_rays),
                                            2.0 * std::numbers::pi);
        Polyline line;
        line.reserve(n_steps);
        for (std::size_t j = 0; j < n_steps; ++j) {
            const double t = j + 1 == n_steps
                                 ? radius
                                 : radius * static_cast<double>(j) / static_cast<double>(n_steps - 1);
            const ParetoParams p = geodesic_closed_form({center, theta, t});
            const HalfPlanePoint q = to_half_plane(p);
            line.push_back({k, theta, t, p.alpha(), p.beta(), q.x(), q.y()});
        }
        rays.push_back(std::move(line));
    }
    return rays;
}

}  // namespace paretogeo::geometry
