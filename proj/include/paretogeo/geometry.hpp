#pragma once

#include "paretogeo/model.hpp"
#include "paretogeo/numerics.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace paretogeo::geometry {

/// Symmetric 2x2 metric at a point. For the Fisher-Rao metric of this family
/// the off-diagonal term vanishes.
struct MetricTensor {
    double g11;
    double g12;
    double g22;

    double determinant() const noexcept { return g11 * g22 - g12 * g12; }
    double quadratic_form(const numerics::Vec2& v) const noexcept {
        return g11 * v[0] * v[0] + 2.0 * g12 * v[0] * v[1] + g22 * v[1] * v[1];
    }
};

/// Point of the Poincare upper half-plane, y > 0.
class HalfPlanePoint {
public:
    HalfPlanePoint(double x, double y);

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }

private:
    double x_;
    double y_;
};

/// Christoffel symbols of the second kind, Gamma^k_{ij}, indices in {1, 2}.
class ChristoffelTable {
public:
    double operator()(int k, int i, int j) const;
    double& at(int k, int i, int j);

private:
    std::array<double, 8> values_{};
};

/// Unit-speed geodesic from `start`; theta0 is measured in half-plane
/// coordinates against the positive x-axis, t is arc length.
struct GeodesicState {
    ParetoParams start;
    double theta0;
    double t;
};

MetricTensor fisher_metric(const ParetoParams& p);

/// Poincare metric (dx^2 + dy^2) / y^2.
MetricTensor poincare_metric(const HalfPlanePoint& q);

ChristoffelTable christoffel(const ParetoParams& p);

/// Riemannian volume density sqrt(det g) = 1 / alpha.
double volume_density(const ParetoParams& p);

/// The isometry (alpha, beta) -> (log alpha, 1 / beta) and its inverse.
HalfPlanePoint to_half_plane(const ParetoParams& p);
ParetoParams from_half_plane(const HalfPlanePoint& q);

/// Initial velocity (alpha', beta') of the unit-speed geodesic leaving
/// `start` at angle theta0 in half-plane coordinates.
numerics::Vec2 initial_velocity(const ParetoParams& start, double theta0);

ParetoParams geodesic_closed_form(const GeodesicState& gs);

/// First-order system in (alpha, beta, alpha', beta') for the geodesic
/// equations built from the Christoffel symbols.
numerics::OdeState<4> geodesic_field(const numerics::OdeState<4>& y);

/// RK4 solution of the geodesic equations from gs.start to arc length gs.t.
numerics::OdeTrajectory<4> geodesic_ode_trajectory(const GeodesicState& gs, std::size_t steps);
ParetoParams geodesic_ode(const GeodesicState& gs, std::size_t steps);

/// Fisher-Rao geodesic distance between two Pareto distributions.
double distance(const ParetoParams& p0, const ParetoParams& p1);

double half_plane_distance(const HalfPlanePoint& q0, const HalfPlanePoint& q1);

/// arcosh(1 + s) for s >= 0, accurate for tiny s.
double arcosh_one_plus(double s);

/// Max entrywise |J^T H J - g| where J is a finite-difference Jacobian of the
/// isometry and H the Poincare metric at the image point.
double pullback_metric_check(const ParetoParams& p,
                             double h = numerics::kDefaultFiniteDiffStep);

/// Gaussian curvature from the Brioschi formula for an orthogonal metric,
/// with all derivatives of fisher_metric taken by central differences.
double curvature_estimate(const ParetoParams& p, double h = numerics::kDefaultFiniteDiffStep);

struct BallPoint {
    std::size_t ray_index;
    double theta0;
    double t;
    double alpha;
    double beta;
    double x;
    double y;
};

using Polyline = std::vector<BallPoint>;

/// n_rays closed-form geodesics with theta0 = 2 pi k / n_rays, each sampled
/// at n_steps equally spaced arc lengths in [0, radius].
std::vector<Polyline> geodesic_ball(const ParetoParams& center, double radius,
                                    std::size_t n_rays, std::size_t n_steps);

}  // namespace paretogeo::geometry
