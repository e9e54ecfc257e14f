#pragma once

// Brute-force numerical verifiers for the closed-form laws.
//
// Nothing here calls circumference(), length_factor(), linear_speed() or the
// drivetrain solver; the oracle library does not even link against the
// drivetrain. Model radii are recovered by bisection on the distance
// function, and lengths come from the model metrics directly.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gearform/kinematics.hpp"

namespace gearform::oracle {

/// Uniformly sampled path: points[k] = gamma(k * step).
struct SampledTrajectory {
  SampledTrajectory(double step, std::vector<Point> points);

  double step;
  std::vector<Point> points;
};

/// A finite-difference estimate with the formal order of its stencil
/// (2 for central differences, 1 for the one-sided endpoint variant).
struct FdEstimate {
  double value = 0.0;
  int order = 2;
};

/// Riemannian norm of the tangent vector v at p in p's model: the disk metric
/// 2|v|/(1-|p|^2), the Minkowski norm on the hyperboloid, the Euclidean norm
/// on the sphere and in the plane.
double metric_norm(const Point& p, const Eigen::Vector3d& v);

/// Model radius (Euclidean radius in model coordinates) of a circle of
/// intrinsic radius R centred at the origin or pole, found by bisection on
/// the distance function. For the sphere this returns the height z0 of the
/// circle's plane in `height`.
double bisect_model_radius(Geometry g, double intrinsic, double* height = nullptr);

/// Composite trapezoid rule over the contact angle of the metric norm of the
/// circle's velocity. Needs samples >= 16.
double numeric_circumference(const Circle& c, int samples);

/// Metric norm of the central-difference velocity at an interior sample;
/// one-sided at the endpoints.
FdEstimate fd_linear_speed(const SampledTrajectory& traj, std::size_t index);

/// Oriented angles about `center` relative to the first sample, unwrapped to
/// a continuous branch.
std::vector<double> unwrapped_angles(const SampledTrajectory& traj, const Point& center);

/// |d/dt| of the unwrapped oriented angle about `center`.
FdEstimate fd_angular_velocity(const SampledTrajectory& traj, const Point& center, std::size_t index);

/// Pushes drive_teeth[t-1] teeth of gear 1 per step, one tooth at a time, with
/// each push advancing the engaged tooth of gear 2. Returns both winding maps
/// (length drive_teeth.size() + 1).
std::pair<WindingMap, WindingMap> tooth_simulator(int first_teeth, int second_teeth,
                                                  std::span<const std::int64_t> drive_teeth);

/// Arc-length budget belt: in each step the metric arc length travelled by
/// the boundary point of the first pulley is measured by polygon refinement,
/// and the second pulley is turned (bisection) until its boundary point
/// travels the same length.
/// Returns the second pulley's angle sampled on t = k * step, k = 0..steps.
AngleFunction belt_simulator(const Circle& first, const Circle& second, const AngleFunction& first_alpha,
                             double step, std::size_t steps);

}  // namespace gearform::oracle
