#pragma once

// Gears as circles divided into equal teeth (discrete winding maps) and
// pulleys as circles driven by a differentiable angle function.

#include <boost/rational.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "gearform/geometry.hpp"

namespace gearform {

using Rational = boost::rational<std::int64_t>;

class Gear {
 public:
  /// teeth >= 3, orientation +1 (teeth ordered counter-clockwise) or -1.
  Gear(Circle circle, int teeth, int orientation = +1);

  const Circle& circle() const { return circle_; }
  int teeth() const { return teeth_; }
  int orientation() const { return orientation_; }
  /// Arc length of one tooth, circumference / teeth.
  double tooth_arc_length() const;

 private:
  Circle circle_;
  int teeth_;
  int orientation_;
};

class Pulley {
 public:
  explicit Pulley(Circle circle) : circle_(std::move(circle)) {}
  const Circle& circle() const { return circle_; }

 private:
  Circle circle_;
};

/// sigma(0..s): cumulative number of teeth a gear has advanced, full turns included.
class WindingMap {
 public:
  /// Throws DomainError unless values[0] == 0 and teeth >= 1.
  WindingMap(std::vector<std::int64_t> values, int teeth);

  const std::vector<std::int64_t>& values() const { return values_; }
  std::int64_t operator[](std::size_t t) const { return values_.at(t); }
  std::size_t size() const { return values_.size(); }
  int teeth() const { return teeth_; }

  bool operator==(const WindingMap&) const = default;

 private:
  std::vector<std::int64_t> values_;
  int teeth_;
};

/// sigma(t) = residue(t) + teeth * full_turns(t), 0 <= residue(t) < teeth.
struct GearMovement {
  int teeth = 0;
  std::vector<std::int64_t> residue;
  std::vector<std::int64_t> full_turns;

  bool operator==(const GearMovement&) const = default;
};

GearMovement winding_to_movement(const WindingMap& sigma);
WindingMap movement_to_winding(const GearMovement& movement);

/// Rotation movement (r, f) of a gear: one rotation about the gear centre per
/// time step plus the full-turn counter.
struct RotationMovement {
  std::vector<Rotation> rotations;
  std::vector<std::int64_t> full_turns;
};

/// The unique rotation movement whose winding map is `movement`: r(t) turns
/// the gear by residue(t) teeth in the direction of its orientation.
RotationMovement rotation_movement(const Gear& gear, const GearMovement& movement);

/// sigma_p(t) measured from the gear point p. Throws DomainError if some r(t)
/// does not map teeth onto teeth.
WindingMap winding_map(const Gear& gear, const RotationMovement& movement, const Point& p);

/// Average angular velocity 2 pi sigma(t) / (n t). Throws UndefinedAtZero for t = 0.
double gear_angular_velocity(const WindingMap& sigma, std::size_t t);
/// The same quantity in turns per unit time, as an exact fraction sigma(t) / (n t).
Rational gear_angular_velocity_turns(const WindingMap& sigma, std::size_t t);

/// A real angle function alpha(t) with alpha(0) = 0.
class AngleFunction {
 public:
  /// alpha(t) = omega * t.
  static AngleFunction constant_rate(double omega);
  /// alpha(t) = sum c_k t^k; c_0 must be zero.
  static AngleFunction polynomial(std::vector<double> coefficients);
  /// Uniform samples alpha(k h). Needs at least three samples
  /// (InsufficientData) and values[0] == 0. Derivatives use central
  /// differences inside and second-order one-sided differences at the ends.
  static AngleFunction sampled(std::vector<double> values, double step);
  /// Caller-supplied closed form with its derivative; value(0) must be 0.
  static AngleFunction custom(std::function<double(double)> value, std::function<double(double)> derivative);

  double value(double t) const;
  double derivative(double t) const;

  /// Length of the sampled domain; unbounded otherwise.
  std::optional<double> duration() const;
  /// Drives with constant alpha' are integrated exactly by the simulator.
  std::optional<double> constant_derivative() const;

  const std::vector<double>* samples() const;
  double sample_step() const;

 private:
  struct ConstantRate {
    double omega;
  };
  struct Polynomial {
    std::vector<double> coefficients;
  };
  struct Sampled {
    std::vector<double> values;
    double step;
  };
  struct Custom {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
  };

  explicit AngleFunction(std::variant<ConstantRate, Polynomial, Sampled, Custom> form) : form_(std::move(form)) {}

  double sampled_derivative_at(std::size_t k) const;

  std::variant<ConstantRate, Polynomial, Sampled, Custom> form_;
};

/// |alpha'(t)|; independent of the reference geodesic.
double pulley_angular_velocity(const AngleFunction& alpha, double t);
double signed_pulley_angular_velocity(const AngleFunction& alpha, double t);

/// t -> boundary_point(circle, alpha(t)). For a circle centred at the origin
/// or pole this is r (cos alpha, sin alpha, z0) in the model coordinates.
class BoundaryTrajectory {
 public:
  BoundaryTrajectory(Circle circle, AngleFunction alpha) : circle_(std::move(circle)), alpha_(std::move(alpha)) {}

  Point at(double t) const { return boundary_point(circle_, alpha_.value(t)); }
  std::vector<Point> sample(double step, std::size_t count) const;

  const Circle& circle() const { return circle_; }
  const AngleFunction& alpha() const { return alpha_; }

 private:
  Circle circle_;
  AngleFunction alpha_;
};

BoundaryTrajectory boundary_trajectory(const Circle& c, const AngleFunction& alpha);

/// Speed of a boundary point, length_factor(R) * |alpha'(t)|.
double linear_speed(const Circle& c, const AngleFunction& alpha, double t);

}  // namespace gearform
