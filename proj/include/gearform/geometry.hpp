#pragma once

// Points, isometries and circles on the three unit-curvature space forms.
//
// The hyperboloid is the computational substrate for the hyperbolic plane;
// Poincare-disk points are converted on the way in and out. Isometries are
// 3x3 matrices: homogeneous affine maps for the plane, Lorentz matrices for
// the hyperboloid and orthogonal matrices for the sphere.

#include <Eigen/Core>

#include <string>
#include <vector>

#include "gearform/errors.hpp"

namespace gearform {

/// Tolerance for model invariant checks.
inline constexpr double kModelTolerance = 1e-9;
/// Tolerance required of tangent-geodesic root finding.
inline constexpr double kTangencyTolerance = 1e-8;

enum class SpaceForm { euclidean, hyperbolic, spherical };
enum class HyperbolicModel { disk, hyperboloid };

class Geometry {
 public:
  static constexpr Geometry euclidean() { return {SpaceForm::euclidean, HyperbolicModel::hyperboloid}; }
  static constexpr Geometry spherical() { return {SpaceForm::spherical, HyperbolicModel::hyperboloid}; }
  static constexpr Geometry hyperbolic(HyperbolicModel model = HyperbolicModel::hyperboloid) {
    return {SpaceForm::hyperbolic, model};
  }

  constexpr SpaceForm kind() const { return kind_; }
  /// Only meaningful for the hyperbolic plane.
  constexpr HyperbolicModel model() const { return model_; }
  constexpr int curvature() const {
    return kind_ == SpaceForm::euclidean ? 0 : kind_ == SpaceForm::hyperbolic ? -1 : 1;
  }
  constexpr bool is_disk() const { return kind_ == SpaceForm::hyperbolic && model_ == HyperbolicModel::disk; }
  /// Number of stored coordinates: 2 for plane and disk, 3 otherwise.
  constexpr int dimension() const {
    return kind_ == SpaceForm::euclidean || is_disk() ? 2 : 3;
  }
  /// Same space form, regardless of the hyperbolic model.
  constexpr bool same_space(const Geometry& other) const { return kind_ == other.kind_; }

  std::string name() const;

  constexpr bool operator==(const Geometry&) const = default;

 private:
  constexpr Geometry(SpaceForm kind, HyperbolicModel model) : kind_(kind), model_(model) {}

  SpaceForm kind_;
  HyperbolicModel model_;
};

/// A point in the coordinates of one model. Plane and disk points keep z = 0.
class Point {
 public:
  static Point plane(double x, double y);
  /// Throws DomainError unless x^2 + y^2 < 1.
  static Point disk(double x, double y);
  /// Throws DomainError unless the point lies on the upper sheet.
  static Point hyperboloid(double x, double y, double z);
  /// Throws DomainError unless the point lies on the unit sphere.
  static Point sphere(double x, double y, double z);
  /// Builds a point of geometry g from raw coordinates, validating the model invariant.
  static Point from_coords(Geometry g, const std::vector<double>& coords);
  /// Origin of the plane or disk, pole (0,0,1) of the hyperboloid and sphere.
  static Point origin(Geometry g);
  /// Snaps an ambient vector back onto the model quadric (drift policy).
  static Point reproject(Geometry g, const Eigen::Vector3d& v);

  const Geometry& geometry() const { return geometry_; }
  const Eigen::Vector3d& coords() const { return coords_; }
  double operator[](int i) const { return coords_[i]; }
  std::vector<double> to_vector() const;

 private:
  Point(Geometry g, const Eigen::Vector3d& v) : geometry_(g), coords_(v) {}

  Geometry geometry_;
  Eigen::Vector3d coords_;
};

/// Minkowski form x1 y1 + x2 y2 - x3 y3.
double minkowski_dot(const Eigen::Vector3d& a, const Eigen::Vector3d& b);

Point disk_to_hyperboloid(const Point& p);
Point hyperboloid_to_disk(const Point& p);
/// Coordinates of a hyperbolic point on the hyperboloid, whatever its model.
Eigen::Vector3d hyperboloid_coords(const Point& p);

double distance(const Point& p, const Point& q);

/// Model (Euclidean) radius of a circle of intrinsic radius R centred at the
/// origin or pole: tanh(R/2) on the disk, sinh R on the hyperboloid, sin R on
/// the sphere, R in the plane.
double intrinsic_to_model_radius(Geometry g, double intrinsic);
/// Inverse of intrinsic_to_model_radius. On the sphere only the R <= pi/2
/// branch is returned.
double model_to_intrinsic_radius(Geometry g, double model_radius);

/// circumference / 2 pi: R, sinh R or sin R.
double length_factor(Geometry g, double intrinsic);
double circumference(Geometry g, double intrinsic);

class Isometry {
 public:
  static Isometry identity(Geometry g);
  /// Rotation by `angle` (counter-clockwise with respect to the ambient
  /// orientation) about `center`.
  static Isometry rotation_about(const Point& center, double angle);
  /// Transvection carrying the origin (pole) to p along the joining geodesic.
  /// On the sphere, points of the southern hemisphere are reached by first
  /// flipping the pole with a half-turn about the x axis.
  static Isometry carry_origin_to(const Point& p);

  Point apply(const Point& p) const;
  /// Action on tangent or normal vectors (the linear part of the map).
  Eigen::Vector3d apply_linear(const Eigen::Vector3d& v) const;
  /// this, followed by next.
  Isometry then(const Isometry& next) const;
  Isometry inverse() const;

  const Geometry& geometry() const { return geometry_; }
  const Eigen::Matrix3d& matrix() const { return matrix_; }

 private:
  Isometry(Geometry g, const Eigen::Matrix3d& m) : geometry_(g), matrix_(m) {}

  Geometry geometry_;
  Eigen::Matrix3d matrix_;
};

class Rotation {
 public:
  Rotation(Point center, double angle) : center_(std::move(center)), angle_(angle) {}

  const Point& center() const { return center_; }
  double angle() const { return angle_; }
  const Geometry& geometry() const { return center_.geometry(); }
  Isometry isometry() const { return Isometry::rotation_about(center_, angle_); }
  /// Angles add modulo 2 pi; both rotations must share the centre.
  Rotation compose(const Rotation& other) const;

 private:
  Point center_;
  double angle_;
};

Point rotate(const Rotation& rot, const Point& p);

/// Signed angle in (-pi, pi] at `center` from the geodesic towards `a` to the
/// geodesic towards `b`.
double oriented_angle(const Point& center, const Point& a, const Point& b);

class Circle {
 public:
  /// Throws DomainError for R <= 0, non-finite R, or R >= pi on the sphere.
  Circle(Point center, double radius);

  const Point& center() const { return center_; }
  double radius() const { return radius_; }
  const Geometry& geometry() const { return center_.geometry(); }

 private:
  Point center_;
  double radius_;
};

/// Point at angle theta on the circle, measured from the reference direction
/// of the transvection that carries the origin to the centre.
Point boundary_point(const Circle& c, double theta);

/// A complete geodesic. For the sphere and hyperbolic plane `normal` is the
/// unit normal (Euclidean resp. Minkowski) of the plane through the origin
/// that cuts the geodesic out of the quadric, always in ambient hyperboloid or
/// sphere coordinates. For the plane the line is normal . x = offset.
struct Geodesic {
  Geometry geometry;
  Eigen::Vector3d normal;
  double offset = 0.0;
};

/// Signed intrinsic distance from p to the geodesic; positive on the side the
/// normal points to.
double signed_distance(const Geodesic& g, const Point& p);

/// Closest point of the geodesic to p.
Point foot_point(const Geodesic& g, const Point& p);

/// Point on the geodesic segment from a to b at fraction s of its length.
Point geodesic_interpolate(const Point& a, const Point& b, double s);

struct TangentGeodesic {
  Geodesic line;
  Point contact_first;
  Point contact_second;
  bool crossed = false;
};

/// The two common tangent geodesics of two circles: outer tangents for open
/// belts, inner (crossing) tangents for crossed belts. Found by bisection on
/// the contact angle on the first circle.
std::vector<TangentGeodesic> tangent_geodesics(const Circle& first, const Circle& second,
                                               bool crossed = false);

/// max over both circles of |distance(center, geodesic) - R|.
double tangency_residual(const TangentGeodesic& t, const Circle& first, const Circle& second);

}  // namespace gearform
