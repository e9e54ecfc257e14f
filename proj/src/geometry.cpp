#include "gearform/geometry.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gearform {

namespace {

constexpr double kPi = std::numbers::pi;

const Eigen::Matrix3d kMinkowski = Eigen::Vector3d(1.0, 1.0, -1.0).asDiagonal();

void require_same_space(const Geometry& a, const Geometry& b, const char* what) {
  if (!a.same_space(b)) {
    throw GeometryMismatch(std::string(what) + ": " + a.name() + " vs " + b.name());
  }
}

void require_finite(const Eigen::Vector3d& v) {
  if (!v.allFinite()) throw DomainError("non-finite coordinates");
}

Eigen::Matrix3d planar_rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix3d m;
  m << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
  return m;
}

// Ambient working vector: homogeneous (x, y, 1) for the plane, hyperboloid
// coordinates for the hyperbolic plane, unit vector for the sphere.
Eigen::Vector3d ambient(const Point& p) {
  switch (p.geometry().kind()) {
    case SpaceForm::euclidean:
      return {p[0], p[1], 1.0};
    case SpaceForm::hyperbolic:
      return hyperboloid_coords(p);
    case SpaceForm::spherical:
      break;
  }
  return p.coords();
}

// Inverse of ambient(), returning a point in the model of `like`.
Point from_ambient(const Geometry& like, const Eigen::Vector3d& v) {
  switch (like.kind()) {
    case SpaceForm::euclidean:
      return Point::plane(v[0], v[1]);
    case SpaceForm::hyperbolic: {
      Point h = Point::reproject(Geometry::hyperbolic(), v);
      return like.is_disk() ? hyperboloid_to_disk(h) : h;
    }
    case SpaceForm::spherical:
      break;
  }
  return Point::reproject(like, v);
}

void validate_intrinsic(const Geometry& g, double radius, bool allow_zero) {
  if (!std::isfinite(radius) || radius < 0.0 || (!allow_zero && radius == 0.0)) {
    throw DomainError("intrinsic radius must be " + std::string(allow_zero ? "non-negative" : "positive") +
                      " and finite");
  }
  if (g.kind() == SpaceForm::spherical && radius >= kPi) {
    throw DomainError("spherical radius must be below pi");
  }
}

}  // namespace

std::string Geometry::name() const {
  switch (kind_) {
    case SpaceForm::euclidean:
      return "euclidean";
    case SpaceForm::hyperbolic:
      return model_ == HyperbolicModel::disk ? "hyperbolic(disk)" : "hyperbolic(hyperboloid)";
    case SpaceForm::spherical:
      return "spherical";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Point

Point Point::plane(double x, double y) {
  Eigen::Vector3d v(x, y, 0.0);
  require_finite(v);
  return {Geometry::euclidean(), v};
}

Point Point::disk(double x, double y) {
  Eigen::Vector3d v(x, y, 0.0);
  require_finite(v);
  if (x * x + y * y >= 1.0) throw DomainError("disk point must satisfy |p| < 1");
  return {Geometry::hyperbolic(HyperbolicModel::disk), v};
}

Point Point::hyperboloid(double x, double y, double z) {
  Eigen::Vector3d v(x, y, z);
  require_finite(v);
  if (z <= 0.0) throw DomainError("hyperboloid point must lie on the upper sheet (z > 0)");
  const double residual = x * x + y * y - z * z + 1.0;
  if (std::abs(residual) > kModelTolerance * std::max(1.0, z * z)) {
    throw DomainError("hyperboloid point violates x^2 + y^2 - z^2 = -1");
  }
  return {Geometry::hyperbolic(HyperbolicModel::hyperboloid), v};
}

Point Point::sphere(double x, double y, double z) {
  Eigen::Vector3d v(x, y, z);
  require_finite(v);
  if (std::abs(v.squaredNorm() - 1.0) > kModelTolerance) {
    throw DomainError("sphere point must have unit norm");
  }
  return {Geometry::spherical(), v};
}

Point Point::from_coords(Geometry g, const std::vector<double>& c) {
  if (static_cast<int>(c.size()) != g.dimension()) {
    throw DomainError(g.name() + " points need " + std::to_string(g.dimension()) + " coordinates");
  }
  switch (g.kind()) {
    case SpaceForm::euclidean:
      return plane(c[0], c[1]);
    case SpaceForm::hyperbolic:
      return g.is_disk() ? disk(c[0], c[1]) : hyperboloid(c[0], c[1], c[2]);
    case SpaceForm::spherical:
      break;
  }
  return sphere(c[0], c[1], c[2]);
}

Point Point::origin(Geometry g) {
  if (g.dimension() == 2) return {g, Eigen::Vector3d::Zero()};
  return {g, Eigen::Vector3d::UnitZ()};
}

Point Point::reproject(Geometry g, const Eigen::Vector3d& v) {
  require_finite(v);
  switch (g.kind()) {
    case SpaceForm::euclidean:
      return {g, Eigen::Vector3d(v[0], v[1], 0.0)};
    case SpaceForm::hyperbolic:
      if (g.is_disk()) return disk(v[0], v[1]);
      return {g, Eigen::Vector3d(v[0], v[1], std::sqrt(1.0 + v[0] * v[0] + v[1] * v[1]))};
    case SpaceForm::spherical:
      break;
  }
  const double n = v.norm();
  if (n == 0.0) throw DomainError("cannot project the zero vector onto the sphere");
  return {g, v / n};
}

std::vector<double> Point::to_vector() const {
  if (geometry_.dimension() == 2) return {coords_[0], coords_[1]};
  return {coords_[0], coords_[1], coords_[2]};
}

// ---------------------------------------------------------------------------
// Models and distance

double minkowski_dot(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return a[0] * b[0] + a[1] * b[1] - a[2] * b[2];
}

Point disk_to_hyperboloid(const Point& p) {
  if (!p.geometry().is_disk()) throw GeometryMismatch("disk_to_hyperboloid expects a disk point");
  const double r2 = p[0] * p[0] + p[1] * p[1];
  if (r2 >= 1.0) throw DomainError("disk point must satisfy |p| < 1");
  const double scale = 1.0 / (1.0 - r2);
  return Point::reproject(Geometry::hyperbolic(),
                          Eigen::Vector3d(2.0 * p[0] * scale, 2.0 * p[1] * scale, (1.0 + r2) * scale));
}

Point hyperboloid_to_disk(const Point& p) {
  const Geometry& g = p.geometry();
  if (g.kind() != SpaceForm::hyperbolic || g.is_disk()) {
    throw GeometryMismatch("hyperboloid_to_disk expects a hyperboloid point");
  }
  const double s = 1.0 / (1.0 + p[2]);
  return Point::disk(p[0] * s, p[1] * s);
}

Eigen::Vector3d hyperboloid_coords(const Point& p) {
  if (p.geometry().kind() != SpaceForm::hyperbolic) {
    throw GeometryMismatch("expected a hyperbolic point, got " + p.geometry().name());
  }
  return p.geometry().is_disk() ? disk_to_hyperboloid(p).coords() : p.coords();
}

double distance(const Point& p, const Point& q) {
  require_same_space(p.geometry(), q.geometry(), "distance");
  switch (p.geometry().kind()) {
    case SpaceForm::euclidean:
      return (p.coords() - q.coords()).head<2>().norm();
    case SpaceForm::hyperbolic: {
      // cosh d = -<p,q> rewritten as sinh(d/2) = |p - q|_L / 2, which stays
      // accurate for nearby points.
      const Eigen::Vector3d diff = hyperboloid_coords(p) - hyperboloid_coords(q);
      const double chord2 = std::max(0.0, minkowski_dot(diff, diff));
      return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
    }
    case SpaceForm::spherical:
      break;
  }
  return std::atan2(p.coords().cross(q.coords()).norm(), p.coords().dot(q.coords()));
}

double intrinsic_to_model_radius(Geometry g, double intrinsic) {
  validate_intrinsic(g, intrinsic, true);
  switch (g.kind()) {
    case SpaceForm::euclidean:
      return intrinsic;
    case SpaceForm::hyperbolic:
      return g.is_disk() ? std::tanh(0.5 * intrinsic) : std::sinh(intrinsic);
    case SpaceForm::spherical:
      break;
  }
  return std::sin(intrinsic);
}

double model_to_intrinsic_radius(Geometry g, double r) {
  if (!std::isfinite(r) || r < 0.0) throw DomainError("model radius must be non-negative and finite");
  switch (g.kind()) {
    case SpaceForm::euclidean:
      return r;
    case SpaceForm::hyperbolic:
      if (g.is_disk()) {
        if (r >= 1.0) throw DomainError("disk radius must be below 1");
        return 2.0 * std::atanh(r);
      }
      return std::asinh(r);
    case SpaceForm::spherical:
      break;
  }
  if (r > 1.0) throw DomainError("spherical model radius must be at most 1");
  return std::asin(r);
}

double length_factor(Geometry g, double intrinsic) {
  validate_intrinsic(g, intrinsic, false);
  switch (g.kind()) {
    case SpaceForm::euclidean:
      return intrinsic;
    case SpaceForm::hyperbolic:
      return std::sinh(intrinsic);
    case SpaceForm::spherical:
      break;
  }
  return std::sin(intrinsic);
}

double circumference(Geometry g, double intrinsic) { return 2.0 * kPi * length_factor(g, intrinsic); }

// ---------------------------------------------------------------------------
// Isometries

Isometry Isometry::identity(Geometry g) { return {g, Eigen::Matrix3d::Identity()}; }

Isometry Isometry::rotation_about(const Point& center, double angle) {
  if (!std::isfinite(angle)) throw DomainError("rotation angle must be finite");
  const Isometry carry = carry_origin_to(center);
  const Eigen::Matrix3d m = carry.matrix_ * planar_rotation(angle) * carry.inverse().matrix_;
  return {center.geometry(), m};
}

Isometry Isometry::carry_origin_to(const Point& p) {
  const Geometry& g = p.geometry();
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  switch (g.kind()) {
    case SpaceForm::euclidean:
      m(0, 2) = p[0];
      m(1, 2) = p[1];
      return {g, m};
    case SpaceForm::hyperbolic: {
      // Lorentz boost along the geodesic from the pole to c.
      const Eigen::Vector3d c = hyperboloid_coords(p);
      const Eigen::Vector2d u = c.head<2>();
      m.topLeftCorner<2, 2>() += u * u.transpose() / (1.0 + c[2]);
      m.block<2, 1>(0, 2) = u;
      m.block<1, 2>(2, 0) = u.transpose();
      m(2, 2) = c[2];
      return {g, m};
    }
    case SpaceForm::spherical:
      break;
  }
  Eigen::Vector3d c = p.coords();
  const bool southern = c[2] < 0.0;
  const Eigen::Matrix3d flip = Eigen::Vector3d(1.0, -1.0, -1.0).asDiagonal();
  if (southern) c = flip * c;
  // Rotation about pole x c taking the pole to c.
  const Eigen::Vector2d u = c.head<2>();
  m.topLeftCorner<2, 2>() -= u * u.transpose() / (1.0 + c[2]);
  m.block<2, 1>(0, 2) = u;
  m.block<1, 2>(2, 0) = -u.transpose();
  m(2, 2) = c[2];
  if (southern) m = flip * m;
  return {g, m};
}

Point Isometry::apply(const Point& p) const {
  require_same_space(geometry_, p.geometry(), "isometry");
  return from_ambient(p.geometry(), matrix_ * ambient(p));
}

Eigen::Vector3d Isometry::apply_linear(const Eigen::Vector3d& v) const {
  if (geometry_.kind() == SpaceForm::euclidean) {
    Eigen::Vector3d out = Eigen::Vector3d::Zero();
    out.head<2>() = matrix_.topLeftCorner<2, 2>() * v.head<2>();
    return out;
  }
  return matrix_ * v;
}

Isometry Isometry::then(const Isometry& next) const {
  require_same_space(geometry_, next.geometry_, "isometry composition");
  return {geometry_, next.matrix_ * matrix_};
}

Isometry Isometry::inverse() const {
  switch (geometry_.kind()) {
    case SpaceForm::euclidean: {
      Eigen::Matrix3d inv = Eigen::Matrix3d::Identity();
      const Eigen::Matrix2d rt = matrix_.topLeftCorner<2, 2>().transpose();
      inv.topLeftCorner<2, 2>() = rt;
      inv.block<2, 1>(0, 2) = -rt * matrix_.block<2, 1>(0, 2);
      return {geometry_, inv};
    }
    case SpaceForm::hyperbolic:
      return {geometry_, kMinkowski * matrix_.transpose() * kMinkowski};
    case SpaceForm::spherical:
      break;
  }
  return {geometry_, matrix_.transpose()};
}

Rotation Rotation::compose(const Rotation& other) const {
  require_same_space(geometry(), other.geometry(), "rotation composition");
  if (distance(center_, other.center_) > kModelTolerance) {
    throw DomainError("composed rotations must share their centre");
  }
  return {center_, std::remainder(angle_ + other.angle_, 2.0 * kPi)};
}

Point rotate(const Rotation& rot, const Point& p) {
  require_same_space(rot.geometry(), p.geometry(), "rotate");
  return rot.isometry().apply(p);
}

double oriented_angle(const Point& center, const Point& a, const Point& b) {
  require_same_space(center.geometry(), a.geometry(), "oriented_angle");
  require_same_space(center.geometry(), b.geometry(), "oriented_angle");
  const Isometry to_origin = Isometry::carry_origin_to(center).inverse();
  auto direction = [&](const Point& p) -> Eigen::Vector2d {
    const Eigen::Vector3d local = ambient(to_origin.apply(p));
    const Eigen::Vector2d d = local.head<2>();
    if (d.norm() <= kModelTolerance) {
      if (center.geometry().kind() == SpaceForm::spherical && local[2] < 0.0) {
        throw AntipodalError("point is antipodal to the angle vertex");
      }
      throw DegenerateAngle("point coincides with the angle vertex");
    }
    return d;
  };
  const Eigen::Vector2d da = direction(a);
  const Eigen::Vector2d db = direction(b);
  const double angle = std::atan2(da.x() * db.y() - da.y() * db.x(), da.dot(db));
  return angle <= -kPi ? kPi : angle;
}

// ---------------------------------------------------------------------------
// Circles and geodesics

Circle::Circle(Point center, double radius) : center_(std::move(center)), radius_(radius) {
  validate_intrinsic(center_.geometry(), radius_, false);
}

Point boundary_point(const Circle& c, double theta) {
  const Geometry& g = c.geometry();
  const double R = c.radius();
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  Eigen::Vector3d local;
  switch (g.kind()) {
    case SpaceForm::euclidean:
      local = {R * ct, R * st, 1.0};
      break;
    case SpaceForm::hyperbolic:
      local = {std::sinh(R) * ct, std::sinh(R) * st, std::cosh(R)};
      break;
    case SpaceForm::spherical:
      local = {std::sin(R) * ct, std::sin(R) * st, std::cos(R)};
      break;
  }
  const Isometry carry = Isometry::carry_origin_to(c.center());
  return from_ambient(g, carry.matrix() * local);
}

double signed_distance(const Geodesic& line, const Point& p) {
  require_same_space(line.geometry, p.geometry(), "signed_distance");
  switch (p.geometry().kind()) {
    case SpaceForm::euclidean:
      return line.normal.head<2>().dot(p.coords().head<2>()) - line.offset;
    case SpaceForm::hyperbolic:
      return std::asinh(minkowski_dot(hyperboloid_coords(p), line.normal));
    case SpaceForm::spherical:
      break;
  }
  return std::asin(std::clamp(p.coords().dot(line.normal), -1.0, 1.0));
}

Point foot_point(const Geodesic& line, const Point& p) {
  require_same_space(line.geometry, p.geometry(), "foot_point");
  switch (p.geometry().kind()) {
    case SpaceForm::euclidean: {
      const double sd = signed_distance(line, p);
      return Point::plane(p[0] - sd * line.normal[0], p[1] - sd * line.normal[1]);
    }
    case SpaceForm::hyperbolic: {
      const Eigen::Vector3d x = hyperboloid_coords(p);
      Eigen::Vector3d q = x - minkowski_dot(x, line.normal) * line.normal;
      q /= std::sqrt(-minkowski_dot(q, q));
      return from_ambient(p.geometry(), q);
    }
    case SpaceForm::spherical:
      break;
  }
  const Eigen::Vector3d q = p.coords() - p.coords().dot(line.normal) * line.normal;
  return Point::reproject(p.geometry(), q);
}

Point geodesic_interpolate(const Point& a, const Point& b, double s) {
  require_same_space(a.geometry(), b.geometry(), "geodesic_interpolate");
  const double d = distance(a, b);
  const Eigen::Vector3d va = ambient(a);
  const Eigen::Vector3d vb = ambient(b);
  if (a.geometry().kind() == SpaceForm::euclidean || d < 1e-12) {
    return from_ambient(a.geometry(), (1.0 - s) * va + s * vb);
  }
  if (a.geometry().kind() == SpaceForm::hyperbolic) {
    const double sh = std::sinh(d);
    return from_ambient(a.geometry(), (std::sinh((1.0 - s) * d) / sh) * va + (std::sinh(s * d) / sh) * vb);
  }
  const double sn = std::sin(d);
  return from_ambient(a.geometry(), (std::sin((1.0 - s) * d) / sn) * va + (std::sin(s * d) / sn) * vb);
}

namespace {

// Normal (and offset, for the plane) of the geodesic tangent to the
// origin-centred circle of radius R at contact angle theta, pointing away
// from the centre.
Geodesic local_tangent(const Geometry& g, double R, double theta) {
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  Geodesic line{g, Eigen::Vector3d::Zero(), 0.0};
  switch (g.kind()) {
    case SpaceForm::euclidean:
      line.normal = {ct, st, 0.0};
      line.offset = R;
      break;
    case SpaceForm::hyperbolic:
      line.normal = {std::cosh(R) * ct, std::cosh(R) * st, std::sinh(R)};
      break;
    case SpaceForm::spherical:
      line.normal = {std::cos(R) * ct, std::cos(R) * st, -std::sin(R)};
      break;
  }
  return line;
}

}  // namespace

std::vector<TangentGeodesic> tangent_geodesics(const Circle& first, const Circle& second, bool crossed) {
  require_same_space(first.geometry(), second.geometry(), "tangent_geodesics");
  const Geometry g = first.geometry();
  if (g.kind() == SpaceForm::spherical && (first.radius() >= kPi / 2 || second.radius() >= kPi / 2)) {
    throw NoTangentExists("spherical tangent geodesics need radii below pi/2");
  }
  const Isometry carry = Isometry::carry_origin_to(first.center());
  const Point other = carry.inverse().apply(second.center());
  Eigen::Vector3d local_other = ambient(other);
  if (local_other.head<2>().norm() <= kModelTolerance) {
    throw NoTangentExists("circles are concentric");
  }
  const double theta0 = std::atan2(local_other[1], local_other[0]);
  // Work in the frame of the first circle with the ambient model of the
  // computation (hyperboloid for both hyperbolic models).
  const Geometry work = g.kind() == SpaceForm::hyperbolic ? Geometry::hyperbolic() : g;
  const Point other_work = g.is_disk() ? disk_to_hyperboloid(other) : other;
  const double target = crossed ? second.radius() : -second.radius();

  // f decreases monotonically in phi on [0, pi].
  auto f = [&](double phi) {
    return signed_distance(local_tangent(work, first.radius(), theta0 + phi), other_work) - target;
  };
  double lo = 0.0;
  double hi = kPi;
  if (!(f(lo) > 0.0 && f(hi) < 0.0)) {
    throw NoTangentExists(crossed ? "no inner tangent: circles are not disjoint"
                                  : "no outer tangent: one circle encloses the other");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  const double phi = 0.5 * (lo + hi);

  std::vector<TangentGeodesic> out;
  for (double theta : {theta0 + phi, theta0 - phi}) {
    Geodesic local = local_tangent(work, first.radius(), theta);
    Geodesic line{g, carry.apply_linear(local.normal), local.offset};
    if (g.kind() == SpaceForm::euclidean) {
      line.offset += line.normal.head<2>().dot(first.center().coords().head<2>());
    }
    out.push_back({line, foot_point(line, first.center()), foot_point(line, second.center()), crossed});
  }
  return out;
}

double tangency_residual(const TangentGeodesic& t, const Circle& first, const Circle& second) {
  const double r1 = std::abs(std::abs(signed_distance(t.line, first.center())) - first.radius());
  const double r2 = std::abs(std::abs(signed_distance(t.line, second.center())) - second.radius());
  return std::max(r1, r2);
}

}  // namespace gearform
