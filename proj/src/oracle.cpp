#include "gearform/oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace gearform::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

// Bisection for an increasing function with f(lo) < 0 < f(hi).
template <class F>
double bisect_increasing(F f, double lo, double hi) {
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Point pole_frame_point(Geometry g, double x) {
  switch (g.kind()) {
    case SpaceForm::euclidean:
      return Point::plane(x, 0.0);
    case SpaceForm::hyperbolic:
      return g.is_disk() ? Point::disk(x, 0.0) : Point::hyperboloid(x, 0.0, std::sqrt(1.0 + x * x));
    case SpaceForm::spherical:
      break;
  }
  return Point::sphere(std::sqrt(std::max(0.0, 1.0 - x * x)), 0.0, x);
}

}  // namespace

SampledTrajectory::SampledTrajectory(double h, std::vector<Point> pts) : step(h), points(std::move(pts)) {
  if (!(step > 0.0)) throw DomainError("trajectory step must be positive");
  if (points.size() < 3) throw InsufficientData("sampled trajectory needs at least 3 samples");
  for (const Point& p : points) {
    if (!(p.geometry() == points.front().geometry())) {
      throw GeometryMismatch("trajectory samples mix geometries or models");
    }
  }
}

double metric_norm(const Point& p, const Eigen::Vector3d& v) {
  const Geometry& g = p.geometry();
  if (g.is_disk()) {
    const double r2 = p.coords().head<2>().squaredNorm();
    return 2.0 * v.head<2>().norm() / (1.0 - r2);
  }
  if (g.kind() == SpaceForm::hyperbolic) {
    return std::sqrt(std::max(0.0, minkowski_dot(v, v)));
  }
  if (g.kind() == SpaceForm::euclidean) return v.head<2>().norm();
  return v.norm();
}

double bisect_model_radius(Geometry g, double intrinsic, double* height) {
  if (!(intrinsic >= 0.0) || !std::isfinite(intrinsic)) throw DomainError("intrinsic radius must be non-negative");
  const Point origin = Point::origin(g);
  if (g.kind() == SpaceForm::spherical) {
    if (intrinsic >= kPi) throw DomainError("spherical radius must be below pi");
    // Distance from the pole decreases with the height z of the circle plane.
    const double z = bisect_increasing(
        [&](double zz) { return intrinsic - distance(origin, pole_frame_point(g, zz)); }, -1.0, 1.0);
    if (height) *height = z;
    return std::sqrt(std::max(0.0, 1.0 - z * z));
  }
  auto f = [&](double x) { return distance(origin, pole_frame_point(g, x)) - intrinsic; };
  double hi = 1.0;
  if (g.is_disk()) {
    hi = std::nextafter(1.0, 0.0);
  } else {
    while (f(hi) < 0.0) hi *= 2.0;
  }
  const double x = bisect_increasing(f, 0.0, hi);
  if (height) *height = g.kind() == SpaceForm::hyperbolic && !g.is_disk() ? std::sqrt(1.0 + x * x) : 0.0;
  return x;
}

double numeric_circumference(const Circle& c, int samples) {
  if (samples < 16) throw DomainError("numeric circumference needs at least 16 samples");
  const Geometry& g = c.geometry();
  const double rho = bisect_model_radius(g, c.radius());
  const double dtheta = 2.0 * kPi / samples;

  double sum = 0.0;
  if (g.kind() == SpaceForm::euclidean) {
    // Translation leaves |d/dtheta| = rho.
    for (int k = 0; k < samples; ++k) sum += rho;
  } else if (g.is_disk()) {
    // Moebius image z -> (z + a) / (1 + conj(a) z) of the centred circle.
    const std::complex<double> a(c.center()[0], c.center()[1]);
    const double shrink = 1.0 - std::norm(a);
    for (int k = 0; k < samples; ++k) {
      const std::complex<double> zeta = std::polar(rho, k * dtheta);
      const std::complex<double> denom = 1.0 + std::conj(a) * zeta;
      const std::complex<double> image = (zeta + a) / denom;
      const double speed = shrink / std::norm(denom) * rho;  // |T'(zeta)| |zeta'|
      sum += 2.0 * speed / (1.0 - std::norm(image));
    }
  } else {
    const Eigen::Matrix3d m = Isometry::carry_origin_to(c.center()).matrix();
    for (int k = 0; k < samples; ++k) {
      const double th = k * dtheta;
      const Eigen::Vector3d velocity = m * Eigen::Vector3d(-rho * std::sin(th), rho * std::cos(th), 0.0);
      const Point at = boundary_point(c, th);
      sum += metric_norm(at, velocity);
    }
  }
  return sum * dtheta;
}

FdEstimate fd_linear_speed(const SampledTrajectory& traj, std::size_t i) {
  const auto& p = traj.points;
  const std::size_t n = p.size();
  if (i >= n) throw DomainError("trajectory index out of range");
  if (i == 0) return {metric_norm(p[0], (p[1].coords() - p[0].coords()) / traj.step), 1};
  if (i == n - 1) return {metric_norm(p[i], (p[i].coords() - p[i - 1].coords()) / traj.step), 1};
  return {metric_norm(p[i], (p[i + 1].coords() - p[i - 1].coords()) / (2.0 * traj.step)), 2};
}

std::vector<double> unwrapped_angles(const SampledTrajectory& traj, const Point& center) {
  std::vector<double> out(traj.points.size(), 0.0);
  for (std::size_t k = 1; k < traj.points.size(); ++k) {
    // Each increment lies in (-pi, pi]; accumulating them follows one branch.
    out[k] = out[k - 1] + oriented_angle(center, traj.points[k - 1], traj.points[k]);
  }
  return out;
}

FdEstimate fd_angular_velocity(const SampledTrajectory& traj, const Point& center, std::size_t i) {
  const std::size_t n = traj.points.size();
  if (i >= n) throw DomainError("trajectory index out of range");
  if (i == 0) return {std::abs(oriented_angle(center, traj.points[0], traj.points[1])) / traj.step, 1};
  if (i == n - 1) {
    return {std::abs(oriented_angle(center, traj.points[i - 1], traj.points[i])) / traj.step, 1};
  }
  const double swept = oriented_angle(center, traj.points[i - 1], traj.points[i]) +
                       oriented_angle(center, traj.points[i], traj.points[i + 1]);
  return {std::abs(swept) / (2.0 * traj.step), 2};
}

namespace {

// Residue and full-turn counters of a gear advanced one tooth at a time.
struct ToothCounter {
  int teeth;
  std::int64_t tooth = 0;
  std::int64_t turns = 0;

  void push(int direction) {
    tooth += direction;
    if (tooth == teeth) {
      tooth = 0;
      ++turns;
    } else if (tooth < 0) {
      tooth = teeth - 1;
      --turns;
    }
  }
  std::int64_t winding() const { return tooth + static_cast<std::int64_t>(teeth) * turns; }
};

}  // namespace

std::pair<WindingMap, WindingMap> tooth_simulator(int first_teeth, int second_teeth,
                                                  std::span<const std::int64_t> drive_teeth) {
  if (first_teeth < 3 || second_teeth < 3) throw DomainError("gears need at least 3 teeth");
  ToothCounter driver{first_teeth};
  ToothCounter driven{second_teeth};
  std::vector<std::int64_t> s1{0};
  std::vector<std::int64_t> s2{0};
  for (std::int64_t k : drive_teeth) {
    const int direction = k < 0 ? -1 : 1;
    for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) {
      driver.push(direction);
      // The pushed tooth of the driver moves the engaged tooth of the driven
      // gear on by one position.
      driven.push(direction);
    }
    s1.push_back(driver.winding());
    s2.push_back(driven.winding());
  }
  return {WindingMap(std::move(s1), first_teeth), WindingMap(std::move(s2), second_teeth)};
}

namespace {

// Metric length of the chord from `from` to `to`. The disk metric is taken
// at the chord midpoint; the other models measure the secant directly.
double chord_length(const Point& from, const Point& to) {
  const Eigen::Vector3d diff = to.coords() - from.coords();
  if (from.geometry().is_disk()) {
    const Eigen::Vector3d mid = 0.5 * (from.coords() + to.coords());
    return metric_norm(Point::disk(mid[0], mid[1]), diff);
  }
  return metric_norm(from, diff);
}

double polygon_length(const Circle& c, double a, double b, int pieces) {
  double sum = 0.0;
  Point prev = boundary_point(c, a);
  for (int i = 1; i <= pieces; ++i) {
    const Point next = boundary_point(c, a + (b - a) * i / pieces);
    sum += chord_length(prev, next);
    prev = next;
  }
  return sum;
}

// Length of the boundary arc between contact angles a and b: inscribed
// polygons with 64 and 128 sides, Richardson-extrapolated.
double arc_length(const Circle& c, double a, double b) {
  const double coarse = polygon_length(c, a, b, 64);
  const double fine = polygon_length(c, a, b, 128);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

AngleFunction belt_simulator(const Circle& first, const Circle& second, const AngleFunction& first_alpha,
                             double step, std::size_t steps) {
  if (!first.geometry().same_space(second.geometry())) throw GeometryMismatch("belt pulleys differ in geometry");
  if (!(step > 0.0)) throw DomainError("belt simulation step must be positive");
  if (steps < 2) throw InsufficientData("belt simulation needs at least 2 steps");

  std::vector<double> second_alpha{0.0};
  second_alpha.reserve(steps + 1);
  double a_prev = first_alpha.value(0.0);
  for (std::size_t k = 0; k < steps; ++k) {
    const double a_next = first_alpha.value(static_cast<double>(k + 1) * step);
    const double budget = arc_length(first, a_prev, a_next);
    const double direction = a_next >= a_prev ? 1.0 : -1.0;
    const double beta = second_alpha.back();
    auto consumed = [&](double delta) { return arc_length(second, beta, beta + direction * delta) - budget; };
    double delta = 0.0;
    if (budget > 0.0) {
      double hi = kPi / 2;
      while (consumed(hi) < 0.0) {
        if (hi > 64 * kPi) throw DomainError("belt step too coarse for the second pulley");
        hi *= 2.0;
      }
      delta = bisect_increasing(consumed, 0.0, hi);
    }
    second_alpha.push_back(beta + direction * delta);
    a_prev = a_next;
  }
  return AngleFunction::sampled(std::move(second_alpha), step);
}

}  // namespace gearform::oracle
