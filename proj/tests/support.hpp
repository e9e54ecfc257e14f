#pragma once

// Seeded generators shared by the property tests.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "gearform/geometry.hpp"

namespace gearform::testing {

inline constexpr double kPi = std::numbers::pi;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  double angle() { return uniform(-kPi, kPi); }

  /// Point at intrinsic distance at most `spread` from the origin or pole.
  Point point(Geometry g, double spread = 2.0) {
    const double r = uniform(0.0, spread);
    const double th = angle();
    switch (g.kind()) {
      case SpaceForm::euclidean:
        return Point::plane(r * std::cos(th), r * std::sin(th));
      case SpaceForm::hyperbolic: {
        const double rho = std::tanh(0.5 * r);
        const Point d = Point::disk(rho * std::cos(th), rho * std::sin(th));
        return g.is_disk() ? d : disk_to_hyperboloid(d);
      }
      case SpaceForm::spherical:
        break;
    }
    const double s = std::min(r, kPi - 1e-3);
    return Point::sphere(std::sin(s) * std::cos(th), std::sin(s) * std::sin(th), std::cos(s));
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline double relative_error(double value, double expected) { return std::abs(value - expected) / std::abs(expected); }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

#ifdef GEARFORM_SCENES_DIR
inline std::string scene_path(const std::string& name) { return std::string(GEARFORM_SCENES_DIR) + "/" + name; }
#endif

}  // namespace gearform::testing
