#include "gearform/kinematics.hpp"

#include <cmath>
#include <numbers>

namespace gearform {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Gear::Gear(Circle circle, int teeth, int orientation)
    : circle_(std::move(circle)), teeth_(teeth), orientation_(orientation) {
  if (teeth_ < 3) throw DomainError("a gear needs at least 3 teeth");
  if (orientation_ != 1 && orientation_ != -1) throw DomainError("gear orientation must be +1 or -1");
}

double Gear::tooth_arc_length() const {
  return circumference(circle_.geometry(), circle_.radius()) / teeth_;
}

WindingMap::WindingMap(std::vector<std::int64_t> values, int teeth) : values_(std::move(values)), teeth_(teeth) {
  if (teeth_ < 1) throw DomainError("winding map needs a positive tooth count");
  if (values_.empty() || values_.front() != 0) throw DomainError("winding maps start at sigma(0) = 0");
}

GearMovement winding_to_movement(const WindingMap& sigma) {
  GearMovement m;
  m.teeth = sigma.teeth();
  m.residue.reserve(sigma.size());
  m.full_turns.reserve(sigma.size());
  for (std::int64_t s : sigma.values()) {
    const std::int64_t turns = floor_div(s, sigma.teeth());
    m.full_turns.push_back(turns);
    m.residue.push_back(s - turns * sigma.teeth());
  }
  return m;
}

WindingMap movement_to_winding(const GearMovement& movement) {
  if (movement.residue.size() != movement.full_turns.size()) {
    throw DomainError("gear movement residue and full-turn sequences differ in length");
  }
  std::vector<std::int64_t> values;
  values.reserve(movement.residue.size());
  for (std::size_t t = 0; t < movement.residue.size(); ++t) {
    values.push_back(movement.residue[t] + movement.teeth * movement.full_turns[t]);
  }
  return {std::move(values), movement.teeth};
}

RotationMovement rotation_movement(const Gear& gear, const GearMovement& movement) {
  if (movement.teeth != gear.teeth()) throw DomainError("movement and gear disagree on tooth count");
  RotationMovement out;
  out.full_turns = movement.full_turns;
  for (std::int64_t g : movement.residue) {
    const double angle = gear.orientation() * kTwoPi * static_cast<double>(g) / gear.teeth();
    out.rotations.emplace_back(gear.circle().center(), angle);
  }
  return out;
}

WindingMap winding_map(const Gear& gear, const RotationMovement& movement, const Point& p) {
  if (movement.rotations.size() != movement.full_turns.size()) {
    throw DomainError("rotation movement sequences differ in length");
  }
  const Point& center = gear.circle().center();
  const int n = gear.teeth();
  std::vector<std::int64_t> values;
  values.reserve(movement.rotations.size());
  for (std::size_t t = 0; t < movement.rotations.size(); ++t) {
    double delta = gear.orientation() * oriented_angle(center, p, rotate(movement.rotations[t], p));
    if (delta < 0.0) delta += kTwoPi;
    const double teeth = delta * n / kTwoPi;
    std::int64_t k = std::llround(teeth);
    if (std::abs(teeth - static_cast<double>(k)) > 1e-6) {
      throw DomainError("rotation at step " + std::to_string(t) + " does not map teeth onto teeth");
    }
    if (k == n) k = 0;
    values.push_back(k + n * movement.full_turns[t]);
  }
  return {std::move(values), n};
}

Rational gear_angular_velocity_turns(const WindingMap& sigma, std::size_t t) {
  if (t == 0) throw UndefinedAtZero("gear angular velocity is undefined at t = 0");
  if (t >= sigma.size()) throw DomainError("time step beyond the winding map");
  return Rational(sigma[t], static_cast<std::int64_t>(sigma.teeth()) * static_cast<std::int64_t>(t));
}

double gear_angular_velocity(const WindingMap& sigma, std::size_t t) {
  const Rational turns = gear_angular_velocity_turns(sigma, t);
  return kTwoPi * static_cast<double>(turns.numerator()) / static_cast<double>(turns.denominator());
}

// ---------------------------------------------------------------------------
// AngleFunction

AngleFunction AngleFunction::constant_rate(double omega) {
  if (!std::isfinite(omega)) throw DomainError("angular rate must be finite");
  return AngleFunction(ConstantRate{omega});
}

AngleFunction AngleFunction::polynomial(std::vector<double> coefficients) {
  if (!coefficients.empty() && coefficients.front() != 0.0) {
    throw DomainError("angle polynomial must vanish at t = 0");
  }
  return AngleFunction(Polynomial{std::move(coefficients)});
}

AngleFunction AngleFunction::sampled(std::vector<double> values, double step) {
  if (values.size() < 3) throw InsufficientData("sampled angle function needs at least 3 samples");
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("sample step must be positive");
  if (std::abs(values.front()) > kModelTolerance) throw DomainError("sampled angle must start at 0");
  return AngleFunction(Sampled{std::move(values), step});
}

AngleFunction AngleFunction::custom(std::function<double(double)> value, std::function<double(double)> derivative) {
  if (!value || !derivative) throw DomainError("custom angle function needs value and derivative");
  if (std::abs(value(0.0)) > kModelTolerance) throw DomainError("angle function must vanish at t = 0");
  return AngleFunction(Custom{std::move(value), std::move(derivative)});
}

double AngleFunction::sampled_derivative_at(std::size_t k) const {
  const auto& s = std::get<Sampled>(form_);
  const auto& v = s.values;
  const std::size_t last = v.size() - 1;
  if (k == 0) return (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * s.step);
  if (k == last) return (3.0 * v[last] - 4.0 * v[last - 1] + v[last - 2]) / (2.0 * s.step);
  return (v[k + 1] - v[k - 1]) / (2.0 * s.step);
}

namespace {

// Index and fraction of t on the sample grid; throws outside [0, (n-1) h].
std::pair<std::size_t, double> locate(double t, double step, std::size_t count) {
  const double span = step * static_cast<double>(count - 1);
  if (!(t >= 0.0) || t > span * (1.0 + 1e-12)) throw DomainError("time outside the sampled range");
  double x = t / step;
  auto k = static_cast<std::size_t>(std::floor(x));
  if (k >= count - 1) {
    k = count - 2;
  }
  return {k, x - static_cast<double>(k)};
}

}  // namespace

double AngleFunction::value(double t) const {
  return std::visit(Overloaded{
                        [&](const ConstantRate& c) { return c.omega * t; },
                        [&](const Polynomial& p) {
                          double acc = 0.0;
                          for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) {
                            acc = acc * t + *it;
                          }
                          return acc;
                        },
                        [&](const Sampled& s) {
                          auto [k, frac] = locate(t, s.step, s.values.size());
                          return s.values[k] + frac * (s.values[k + 1] - s.values[k]);
                        },
                        [&](const Custom& c) { return c.value(t); },
                    },
                    form_);
}

double AngleFunction::derivative(double t) const {
  return std::visit(Overloaded{
                        [&](const ConstantRate& c) { return c.omega; },
                        [&](const Polynomial& p) {
                          double acc = 0.0;
                          for (std::size_t k = p.coefficients.size(); k-- > 1;) {
                            acc = acc * t + static_cast<double>(k) * p.coefficients[k];
                          }
                          return acc;
                        },
                        [&](const Sampled& s) {
                          auto [k, frac] = locate(t, s.step, s.values.size());
                          const double d0 = sampled_derivative_at(k);
                          if (frac == 0.0) return d0;
                          return d0 + frac * (sampled_derivative_at(k + 1) - d0);
                        },
                        [&](const Custom& c) { return c.derivative(t); },
                    },
                    form_);
}

std::optional<double> AngleFunction::duration() const {
  if (const auto* s = std::get_if<Sampled>(&form_)) {
    return s->step * static_cast<double>(s->values.size() - 1);
  }
  return std::nullopt;
}

std::optional<double> AngleFunction::constant_derivative() const {
  if (const auto* c = std::get_if<ConstantRate>(&form_)) return c->omega;
  if (const auto* p = std::get_if<Polynomial>(&form_)) {
    if (p->coefficients.size() <= 2) return p->coefficients.size() == 2 ? p->coefficients[1] : 0.0;
  }
  return std::nullopt;
}

const std::vector<double>* AngleFunction::samples() const {
  if (const auto* s = std::get_if<Sampled>(&form_)) return &s->values;
  return nullptr;
}

double AngleFunction::sample_step() const {
  if (const auto* s = std::get_if<Sampled>(&form_)) return s->step;
  return 0.0;
}

double signed_pulley_angular_velocity(const AngleFunction& alpha, double t) { return alpha.derivative(t); }

double pulley_angular_velocity(const AngleFunction& alpha, double t) { return std::abs(alpha.derivative(t)); }

std::vector<Point> BoundaryTrajectory::sample(double step, std::size_t count) const {
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(at(step * static_cast<double>(k)));
  return out;
}

BoundaryTrajectory boundary_trajectory(const Circle& c, const AngleFunction& alpha) { return {c, alpha}; }

double linear_speed(const Circle& c, const AngleFunction& alpha, double t) {
  return length_factor(c.geometry(), c.radius()) * std::abs(alpha.derivative(t));
}

}  // namespace gearform
