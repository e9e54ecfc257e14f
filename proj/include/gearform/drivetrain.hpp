#pragma once

// Drivetrain graphs: gears and pulleys coupled by meshes and belts.
//
// Sign conventions: meshed gears counter-rotate, open belts co-rotate and
// crossed belts counter-rotate. Magnitudes follow the transfer laws
// n_a w_a = n_b w_b (meshes) and s(R_a) w_a = s(R_b) w_b (belts), where
// s is the length factor of the geometry (R, sinh R or sin R).

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gearform/kinematics.hpp"

namespace gearform {

/// Consistency tolerance on cycle ratio products.
inline constexpr double kCycleTolerance = 1e-9;
/// Relative tolerance of the pitch and absolute tolerance of the placement check.
inline constexpr double kMeshTolerance = 1e-9;

struct Component {
  std::string id;
  std::variant<Gear, Pulley> part;
  /// False when the scene gave no centre; placement checks are skipped.
  bool placed = true;

  const Circle& circle() const;
  bool is_gear() const { return std::holds_alternative<Gear>(part); }
  const Gear& gear() const { return std::get<Gear>(part); }
};

enum class CouplingKind { mesh, belt };

struct Coupling {
  std::string a;
  std::string b;
  CouplingKind kind = CouplingKind::mesh;
  bool crossed = false;
};

class DrivetrainGraph {
 public:
  /// Throws InvalidGraph for duplicate ids, unknown endpoints, self loops,
  /// meshes between non-gears, or components of another geometry.
  DrivetrainGraph(Geometry geometry, std::vector<Component> components, std::vector<Coupling> couplings);

  const Geometry& geometry() const { return geometry_; }
  const std::vector<Component>& components() const { return components_; }
  const std::vector<Coupling>& couplings() const { return couplings_; }
  const Component& component(const std::string& id) const;
  std::size_t index_of(const std::string& id) const;
  /// Coupling indices touching each component.
  const std::vector<std::size_t>& incident(std::size_t node) const { return incident_[node]; }

 private:
  Geometry geometry_;
  std::vector<Component> components_;
  std::vector<Coupling> couplings_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> incident_;
};

/// Signed factor k with w_other = k * w_from across one coupling.
double coupling_ratio(const DrivetrainGraph& graph, std::size_t coupling, const std::string& from);

struct MeshReport {
  double pitch_first = 0.0;
  double pitch_second = 0.0;
  /// |a1 - a2| / a1.
  double pitch_residual = 0.0;
  bool pitch_ok = false;
  /// |d(c1, c2) - (R1 + R2)|, absent when positions were not checked.
  std::optional<double> placement_residual;
  bool placement_ok = true;

  bool ok() const { return pitch_ok && placement_ok; }
};

MeshReport validate_mesh(const Gear& first, const Gear& second, bool check_placement = true);

struct DriveSpec {
  std::string node;
  std::variant<double, AngleFunction> motion;

  static DriveSpec constant(std::string node, double omega) { return {std::move(node), omega}; }
  static DriveSpec varying(std::string node, AngleFunction alpha) { return {std::move(node), std::move(alpha)}; }
};

struct CycleResidual {
  std::size_t coupling = 0;
  std::string a;
  std::string b;
  /// |k * ratio(a) / ratio(b) - 1| for the coupling closing the cycle.
  double residual = 0.0;
};

struct Solution {
  DriveSpec drive;
  std::vector<std::string> ids;
  /// w_node = ratio[node] * w_drive.
  std::map<std::string, double> ratio;
  std::vector<CycleResidual> cycles;

  /// Signed angular velocity of a node at time t.
  double omega(const std::string& id, double t = 0.0) const;
};

struct PropagateOptions {
  /// Reject meshes whose pitches differ (MeshInvalid) before propagating.
  bool validate_meshes = true;
};

/// Throws MeshInvalid, DisconnectedComponent (unreached ids listed) or
/// InconsistentCycle (closing coupling named).
Solution propagate(const DrivetrainGraph& graph, const DriveSpec& drive, PropagateOptions options = {});

/// w_to = ratio * w_from along any path. Throws NoPath.
double gear_ratio(const DrivetrainGraph& graph, const std::string& from, const std::string& to);

/// Residual of every cycle-closing coupling of a spanning forest, without throwing.
std::vector<CycleResidual> cycle_residuals(const DrivetrainGraph& graph);

struct AngleSeries {
  std::vector<std::string> ids;
  std::vector<double> times;
  /// angles[node][k] at times[k].
  std::vector<std::vector<double>> angles;
};

/// theta_i(t) on t = 0, step, 2 step, ... <= duration. Constant drives give
/// theta_i = w_i t exactly; time-varying drives integrate alpha' with the
/// trapezoidal rule. Throws InvalidStep for step <= 0 or negative duration.
AngleSeries simulate(const DrivetrainGraph& graph, const DriveSpec& drive, double duration, double step);

}  // namespace gearform
