#pragma once

// JSON scene documents.
//
//   {
//     "geometry": "euclidean" | "hyperbolic" | "spherical",
//     "model": "disk" | "hyperboloid",          (hyperbolic only, default disk)
//     "components": [{"id", "kind": "gear"|"pulley", "radius", "teeth", "center"}],
//     "links": [{"kind": "mesh"|"belt", "a", "b", "crossed"}],
//     "drive": {"id", "omega": number | {"step": h, "angles": [alpha_0 = 0, ...]}}
//   }
//
// Unknown fields are rejected. Centres use the natural coordinates of the
// model: 2-vectors in the plane and the disk, unit 3-vectors on the sphere,
// upper-sheet 3-vectors on the hyperboloid.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gearform/drivetrain.hpp"

namespace gearform {

enum class ComponentKind { gear, pulley };
enum class LinkKind { mesh, belt };

struct SceneComponent {
  std::string id;
  ComponentKind kind = ComponentKind::pulley;
  double radius = 0.0;
  std::optional<int> teeth;
  std::optional<std::vector<double>> center;

  bool operator==(const SceneComponent&) const = default;
};

struct SceneLink {
  LinkKind kind = LinkKind::belt;
  std::string a;
  std::string b;
  std::optional<bool> crossed;

  bool operator==(const SceneLink&) const = default;
};

struct SampledAngles {
  double step = 0.0;
  std::vector<double> angles;

  bool operator==(const SampledAngles&) const = default;
};

struct SceneDrive {
  std::string id;
  std::variant<double, SampledAngles> omega;

  bool operator==(const SceneDrive&) const = default;
};

struct SceneDocument {
  std::string geometry;
  std::optional<std::string> model;
  std::vector<SceneComponent> components;
  std::vector<SceneLink> links;
  std::optional<SceneDrive> drive;

  bool operator==(const SceneDocument&) const = default;
};

/// Parses and validates a scene. Throws SchemaError (malformed JSON reported
/// with line and column, schema violations with their JSON pointer path) or
/// ReferenceError (unknown or duplicate ids).
SceneDocument parse_scene(std::string_view text);
SceneDocument load_scene(const std::string& path);
std::string serialize_scene(const SceneDocument& doc);

Geometry scene_geometry(const SceneDocument& doc);
bool scene_has_centers(const SceneDocument& doc);
DrivetrainGraph build_graph(const SceneDocument& doc);
/// Throws SchemaError when the scene has no drive.
DriveSpec build_drive(const SceneDocument& doc);

}  // namespace gearform
