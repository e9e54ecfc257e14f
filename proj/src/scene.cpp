#include "gearform/scene.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"

namespace gearform {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw SchemaError((path.empty() ? std::string("/") : path) + ": " + message);
}

void allow_only(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) fail(path + "/" + key, "unknown field");
  }
}

const json& require(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  std::string s = v.get<std::string>();
  if (s.empty()) fail(path, "must not be empty");
  return s;
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, "must be finite");
  return x;
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Geometry geometry_from(const std::string& name, const std::optional<std::string>& model) {
  if (name == "euclidean") return Geometry::euclidean();
  if (name == "spherical") return Geometry::spherical();
  return Geometry::hyperbolic(model && *model == "hyperboloid" ? HyperbolicModel::hyperboloid
                                                              : HyperbolicModel::disk);
}

SceneComponent parse_component(const json& v, const std::string& path, const Geometry& g) {
  if (!v.is_object()) fail(path, "expected an object");
  allow_only(v, path, {"id", "kind", "radius", "teeth", "center"});
  SceneComponent c;
  c.id = get_string(require(v, path, "id"), path + "/id");
  const std::string kind = get_string(require(v, path, "kind"), path + "/kind");
  if (kind == "gear") {
    c.kind = ComponentKind::gear;
  } else if (kind == "pulley") {
    c.kind = ComponentKind::pulley;
  } else {
    fail(path + "/kind", "expected \"gear\" or \"pulley\"");
  }
  c.radius = get_number(require(v, path, "radius"), path + "/radius");
  if (c.radius <= 0.0) fail(path + "/radius", "radius must be positive");
  if (g.kind() == SpaceForm::spherical && c.radius >= std::numbers::pi) {
    fail(path + "/radius", "spherical radius must be below pi");
  }
  if (auto it = v.find("teeth"); it != v.end()) {
    if (c.kind == ComponentKind::pulley) fail(path + "/teeth", "pulleys have no teeth");
    if (!it->is_number_integer()) fail(path + "/teeth", "expected an integer");
    const auto teeth = it->get<std::int64_t>();
    if (teeth < 3 || teeth > 1000000) fail(path + "/teeth", "a gear needs between 3 and 10^6 teeth");
    c.teeth = static_cast<int>(teeth);
  } else if (c.kind == ComponentKind::gear) {
    fail(path, "gears need a \"teeth\" field");
  }
  if (auto it = v.find("center"); it != v.end()) {
    const std::string cpath = path + "/center";
    if (!it->is_array()) fail(cpath, "expected an array of coordinates");
    std::vector<double> coords;
    for (std::size_t i = 0; i < it->size(); ++i) coords.push_back(get_number((*it)[i], cpath + "/" + std::to_string(i)));
    try {
      (void)Point::from_coords(g, coords);
    } catch (const DomainError& e) {
      fail(cpath, e.what());
    }
    c.center = std::move(coords);
  }
  return c;
}

SceneLink parse_link(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  allow_only(v, path, {"kind", "a", "b", "crossed"});
  SceneLink l;
  const std::string kind = get_string(require(v, path, "kind"), path + "/kind");
  if (kind == "mesh") {
    l.kind = LinkKind::mesh;
  } else if (kind == "belt") {
    l.kind = LinkKind::belt;
  } else {
    fail(path + "/kind", "expected \"mesh\" or \"belt\"");
  }
  l.a = get_string(require(v, path, "a"), path + "/a");
  l.b = get_string(require(v, path, "b"), path + "/b");
  if (auto it = v.find("crossed"); it != v.end()) {
    if (!it->is_boolean()) fail(path + "/crossed", "expected a boolean");
    if (l.kind == LinkKind::mesh) fail(path + "/crossed", "only belts can be crossed");
    l.crossed = it->get<bool>();
  }
  return l;
}

SceneDrive parse_drive(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  allow_only(v, path, {"id", "omega"});
  SceneDrive d;
  d.id = get_string(require(v, path, "id"), path + "/id");
  const json& omega = require(v, path, "omega");
  const std::string opath = path + "/omega";
  if (omega.is_number()) {
    d.omega = get_number(omega, opath);
    return d;
  }
  if (!omega.is_object()) fail(opath, "expected a number or a sampled series");
  allow_only(omega, opath, {"step", "angles"});
  SampledAngles s;
  s.step = get_number(require(omega, opath, "step"), opath + "/step");
  if (s.step <= 0.0) fail(opath + "/step", "step must be positive");
  const json& angles = require(omega, opath, "angles");
  if (!angles.is_array()) fail(opath + "/angles", "expected an array");
  for (std::size_t i = 0; i < angles.size(); ++i) {
    s.angles.push_back(get_number(angles[i], opath + "/angles/" + std::to_string(i)));
  }
  if (s.angles.size() < 3) fail(opath + "/angles", "need at least 3 samples");
  if (s.angles.front() != 0.0) fail(opath + "/angles/0", "angle series must start at 0");
  d.omega = std::move(s);
  return d;
}

}  // namespace

SceneDocument parse_scene(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, column] = line_and_column(text, e.byte);
    std::ostringstream msg;
    msg << "line " << line << ", column " << column << ": malformed JSON";
    throw SchemaError(msg.str());
  }
  if (!root.is_object()) fail("", "scene must be a JSON object");
  allow_only(root, "", {"geometry", "model", "components", "links", "drive"});

  SceneDocument doc;
  doc.geometry = get_string(require(root, "", "geometry"), "/geometry");
  if (doc.geometry != "euclidean" && doc.geometry != "hyperbolic" && doc.geometry != "spherical") {
    fail("/geometry", "expected \"euclidean\", \"hyperbolic\" or \"spherical\"");
  }
  if (auto it = root.find("model"); it != root.end()) {
    if (doc.geometry != "hyperbolic") fail("/model", "only hyperbolic scenes choose a model");
    doc.model = get_string(*it, "/model");
    if (*doc.model != "disk" && *doc.model != "hyperboloid") fail("/model", "expected \"disk\" or \"hyperboloid\"");
  }
  const Geometry g = geometry_from(doc.geometry, doc.model);

  const json& components = require(root, "", "components");
  if (!components.is_array() || components.empty()) fail("/components", "expected a non-empty array");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const std::string path = "/components/" + std::to_string(i);
    SceneComponent c = parse_component(components[i], path, g);
    if (!ids.insert(c.id).second) fail(path + "/id", "duplicate id \"" + c.id + "\"");
    doc.components.push_back(std::move(c));
  }
  auto kind_of = [&](const std::string& id) {
    for (const auto& c : doc.components) {
      if (c.id == id) return c.kind;
    }
    return ComponentKind::pulley;
  };

  if (auto it = root.find("links"); it != root.end()) {
    if (!it->is_array()) fail("/links", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = "/links/" + std::to_string(i);
      SceneLink l = parse_link((*it)[i], path);
      for (const auto* end : {&l.a, &l.b}) {
        if (!ids.count(*end)) {
          throw ReferenceError(path + "/" + (end == &l.a ? "a" : "b") + ": unknown component id \"" + *end + "\"");
        }
      }
      if (l.a == l.b) fail(path, "a link cannot join a component to itself");
      if (l.kind == LinkKind::mesh && (kind_of(l.a) != ComponentKind::gear || kind_of(l.b) != ComponentKind::gear)) {
        fail(path + "/kind", "meshes join two gears");
      }
      doc.links.push_back(std::move(l));
    }
  }

  if (auto it = root.find("drive"); it != root.end()) {
    SceneDrive d = parse_drive(*it, "/drive");
    if (!ids.count(d.id)) throw ReferenceError("/drive/id: unknown component id \"" + d.id + "\"");
    doc.drive = std::move(d);
  }
  return doc;
}

SceneDocument load_scene(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open scene file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scene(buffer.str());
}

std::string serialize_scene(const SceneDocument& doc) {
  nlohmann::ordered_json root;
  root["geometry"] = doc.geometry;
  if (doc.model) root["model"] = *doc.model;
  root["components"] = nlohmann::ordered_json::array();
  for (const auto& c : doc.components) {
    nlohmann::ordered_json j;
    j["id"] = c.id;
    j["kind"] = c.kind == ComponentKind::gear ? "gear" : "pulley";
    j["radius"] = c.radius;
    if (c.teeth) j["teeth"] = *c.teeth;
    if (c.center) j["center"] = *c.center;
    root["components"].push_back(std::move(j));
  }
  root["links"] = nlohmann::ordered_json::array();
  for (const auto& l : doc.links) {
    nlohmann::ordered_json j;
    j["kind"] = l.kind == LinkKind::mesh ? "mesh" : "belt";
    j["a"] = l.a;
    j["b"] = l.b;
    if (l.crossed) j["crossed"] = *l.crossed;
    root["links"].push_back(std::move(j));
  }
  if (doc.drive) {
    nlohmann::ordered_json d;
    d["id"] = doc.drive->id;
    if (const auto* w = std::get_if<double>(&doc.drive->omega)) {
      d["omega"] = *w;
    } else {
      const auto& s = std::get<SampledAngles>(doc.drive->omega);
      d["omega"] = {{"step", s.step}, {"angles", s.angles}};
    }
    root["drive"] = std::move(d);
  }
  return root.dump(2) + "\n";
}

Geometry scene_geometry(const SceneDocument& doc) { return geometry_from(doc.geometry, doc.model); }

bool scene_has_centers(const SceneDocument& doc) {
  for (const auto& c : doc.components) {
    if (!c.center) return false;
  }
  return true;
}

DrivetrainGraph build_graph(const SceneDocument& doc) {
  const Geometry g = scene_geometry(doc);
  std::vector<Component> components;
  for (const auto& c : doc.components) {
    const Point center = c.center ? Point::from_coords(g, *c.center) : Point::origin(g);
    Circle circle(center, c.radius);
    if (c.kind == ComponentKind::gear) {
      components.push_back({c.id, Gear(circle, *c.teeth), c.center.has_value()});
    } else {
      components.push_back({c.id, Pulley(circle), c.center.has_value()});
    }
  }
  std::vector<Coupling> couplings;
  for (const auto& l : doc.links) {
    couplings.push_back({l.a, l.b, l.kind == LinkKind::mesh ? CouplingKind::mesh : CouplingKind::belt,
                         l.crossed.value_or(false)});
  }
  return {g, std::move(components), std::move(couplings)};
}

DriveSpec build_drive(const SceneDocument& doc) {
  if (!doc.drive) throw SchemaError("/: missing field \"drive\"");
  if (const auto* w = std::get_if<double>(&doc.drive->omega)) return DriveSpec::constant(doc.drive->id, *w);
  const auto& s = std::get<SampledAngles>(doc.drive->omega);
  return DriveSpec::varying(doc.drive->id, AngleFunction::sampled(s.angles, s.step));
}

}  // namespace gearform
