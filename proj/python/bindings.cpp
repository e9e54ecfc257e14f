#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "gearform/commands.hpp"
#include "gearform/drivetrain.hpp"
#include "gearform/oracle.hpp"
#include "gearform/render.hpp"
#include "gearform/scene.hpp"

namespace py = pybind11;
using namespace gearform;

namespace {

Geometry make_geometry(const std::string& name) {
  if (name == "euclidean") return Geometry::euclidean();
  if (name == "spherical") return Geometry::spherical();
  if (name == "hyperbolic" || name == "disk") return Geometry::hyperbolic(HyperbolicModel::disk);
  if (name == "hyperboloid") return Geometry::hyperbolic(HyperbolicModel::hyperboloid);
  throw DomainError("unknown geometry \"" + name + "\"");
}

std::map<std::string, double> solve(const std::string& text, double t) {
  const SceneDocument doc = parse_scene(text);
  const Solution sol = propagate(build_graph(doc), build_drive(doc));
  std::map<std::string, double> out;
  for (const auto& id : sol.ids) out[id] = sol.omega(id, t);
  return out;
}

py::tuple simulate_scene(const std::string& text, double duration, double step) {
  const SceneDocument doc = parse_scene(text);
  const AngleSeries series = simulate(build_graph(doc), build_drive(doc), duration, step);
  std::map<std::string, std::vector<double>> angles;
  for (std::size_t i = 0; i < series.ids.size(); ++i) angles[series.ids[i]] = series.angles[i];
  return py::make_tuple(series.times, angles);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gears and belt pulleys in the plane, the hyperbolic plane and the sphere";

  auto base = py::register_exception<Error>(m, "GearformError", PyExc_RuntimeError);
#define GEARFORM_REGISTER(Name) py::register_exception<Name>(m, #Name, base.ptr())
  GEARFORM_REGISTER(GeometryMismatch);
  GEARFORM_REGISTER(DomainError);
  GEARFORM_REGISTER(DegenerateAngle);
  GEARFORM_REGISTER(AntipodalError);
  GEARFORM_REGISTER(NoTangentExists);
  GEARFORM_REGISTER(UndefinedAtZero);
  GEARFORM_REGISTER(InsufficientData);
  GEARFORM_REGISTER(InvalidGraph);
  GEARFORM_REGISTER(InconsistentCycle);
  GEARFORM_REGISTER(DisconnectedComponent);
  GEARFORM_REGISTER(MeshInvalid);
  GEARFORM_REGISTER(NoPath);
  GEARFORM_REGISTER(InvalidStep);
  GEARFORM_REGISTER(SchemaError);
  GEARFORM_REGISTER(ReferenceError);
  GEARFORM_REGISTER(MissingCenters);
  GEARFORM_REGISTER(OverlappingCircles);
#undef GEARFORM_REGISTER

  py::class_<Geometry>(m, "Geometry")
      .def(py::init(&make_geometry), py::arg("name"),
           "One of \"euclidean\", \"hyperbolic\" (Poincare disk), \"hyperboloid\" or \"spherical\".")
      .def_property_readonly("name", &Geometry::name)
      .def_property_readonly("curvature", &Geometry::curvature)
      .def("__eq__", [](const Geometry& a, const Geometry& b) { return a == b; })
      .def("__repr__", [](const Geometry& g) { return "Geometry(\"" + g.name() + "\")"; });

  py::class_<Point>(m, "Point")
      .def(py::init([](const Geometry& g, const std::vector<double>& coords) { return Point::from_coords(g, coords); }),
           py::arg("geometry"), py::arg("coords"))
      .def_static("origin", &Point::origin, py::arg("geometry"))
      .def_property_readonly("geometry", &Point::geometry)
      .def_property_readonly("coords", &Point::to_vector)
      .def("__repr__", [](const Point& p) {
        std::string s = "Point(" + p.geometry().name();
        for (double c : p.to_vector()) s += ", " + std::to_string(c);
        return s + ")";
      });

  py::class_<Circle>(m, "Circle")
      .def(py::init<Point, double>(), py::arg("center"), py::arg("radius"))
      .def_property_readonly("center", &Circle::center)
      .def_property_readonly("radius", &Circle::radius)
      .def_property_readonly("geometry", &Circle::geometry);

  m.def("distance", &distance, py::arg("p"), py::arg("q"));
  m.def("disk_to_hyperboloid", &disk_to_hyperboloid, py::arg("p"));
  m.def("hyperboloid_to_disk", &hyperboloid_to_disk, py::arg("p"));
  m.def("length_factor", &length_factor, py::arg("geometry"), py::arg("radius"));
  m.def("circumference", &circumference, py::arg("geometry"), py::arg("radius"));
  m.def("boundary_point", &boundary_point, py::arg("circle"), py::arg("theta"));
  m.def(
      "tangency_residuals",
      [](const Circle& a, const Circle& b, bool crossed) {
        std::vector<double> out;
        for (const auto& t : tangent_geodesics(a, b, crossed)) out.push_back(tangency_residual(t, a, b));
        return out;
      },
      py::arg("first"), py::arg("second"), py::arg("crossed") = false);

  m.def("solve", &solve, py::arg("scene"), py::arg("t") = 0.0,
        "Signed angular velocity of every component of a scene document at time t.");
  m.def("simulate", &simulate_scene, py::arg("scene"), py::arg("duration"), py::arg("step"),
        "Returns (times, {id: angles}).");
  m.def(
      "render", [](const std::string& text) { return render_scene(parse_scene(text)).svg; }, py::arg("scene"));
  m.def(
      "normalize_scene", [](const std::string& text) { return serialize_scene(parse_scene(text)); },
      py::arg("scene"), "Parses, validates and re-serializes a scene document.");

  py::class_<CommandResult>(m, "CommandResult")
      .def_readonly("exit_code", &CommandResult::exit_code)
      .def_readonly("output", &CommandResult::output)
      .def_readonly("diagnostics", &CommandResult::diagnostics);
  m.def("cmd_solve", [](const std::string& text) { return cmd_solve(text); }, py::arg("scene"));
  m.def(
      "cmd_simulate", [](const std::string& text, double duration, double step) {
        return cmd_simulate(text, duration, step);
      },
      py::arg("scene"), py::arg("duration") = 1.0, py::arg("step") = 0.01);
  m.def("cmd_render", [](const std::string& text) { return cmd_render(text); }, py::arg("scene"));
  m.def("cmd_check", [](const std::string& text) { return cmd_check(text); }, py::arg("scene"));

  auto oracle = m.def_submodule("oracle", "Brute-force numerical checks");
  oracle.def("numeric_circumference", &oracle::numeric_circumference, py::arg("circle"), py::arg("samples") = 4096);
  oracle.def(
      "tooth_simulator",
      [](int n1, int n2, const std::vector<std::int64_t>& drive) {
        const auto [s1, s2] = oracle::tooth_simulator(n1, n2, drive);
        return py::make_tuple(s1.values(), s2.values());
      },
      py::arg("first_teeth"), py::arg("second_teeth"), py::arg("drive_teeth"));
  oracle.def(
      "belt_simulator",
      [](const Circle& a, const Circle& b, double omega, double step, std::size_t steps) {
        const AngleFunction follower = oracle::belt_simulator(a, b, AngleFunction::constant_rate(omega), step, steps);
        std::vector<double> out;
        for (std::size_t k = 0; k <= steps; ++k) out.push_back(follower.value(static_cast<double>(k) * step));
        return out;
      },
      py::arg("first"), py::arg("second"), py::arg("omega"), py::arg("step"), py::arg("steps"),
      "Follower angles at t = k * step for a driver turning at constant rate omega.");
}
