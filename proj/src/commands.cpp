#include "gearform/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "gearform/render.hpp"
#include "gearform/scene.hpp"

namespace gearform {

namespace {

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string sci(double v) { return format("%.3e", v); }

/// Shortest text that reads back as the same double.
std::string exact(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v + 0.0);
  return std::string(buf, res.ptr);
}

template <class F>
CommandResult guarded(F body) {
  CommandResult r;
  try {
    body(r);
  } catch (const std::exception& e) {
    r.exit_code = exit_code_for(e);
    r.output.clear();
    r.diagnostics = std::string("error: ") + e.what() + "\n";
  }
  return r;
}

const char* kind_name(const SceneComponent& c) { return c.kind == ComponentKind::gear ? "gear" : "pulley"; }

const char* link_name(const SceneLink& l) {
  if (l.kind == LinkKind::mesh) return "mesh";
  return l.crossed.value_or(false) ? "crossed belt" : "belt";
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const SchemaError*>(&e) || dynamic_cast<const ReferenceError*>(&e) ||
      dynamic_cast<const InvalidStep*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const InsufficientData*>(&e) || dynamic_cast<const UndefinedAtZero*>(&e)) {
    return kExitSchema;
  }
  if (dynamic_cast<const InconsistentCycle*>(&e) || dynamic_cast<const MeshInvalid*>(&e) ||
      dynamic_cast<const DisconnectedComponent*>(&e) || dynamic_cast<const InvalidGraph*>(&e) ||
      dynamic_cast<const NoPath*>(&e)) {
    return kExitKinematic;
  }
  if (dynamic_cast<const MissingCenters*>(&e) || dynamic_cast<const NoTangentExists*>(&e) ||
      dynamic_cast<const OverlappingCircles*>(&e)) {
    return kExitRender;
  }
  if (dynamic_cast<const Error*>(&e)) return kExitSchema;
  return kExitIo;
}

CommandResult cmd_solve(std::string_view scene_text) {
  return guarded([&](CommandResult& r) {
    const SceneDocument doc = parse_scene(scene_text);
    const DrivetrainGraph graph = build_graph(doc);
    const Solution sol = propagate(graph, build_drive(doc));
    const bool varying = std::holds_alternative<SampledAngles>(doc.drive->omega);

    std::size_t width = 2;
    for (const auto& c : doc.components) width = std::max(width, c.id.size());
    std::ostringstream out;
    auto row = [&](const std::string& id, const std::string& kind, const std::string& ratio, const std::string& w) {
      out << id << std::string(width + 2 - id.size(), ' ') << kind << std::string(8 - kind.size(), ' ') << ratio
          << std::string(ratio.size() < 24 ? 24 - ratio.size() : 1, ' ') << w << "\n";
    };
    row("id", "kind", "ratio", varying ? "omega(t=0)" : "omega");
    for (const auto& c : doc.components) {
      row(c.id, kind_name(c), format("%.15g", sol.ratio.at(c.id)), format("%.15g", sol.omega(c.id, 0.0)));
    }
    r.output = out.str();
  });
}

CommandResult cmd_simulate(std::string_view scene_text, double duration, double step) {
  return guarded([&](CommandResult& r) {
    const SceneDocument doc = parse_scene(scene_text);
    const AngleSeries series = simulate(build_graph(doc), build_drive(doc), duration, step);
    std::ostringstream out;
    out << "t";
    for (const auto& id : series.ids) out << "," << id;
    out << "\n";
    for (std::size_t k = 0; k < series.times.size(); ++k) {
      out << exact(series.times[k]);
      for (const auto& theta : series.angles) out << "," << exact(theta[k]);
      out << "\n";
    }
    r.output = out.str();
  });
}

CommandResult cmd_render(std::string_view scene_text) {
  return guarded([&](CommandResult& r) { r.output = render_scene(parse_scene(scene_text)).svg; });
}

CommandResult cmd_check(std::string_view scene_text) {
  return guarded([&](CommandResult& r) {
    const SceneDocument doc = parse_scene(scene_text);
    const DrivetrainGraph graph = build_graph(doc);
    std::ostringstream out;
    int worst = kExitOk;
    int findings = 0;
    auto finding = [&](int code) {
      worst = std::max(worst, code);
      ++findings;
    };

    for (std::size_t i = 0; i < doc.links.size(); ++i) {
      const SceneLink& l = doc.links[i];
      const Component& a = graph.component(l.a);
      const Component& b = graph.component(l.b);
      out << link_name(l) << " " << l.a << "-" << l.b << ":";
      if (l.kind == LinkKind::mesh) {
        const MeshReport m = validate_mesh(a.gear(), b.gear(), a.placed && b.placed);
        out << " pitch residual " << sci(m.pitch_residual) << (m.pitch_ok ? " ok" : " FAIL");
        if (!m.pitch_ok) finding(kExitKinematic);
        if (m.placement_residual) {
          out << "; placement residual " << sci(*m.placement_residual) << (m.placement_ok ? " ok" : " FAIL");
          if (!m.placement_ok) finding(kExitKinematic);
        } else {
          out << "; placement skipped";
        }
      } else if (a.placed && b.placed) {
        try {
          double residual = 0.0;
          for (const auto& t : tangent_geodesics(a.circle(), b.circle(), l.crossed.value_or(false))) {
            residual = std::max(residual, tangency_residual(t, a.circle(), b.circle()));
          }
          const bool ok = residual < kTangencyTolerance;
          out << " tangency residual " << sci(residual) << (ok ? " ok" : " FAIL");
          if (!ok) finding(kExitRender);
        } catch (const NoTangentExists& e) {
          out << " tangency infeasible (" << e.what() << ") FAIL";
          finding(kExitRender);
        }
      } else {
        out << " tangency skipped";
      }
      out << "\n";
    }

    const auto cycles = cycle_residuals(graph);
    if (cycles.empty()) out << "cycles: none\n";
    for (const CycleResidual& c : cycles) {
      const bool ok = c.residual <= kCycleTolerance;
      out << "cycle closed by " << link_name(doc.links[c.coupling]) << " " << c.a << "-" << c.b << ": ratio residual "
          << sci(c.residual) << (ok ? " ok" : " FAIL") << "\n";
      if (!ok) finding(kExitKinematic);
    }

    if (doc.drive) {
      std::string unreached;
      for (const auto& c : doc.components) {
        try {
          (void)gear_ratio(graph, doc.drive->id, c.id);
        } catch (const NoPath&) {
          unreached += (unreached.empty() ? "" : ", ") + c.id;
        }
      }
      if (unreached.empty()) {
        out << "drive " << doc.drive->id << ": reaches all components\n";
      } else {
        out << "drive " << doc.drive->id << ": does not reach " << unreached << " FAIL\n";
        finding(kExitKinematic);
      }
    } else {
      out << "drive: none\n";
    }

    out << "status: " << (findings == 0 ? "ok" : std::to_string(findings) + (findings == 1 ? " finding" : " findings"))
        << "\n";
    r.output = out.str();
    r.exit_code = worst;
  });
}

}  // namespace gearform
