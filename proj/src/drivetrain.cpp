#include "gearform/drivetrain.hpp"

#include <cmath>
#include <deque>
#include <sstream>

namespace gearform {

namespace {

const char* kind_name(const Coupling& c) {
  if (c.kind == CouplingKind::mesh) return "mesh";
  return c.crossed ? "crossed belt" : "belt";
}

std::string describe(const Coupling& c) { return std::string(kind_name(c)) + " " + c.a + "-" + c.b; }

struct Traversal {
  std::vector<double> ratio;
  std::vector<bool> reached;
  std::vector<bool> tree_edge;
  std::vector<std::size_t> parent;
};

// Breadth-first spread of ratios from `root` (ratio 1) over the component
// containing it.
void spread(const DrivetrainGraph& graph, std::size_t root, Traversal& tr) {
  tr.ratio[root] = 1.0;
  tr.reached[root] = true;
  std::deque<std::size_t> queue{root};
  while (!queue.empty()) {
    const std::size_t node = queue.front();
    queue.pop_front();
    const std::string& id = graph.components()[node].id;
    for (std::size_t ci : graph.incident(node)) {
      const Coupling& c = graph.couplings()[ci];
      const std::size_t other = graph.index_of(c.a == id ? c.b : c.a);
      if (tr.reached[other]) continue;
      tr.reached[other] = true;
      tr.tree_edge[ci] = true;
      tr.parent[other] = node;
      tr.ratio[other] = coupling_ratio(graph, ci, id) * tr.ratio[node];
      queue.push_back(other);
    }
  }
}

Traversal make_traversal(const DrivetrainGraph& graph) {
  const std::size_t n = graph.components().size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  return {std::vector<double>(n, 0.0), std::vector<bool>(n, false), std::vector<bool>(graph.couplings().size(), false),
          std::move(parent)};
}

// Node ids around the cycle formed by tree paths from a and b plus the
// closing coupling, starting at a.
std::string cycle_path(const DrivetrainGraph& graph, const Traversal& tr, std::size_t a, std::size_t b) {
  auto to_root = [&](std::size_t v) {
    std::vector<std::size_t> path{v};
    while (tr.parent[path.back()] != path.back()) path.push_back(tr.parent[path.back()]);
    return path;
  };
  std::vector<std::size_t> pa = to_root(a);
  std::vector<std::size_t> pb = to_root(b);
  while (pa.size() > 1 && pb.size() > 1 && pa[pa.size() - 2] == pb[pb.size() - 2]) {
    pa.pop_back();
    pb.pop_back();
  }
  std::string out;
  for (std::size_t v : pa) out += (out.empty() ? "" : "-") + graph.components()[v].id;
  for (std::size_t i = pb.size() - 1; i-- > 0;) out += "-" + graph.components()[pb[i]].id;
  return out + "-" + graph.components()[a].id;
}

std::vector<CycleResidual> closing_residuals(const DrivetrainGraph& graph, const Traversal& tr) {
  std::vector<CycleResidual> out;
  for (std::size_t ci = 0; ci < graph.couplings().size(); ++ci) {
    if (tr.tree_edge[ci]) continue;
    const Coupling& c = graph.couplings()[ci];
    const std::size_t a = graph.index_of(c.a);
    const std::size_t b = graph.index_of(c.b);
    if (!tr.reached[a] || !tr.reached[b]) continue;
    const double implied = coupling_ratio(graph, ci, c.a) * tr.ratio[a];
    out.push_back({ci, c.a, c.b, std::abs(implied / tr.ratio[b] - 1.0)});
  }
  return out;
}

}  // namespace

const Circle& Component::circle() const {
  return std::visit([](const auto& p) -> const Circle& { return p.circle(); }, part);
}

DrivetrainGraph::DrivetrainGraph(Geometry geometry, std::vector<Component> components,
                                 std::vector<Coupling> couplings)
    : geometry_(geometry), components_(std::move(components)), couplings_(std::move(couplings)) {
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const Component& c = components_[i];
    if (!c.circle().geometry().same_space(geometry_)) {
      throw InvalidGraph("component " + c.id + " is not in " + geometry_.name() + " geometry");
    }
    if (!index_.emplace(c.id, i).second) throw InvalidGraph("duplicate component id " + c.id);
  }
  incident_.resize(components_.size());
  for (std::size_t ci = 0; ci < couplings_.size(); ++ci) {
    const Coupling& c = couplings_[ci];
    auto ia = index_.find(c.a);
    auto ib = index_.find(c.b);
    if (ia == index_.end() || ib == index_.end()) {
      throw InvalidGraph(describe(c) + " references an unknown component");
    }
    if (ia->second == ib->second) throw InvalidGraph(describe(c) + " is a self loop");
    if (c.kind == CouplingKind::mesh && (!components_[ia->second].is_gear() || !components_[ib->second].is_gear())) {
      throw InvalidGraph(describe(c) + " couples a pulley by mesh");
    }
    incident_[ia->second].push_back(ci);
    incident_[ib->second].push_back(ci);
  }
}

const Component& DrivetrainGraph::component(const std::string& id) const { return components_[index_of(id)]; }

std::size_t DrivetrainGraph::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw InvalidGraph("unknown component id " + id);
  return it->second;
}

double coupling_ratio(const DrivetrainGraph& graph, std::size_t coupling, const std::string& from) {
  const Coupling& c = graph.couplings().at(coupling);
  if (from != c.a && from != c.b) throw InvalidGraph(from + " is not an endpoint of " + describe(c));
  const Component& src = graph.component(from);
  const Component& dst = graph.component(from == c.a ? c.b : c.a);
  if (c.kind == CouplingKind::mesh) {
    return -static_cast<double>(src.gear().teeth()) / dst.gear().teeth();
  }
  const Geometry& g = graph.geometry();
  const double sign = c.crossed ? -1.0 : 1.0;
  return sign * length_factor(g, src.circle().radius()) / length_factor(g, dst.circle().radius());
}

MeshReport validate_mesh(const Gear& first, const Gear& second, bool check_placement) {
  if (!first.circle().geometry().same_space(second.circle().geometry())) {
    throw GeometryMismatch("meshed gears live in different geometries");
  }
  MeshReport r;
  r.pitch_first = first.tooth_arc_length();
  r.pitch_second = second.tooth_arc_length();
  r.pitch_residual = std::abs(r.pitch_first - r.pitch_second) / r.pitch_first;
  r.pitch_ok = r.pitch_residual <= kMeshTolerance;
  if (check_placement) {
    const double d = distance(first.circle().center(), second.circle().center());
    r.placement_residual = std::abs(d - (first.circle().radius() + second.circle().radius()));
    r.placement_ok = *r.placement_residual <= kMeshTolerance;
  }
  return r;
}

double Solution::omega(const std::string& id, double t) const {
  const double r = ratio.at(id);
  if (const auto* w = std::get_if<double>(&drive.motion)) return r * *w;
  return r * std::get<AngleFunction>(drive.motion).derivative(t);
}

Solution propagate(const DrivetrainGraph& graph, const DriveSpec& drive, PropagateOptions options) {
  const std::size_t root = graph.index_of(drive.node);
  if (options.validate_meshes) {
    for (const Coupling& c : graph.couplings()) {
      if (c.kind != CouplingKind::mesh) continue;
      const Component& a = graph.component(c.a);
      const Component& b = graph.component(c.b);
      const MeshReport report = validate_mesh(a.gear(), b.gear(), a.placed && b.placed);
      if (!report.ok()) {
        std::ostringstream msg;
        msg.precision(3);
        msg << describe(c) << " is invalid: pitch residual " << report.pitch_residual;
        if (report.placement_residual) msg << ", placement residual " << *report.placement_residual;
        throw MeshInvalid(msg.str());
      }
    }
  }

  Traversal tr = make_traversal(graph);
  spread(graph, root, tr);
  std::string unreached;
  for (std::size_t i = 0; i < tr.reached.size(); ++i) {
    if (!tr.reached[i]) unreached += (unreached.empty() ? "" : ", ") + graph.components()[i].id;
  }
  if (!unreached.empty()) throw DisconnectedComponent("not reached from " + drive.node + ": " + unreached);

  Solution sol{drive, {}, {}, closing_residuals(graph, tr)};
  for (const CycleResidual& cr : sol.cycles) {
    if (cr.residual > kCycleTolerance) {
      std::ostringstream msg;
      msg.precision(3);
      msg << "cycle " << cycle_path(graph, tr, graph.index_of(cr.a), graph.index_of(cr.b)) << " closed by "
          << describe(graph.couplings()[cr.coupling]) << " has ratio residual " << cr.residual;
      throw InconsistentCycle(msg.str());
    }
  }
  for (std::size_t i = 0; i < graph.components().size(); ++i) {
    sol.ids.push_back(graph.components()[i].id);
    sol.ratio[graph.components()[i].id] = tr.ratio[i];
  }
  return sol;
}

double gear_ratio(const DrivetrainGraph& graph, const std::string& from, const std::string& to) {
  const std::size_t src = graph.index_of(from);
  const std::size_t dst = graph.index_of(to);
  Traversal tr = make_traversal(graph);
  spread(graph, src, tr);
  if (!tr.reached[dst]) throw NoPath("no coupling path from " + from + " to " + to);
  return tr.ratio[dst];
}

std::vector<CycleResidual> cycle_residuals(const DrivetrainGraph& graph) {
  Traversal tr = make_traversal(graph);
  for (std::size_t i = 0; i < graph.components().size(); ++i) {
    if (!tr.reached[i]) spread(graph, i, tr);
  }
  return closing_residuals(graph, tr);
}

AngleSeries simulate(const DrivetrainGraph& graph, const DriveSpec& drive, double duration, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidStep("simulation step must be positive");
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw InvalidStep("simulation duration must be non-negative");
  const Solution sol = propagate(graph, drive);
  const auto count = static_cast<std::size_t>(std::floor(duration / step + 1e-9)) + 1;

  AngleSeries series;
  series.ids = sol.ids;
  series.times.reserve(count);
  for (std::size_t k = 0; k < count; ++k) series.times.push_back(static_cast<double>(k) * step);

  std::optional<double> rate;
  if (const auto* w = std::get_if<double>(&drive.motion)) {
    rate = *w;
  } else {
    rate = std::get<AngleFunction>(drive.motion).constant_derivative();
  }

  std::vector<double> driven(count, 0.0);
  if (!rate) {
    const AngleFunction& alpha = std::get<AngleFunction>(drive.motion);
    double previous = alpha.derivative(0.0);
    for (std::size_t k = 1; k < count; ++k) {
      const double current = alpha.derivative(series.times[k]);
      driven[k] = driven[k - 1] + 0.5 * step * (previous + current);
      previous = current;
    }
  }

  for (const std::string& id : series.ids) {
    const double r = sol.ratio.at(id);
    std::vector<double> theta(count);
    for (std::size_t k = 0; k < count; ++k) {
      theta[k] = rate ? (r * *rate) * series.times[k] : r * driven[k];
    }
    series.angles.push_back(std::move(theta));
  }
  return series;
}

}  // namespace gearform
