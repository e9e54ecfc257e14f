#include "gearform/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

namespace gearform {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kCircleSamples = 180;
constexpr int kBeltSamples = 64;
constexpr double kToothDepth = 0.08;

const char* const kGearStroke = "#1f4e79";
const char* const kPulleyStroke = "#7a4b00";
const char* const kBeltStroke = "#3a3a3a";

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

struct Xy {
  double x = 0.0;
  double y = 0.0;
};

// Model coordinates to canvas coordinates.
struct ViewTransform {
  double scale = kModelScale;
  double cx = 0.0;
  double cy = 0.0;

  Xy operator()(double x, double y) const {
    return {kCanvasSize / 2 + scale * (x - cx), kCanvasSize / 2 - scale * (y - cy)};
  }
};

struct Placed {
  const SceneComponent* source;
  Circle circle;
};

struct Circumcircle {
  Xy center;
  double radius = 0.0;
};

// Circle through three points; nullopt when they are collinear.
std::optional<Circumcircle> circumscribe(Xy a, Xy b, Xy c) {
  const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
  const double scale = std::max({std::abs(a.x - c.x), std::abs(a.y - c.y), std::abs(b.x - c.x), std::abs(b.y - c.y)});
  if (std::abs(d) <= 1e-12 * scale * scale) return std::nullopt;
  const double a2 = a.x * a.x + a.y * a.y;
  const double b2 = b.x * b.x + b.y * b.y;
  const double c2 = c.x * c.x + c.y * c.y;
  Xy center{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
            (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
  return Circumcircle{center, std::hypot(a.x - center.x, a.y - center.y)};
}

class SvgWriter {
 public:
  SvgWriter() {
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"1000\" height=\"1000\" "
            "viewBox=\"0 0 1000 1000\">\n"
         << "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"#ffffff\"/>\n";
  }

  void open_group(const std::string& id) { out_ << "<g id=\"" << id << "\">\n"; }
  void close_group() { out_ << "</g>\n"; }

  void circle(Xy c, double r, const char* stroke, double width, bool dashed = false) {
    out_ << "<circle cx=\"" << num(c.x) << "\" cy=\"" << num(c.y) << "\" r=\"" << num(r) << "\" fill=\"none\" stroke=\""
         << stroke << "\" stroke-width=\"" << num(width) << "\"" << dash(dashed) << "/>\n";
  }

  void line(Xy a, Xy b, const char* stroke, double width, bool dashed = false) {
    out_ << "<line x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\"" << num(b.x) << "\" y2=\"" << num(b.y)
         << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"" << dash(dashed) << "/>\n";
  }

  void arc(Xy a, double r, bool sweep, Xy b, const char* stroke, double width) {
    out_ << "<path d=\"M " << num(a.x) << " " << num(a.y) << " A " << num(r) << " " << num(r) << " 0 0 "
         << (sweep ? 1 : 0) << " " << num(b.x) << " " << num(b.y) << "\" fill=\"none\" stroke=\"" << stroke
         << "\" stroke-width=\"" << num(width) << "\"/>\n";
  }

  void polyline(const std::vector<Xy>& pts, const char* stroke, double width, bool dashed) {
    out_ << "<polyline points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) out_ << (i ? " " : "") << num(pts[i].x) << "," << num(pts[i].y);
    out_ << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"" << dash(dashed)
         << "/>\n";
  }

  void label(Xy at, const std::string& text) {
    out_ << "<text x=\"" << num(at.x) << "\" y=\"" << num(at.y + 5.0)
         << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" fill=\"#000000\">" << escape(text)
         << "</text>\n";
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  static const char* dash(bool dashed) { return dashed ? " stroke-dasharray=\"6,4\"" : ""; }

  static std::string escape(const std::string& s) {
    std::string r;
    for (char ch : s) {
      switch (ch) {
        case '&': r += "&amp;"; break;
        case '<': r += "&lt;"; break;
        case '>': r += "&gt;"; break;
        case '"': r += "&quot;"; break;
        default: r += ch;
      }
    }
    return r;
  }

  std::ostringstream out_;
};

const char* stroke_of(const SceneComponent& c) { return c.kind == ComponentKind::gear ? kGearStroke : kPulleyStroke; }

std::vector<Placed> place(const SceneDocument& doc, Geometry g) {
  std::vector<Placed> out;
  std::string missing;
  for (const auto& c : doc.components) {
    if (!c.center) missing += (missing.empty() ? "" : ", ") + c.id;
  }
  if (!missing.empty()) throw MissingCenters("components without centers: " + missing);
  for (const auto& c : doc.components) {
    Point center = Point::from_coords(scene_geometry(doc), *c.center);
    if (g.is_disk() && !center.geometry().is_disk()) center = hyperboloid_to_disk(center);
    out.push_back({&c, Circle(center, c.radius)});
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      const double d = distance(out[i].circle.center(), out[j].circle.center());
      if (d < out[i].circle.radius() + out[j].circle.radius() - kTangencyTolerance) {
        throw OverlappingCircles(out[i].source->id + " and " + out[j].source->id + " overlap");
      }
    }
  }
  return out;
}

const Placed& find(const std::vector<Placed>& placed, const std::string& id) {
  for (const auto& p : placed) {
    if (p.source->id == id) return p;
  }
  throw ReferenceError("unknown component id " + id);
}

// Tangent geodesics of every belt, with residuals recorded.
std::vector<std::pair<const SceneLink*, TangentGeodesic>> belt_tangents(const SceneDocument& doc,
                                                                         const std::vector<Placed>& placed,
                                                                         Rendering& r) {
  std::vector<std::pair<const SceneLink*, TangentGeodesic>> out;
  for (const auto& link : doc.links) {
    if (link.kind != LinkKind::belt) continue;
    const Circle& a = find(placed, link.a).circle;
    const Circle& b = find(placed, link.b).circle;
    for (auto& t : tangent_geodesics(a, b, link.crossed.value_or(false))) {
      r.belt_residuals.push_back({link.a, link.b, tangency_residual(t, a, b)});
      out.emplace_back(&link, std::move(t));
    }
  }
  return out;
}

Point tooth_tip(const Circle& c, double theta) {
  return boundary_point(Circle(c.center(), c.radius() * (1.0 - kToothDepth)), theta);
}

void render_disk(const SceneDocument& doc, const std::vector<Placed>& placed, Rendering& r) {
  const ViewTransform view;
  auto screen = [&](const Point& p) { return view(p[0], p[1]); };
  SvgWriter svg;
  svg.circle(view(0.0, 0.0), kModelScale, "#000000", 1.5);

  svg.open_group("components");
  for (const auto& p : placed) {
    Xy pts[3];
    for (int k = 0; k < 3; ++k) pts[k] = screen(boundary_point(p.circle, 2.0 * kPi * k / 3.0));
    const auto cc = circumscribe(pts[0], pts[1], pts[2]);
    svg.circle(cc->center, cc->radius, stroke_of(*p.source), 2.0);
    if (p.source->teeth) {
      for (int k = 0; k < *p.source->teeth; ++k) {
        const double theta = 2.0 * kPi * k / *p.source->teeth;
        svg.line(screen(boundary_point(p.circle, theta)), screen(tooth_tip(p.circle, theta)), kGearStroke, 1.0);
      }
    }
  }
  svg.close_group();

  svg.open_group("belts");
  for (const auto& [link, t] : belt_tangents(doc, placed, r)) {
    const Xy a = screen(t.contact_first);
    const Xy m = screen(geodesic_interpolate(t.contact_first, t.contact_second, 0.5));
    const Xy b = screen(t.contact_second);
    const auto cc = circumscribe(a, m, b);
    if (!cc) {
      svg.line(a, b, kBeltStroke, 2.0);
      continue;
    }
    const double cross = (m.x - a.x) * (b.y - m.y) - (m.y - a.y) * (b.x - m.x);
    svg.arc(a, cc->radius, cross > 0.0, b, kBeltStroke, 2.0);
  }
  svg.close_group();

  svg.open_group("labels");
  for (const auto& p : placed) svg.label(screen(p.circle.center()), p.source->id);
  svg.close_group();
  r.svg = svg.finish();
}

constexpr double kHorizonTolerance = 1e-9;

// Emits a sampled curve on the sphere, solid where it faces the viewer and
// dashed behind.
void sphere_curve(SvgWriter& svg, const ViewTransform& view, const std::vector<Eigen::Vector3d>& pts,
                  const char* stroke, double width) {
  std::vector<Xy> run;
  bool run_visible = true;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const bool visible = pts[k][2] + pts[k + 1][2] >= -kHorizonTolerance;
    if (!run.empty() && visible != run_visible) {
      svg.polyline(run, stroke, width, !run_visible);
      run.clear();
    }
    if (run.empty()) {
      run.push_back(view(pts[k][0], pts[k][1]));
      run_visible = visible;
    }
    run.push_back(view(pts[k + 1][0], pts[k + 1][1]));
  }
  if (run.size() > 1) svg.polyline(run, stroke, width, !run_visible);
}

void render_sphere(const SceneDocument& doc, const std::vector<Placed>& placed, Rendering& r) {
  const ViewTransform view;
  SvgWriter svg;
  svg.circle(view(0.0, 0.0), kModelScale, "#000000", 1.5);

  svg.open_group("components");
  for (const auto& p : placed) {
    std::vector<Eigen::Vector3d> pts;
    for (int k = 0; k <= kCircleSamples; ++k) {
      pts.push_back(boundary_point(p.circle, 2.0 * kPi * k / kCircleSamples).coords());
    }
    sphere_curve(svg, view, pts, stroke_of(*p.source), 2.0);
    if (p.source->teeth) {
      for (int k = 0; k < *p.source->teeth; ++k) {
        const double theta = 2.0 * kPi * k / *p.source->teeth;
        const Eigen::Vector3d a = boundary_point(p.circle, theta).coords();
        const Eigen::Vector3d b = tooth_tip(p.circle, theta).coords();
        svg.line(view(a[0], a[1]), view(b[0], b[1]), kGearStroke, 1.0, a[2] + b[2] < -kHorizonTolerance);
      }
    }
  }
  svg.close_group();

  svg.open_group("belts");
  for (const auto& [link, t] : belt_tangents(doc, placed, r)) {
    std::vector<Eigen::Vector3d> pts;
    for (int k = 0; k <= kBeltSamples; ++k) {
      pts.push_back(geodesic_interpolate(t.contact_first, t.contact_second, static_cast<double>(k) / kBeltSamples)
                        .coords());
    }
    sphere_curve(svg, view, pts, kBeltStroke, 2.0);
  }
  svg.close_group();

  svg.open_group("labels");
  for (const auto& p : placed) {
    const Point& c = p.circle.center();
    if (c[2] >= -kHorizonTolerance) svg.label(view(c[0], c[1]), p.source->id);
  }
  svg.close_group();
  r.svg = svg.finish();
}

void render_plane(const SceneDocument& doc, const std::vector<Placed>& placed, Rendering& r) {
  double lo_x = std::numeric_limits<double>::infinity();
  double lo_y = lo_x;
  double hi_x = -lo_x;
  double hi_y = -lo_x;
  for (const auto& p : placed) {
    const Point& c = p.circle.center();
    const double R = p.circle.radius();
    lo_x = std::min(lo_x, c[0] - R);
    hi_x = std::max(hi_x, c[0] + R);
    lo_y = std::min(lo_y, c[1] - R);
    hi_y = std::max(hi_y, c[1] + R);
  }
  ViewTransform view{2.0 * kModelScale / std::max(hi_x - lo_x, hi_y - lo_y) * 0.95, 0.5 * (lo_x + hi_x),
                     0.5 * (lo_y + hi_y)};
  auto screen = [&](const Point& p) { return view(p[0], p[1]); };
  SvgWriter svg;

  svg.open_group("components");
  for (const auto& p : placed) {
    svg.circle(screen(p.circle.center()), view.scale * p.circle.radius(), stroke_of(*p.source), 2.0);
    if (p.source->teeth) {
      for (int k = 0; k < *p.source->teeth; ++k) {
        const double theta = 2.0 * kPi * k / *p.source->teeth;
        svg.line(screen(boundary_point(p.circle, theta)), screen(tooth_tip(p.circle, theta)), kGearStroke, 1.0);
      }
    }
  }
  svg.close_group();

  svg.open_group("belts");
  for (const auto& [link, t] : belt_tangents(doc, placed, r)) {
    svg.line(screen(t.contact_first), screen(t.contact_second), kBeltStroke, 2.0);
  }
  svg.close_group();

  svg.open_group("labels");
  for (const auto& p : placed) svg.label(screen(p.circle.center()), p.source->id);
  svg.close_group();
  r.svg = svg.finish();
}

}  // namespace

Rendering render_scene(const SceneDocument& doc) {
  Geometry g = scene_geometry(doc);
  if (g.kind() == SpaceForm::hyperbolic) g = Geometry::hyperbolic(HyperbolicModel::disk);
  const std::vector<Placed> placed = place(doc, g);
  Rendering r;
  switch (g.kind()) {
    case SpaceForm::hyperbolic:
      render_disk(doc, placed, r);
      break;
    case SpaceForm::spherical:
      render_sphere(doc, placed, r);
      break;
    case SpaceForm::euclidean:
      render_plane(doc, placed, r);
      break;
  }
  return r;
}

}  // namespace gearform
