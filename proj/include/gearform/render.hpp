#pragma once

// SVG pictures of placed scenes on a fixed 1000 x 1000 canvas.
//
// Hyperbolic scenes are drawn in the Poincare disk (boundary radius 480),
// spherical scenes in orthographic projection along +z (outline radius 480)
// with the far hemisphere dashed, Euclidean scenes scaled to fit.

#include <string>
#include <vector>

#include "gearform/scene.hpp"

namespace gearform {

inline constexpr double kCanvasSize = 1000.0;
inline constexpr double kModelScale = 480.0;

struct BeltResidual {
  std::string a;
  std::string b;
  double residual = 0.0;
};

struct Rendering {
  std::string svg;
  /// One entry per drawn tangent geodesic.
  std::vector<BeltResidual> belt_residuals;
};

/// Throws MissingCenters, OverlappingCircles or NoTangentExists.
Rendering render_scene(const SceneDocument& doc);

}  // namespace gearform
