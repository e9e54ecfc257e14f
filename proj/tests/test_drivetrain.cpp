#include <gtest/gtest.h>

#include <cmath>

#include "gearform/drivetrain.hpp"
#include "gearform/oracle.hpp"
#include "random_graphs.hpp"
#include "support.hpp"

using namespace gearform;
using gearform::testing::kPi;
using gearform::testing::relative_error;
using gearform::testing::Rng;
using gearform::testing::all_path_ratios;
using gearform::testing::radius_for;
using gearform::testing::random_consistent_graph;
using gearform::testing::RandomGraph;

namespace {

const Geometry kHyperboloid = Geometry::hyperbolic(HyperbolicModel::hyperboloid);
const Geometry kDisk = Geometry::hyperbolic(HyperbolicModel::disk);
const Geometry kSphere = Geometry::spherical();
const Geometry kPlane = Geometry::euclidean();
const Geometry kSpaces[] = {kPlane, kHyperboloid, kSphere};

Component gear(const std::string& id, Geometry g, double R, int teeth) {
  return {id, Gear(Circle(Point::origin(g), R), teeth), false};
}

Component pulley(const std::string& id, Geometry g, double R) { return {id, Pulley(Circle(Point::origin(g), R)), false}; }

Coupling mesh(const std::string& a, const std::string& b) { return {a, b, CouplingKind::mesh, false}; }
Coupling belt(const std::string& a, const std::string& b, bool crossed = false) {
  return {a, b, CouplingKind::belt, crossed};
}

}  // namespace

// --- graph construction -----------------------------------------------------

TEST(GraphConstruction, RejectsInvalidGraphs) {
  const Geometry g = kPlane;
  EXPECT_THROW(DrivetrainGraph(g, {gear("a", g, 1, 10), gear("a", g, 1, 10)}, {}), InvalidGraph);
  EXPECT_THROW(DrivetrainGraph(g, {gear("a", g, 1, 10)}, {mesh("a", "b")}), InvalidGraph);
  EXPECT_THROW(DrivetrainGraph(g, {gear("a", g, 1, 10)}, {belt("a", "a")}), InvalidGraph);
  EXPECT_THROW(DrivetrainGraph(g, {gear("a", g, 1, 10), pulley("p", g, 1)}, {mesh("a", "p")}), InvalidGraph);
  EXPECT_THROW(DrivetrainGraph(g, {gear("a", kSphere, 1, 10)}, {}), InvalidGraph);
}

TEST(GraphConstruction, DiskAndHyperboloidComponentsShareTheHyperbolicPlane) {
  EXPECT_NO_THROW(DrivetrainGraph(kHyperboloid, {pulley("a", kDisk, 1.0), pulley("b", kHyperboloid, 1.0)},
                                  {belt("a", "b")}));
}

TEST(GraphConstruction, BeltMayJoinTwoGears) {
  const Geometry g = kHyperboloid;
  const DrivetrainGraph graph(g, {gear("a", g, std::asinh(1.0), 10), gear("b", g, std::asinh(3.0), 17)},
                              {belt("a", "b")});
  EXPECT_NEAR(propagate(graph, DriveSpec::constant("a", 3.0)).omega("b"), 1.0, 1e-15);
}

// --- validate_mesh -------------------------------------------------------------

TEST(ValidateMesh, HyperbolicPairWithEqualPitches) {
  const MeshReport r = validate_mesh(Gear(Circle(Point::origin(kHyperboloid), std::asinh(1.0)), 10),
                                     Gear(Circle(Point::origin(kHyperboloid), std::asinh(2.0)), 20), false);
  EXPECT_NEAR(r.pitch_first, 2 * kPi / 10, 1e-15);
  EXPECT_LE(r.pitch_residual, 1e-9);
  EXPECT_TRUE(r.ok());
  EXPECT_FALSE(r.placement_residual.has_value());
}

TEST(ValidateMesh, SphericalPairWithEqualPitches) {
  const MeshReport r = validate_mesh(Gear(Circle(Point::origin(kSphere), kPi / 6), 10),
                                     Gear(Circle(Point::origin(kSphere), kPi / 2), 20), false);
  EXPECT_TRUE(r.ok());
}

TEST(ValidateMesh, PitchMismatch) {
  const MeshReport r = validate_mesh(Gear(Circle(Point::origin(kHyperboloid), std::asinh(1.0)), 10),
                                     Gear(Circle(Point::origin(kHyperboloid), std::asinh(1.0)), 11), false);
  EXPECT_FALSE(r.pitch_ok);
  EXPECT_FALSE(r.ok());
  EXPECT_NEAR(r.pitch_residual, 1.0 / 11.0, 1e-12);
}

TEST(ValidateMesh, PlacementChecksTangency) {
  const double R1 = std::asinh(1.0);
  const double R2 = std::asinh(2.0);
  const Point c1 = Point::origin(kHyperboloid);
  const Point touching = Point::hyperboloid(std::sinh(R1 + R2), 0.0, std::cosh(R1 + R2));
  const Point apart = Point::hyperboloid(std::sinh(R1 + R2 + 0.1), 0.0, std::cosh(R1 + R2 + 0.1));
  const Gear g1(Circle(c1, R1), 10);
  const MeshReport ok = validate_mesh(g1, Gear(Circle(touching, R2), 20));
  ASSERT_TRUE(ok.placement_residual.has_value());
  EXPECT_LT(*ok.placement_residual, 1e-9);
  EXPECT_TRUE(ok.ok());
  const MeshReport bad = validate_mesh(g1, Gear(Circle(apart, R2), 20));
  EXPECT_NEAR(*bad.placement_residual, 0.1, 1e-12);
  EXPECT_FALSE(bad.ok());
}

TEST(ValidateMesh, GeometryMismatch) {
  EXPECT_THROW(validate_mesh(Gear(Circle(Point::origin(kPlane), 1.0), 10), Gear(Circle(Point::origin(kSphere), 1.0), 10)),
               GeometryMismatch);
}

// --- propagate -------------------------------------------------------------------

TEST(Propagate, GearPairAgreesWithToothSimulator) {
  const DrivetrainGraph graph(kPlane, {gear("g1", kPlane, 1.0, 20), gear("g2", kPlane, 3.0, 60)}, {mesh("g1", "g2")});
  const Solution sol = propagate(graph, DriveSpec::constant("g1", 3.0));
  EXPECT_EQ(sol.omega("g1"), 3.0);
  EXPECT_DOUBLE_EQ(sol.omega("g2"), -1.0);
  // Magnitude from pushing teeth: one step of 60 driver teeth.
  const std::vector<std::int64_t> drive{60};
  const auto [s1, s2] = oracle::tooth_simulator(20, 60, drive);
  const Rational ratio = gear_angular_velocity_turns(s2, 1) / gear_angular_velocity_turns(s1, 1);
  EXPECT_DOUBLE_EQ(std::abs(sol.ratio.at("g2")), boost::rational_cast<double>(ratio));
}

TEST(Propagate, HyperbolicBeltAgreesWithBeltSimulator) {
  const Geometry g = kHyperboloid;
  const DrivetrainGraph graph(g, {pulley("p1", g, std::asinh(1.0)), pulley("p2", g, std::asinh(2.0))},
                              {belt("p1", "p2")});
  const double w2 = propagate(graph, DriveSpec::constant("p1", 2.0)).omega("p2");
  EXPECT_NEAR(w2, 1.0, 1e-15);
  const double h = 1e-4;
  const AngleFunction a2 = oracle::belt_simulator(graph.component("p1").circle(), graph.component("p2").circle(),
                                                  AngleFunction::constant_rate(2.0), h, 200);
  EXPECT_LT(relative_error(a2.derivative(100 * h), w2), 1e-5);
}

TEST(Propagate, SphericalBeltAgreesWithBeltSimulator) {
  const Geometry g = kSphere;
  const DrivetrainGraph graph(g, {pulley("p1", g, kPi / 6), pulley("p2", g, kPi / 2)}, {belt("p1", "p2")});
  const double w2 = propagate(graph, DriveSpec::constant("p1", 1.0)).omega("p2");
  EXPECT_NEAR(w2, 0.5, 1e-15);
  const double h = 1e-4;
  const AngleFunction a2 = oracle::belt_simulator(graph.component("p1").circle(), graph.component("p2").circle(),
                                                  AngleFunction::constant_rate(1.0), h, 200);
  EXPECT_LT(relative_error(a2.derivative(100 * h), w2), 1e-5);
}

TEST(Propagate, EuclideanPulleysAndCrossedBelts) {
  const Geometry g = kPlane;
  const DrivetrainGraph open(g, {pulley("a", g, 1.0), pulley("b", g, 2.0)}, {belt("a", "b")});
  EXPECT_EQ(propagate(open, DriveSpec::constant("a", 4.0)).omega("b"), 2.0);
  const DrivetrainGraph crossed(g, {pulley("a", g, 1.0), pulley("b", g, 2.0)}, {belt("a", "b", true)});
  EXPECT_EQ(propagate(crossed, DriveSpec::constant("a", 4.0)).omega("b"), -2.0);
}

TEST(Propagate, DrivenNodeKeepsItsInput) {
  Rng rng(201);
  for (const Geometry& g : kSpaces) {
    const RandomGraph rg = random_consistent_graph(rng, g, 7, 4);
    const std::string id = rg.graph.components()[3].id;
    const Solution sol = propagate(rg.graph, DriveSpec::constant(id, -1.25));
    EXPECT_EQ(sol.omega(id), -1.25);
    EXPECT_EQ(sol.ratio.at(id), 1.0);
  }
}

TEST(Propagate, InconsistentThreeGearCycle) {
  const Geometry g = kPlane;
  const DrivetrainGraph graph(g, {gear("g1", g, 1, 20), gear("g2", g, 1, 20), gear("g3", g, 1, 20)},
                              {mesh("g1", "g2"), mesh("g2", "g3"), mesh("g3", "g1")});
  try {
    propagate(graph, DriveSpec::constant("g1", 1.0));
    FAIL() << "expected InconsistentCycle";
  } catch (const InconsistentCycle& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("cycle g2-g1-g3-g2"), std::string::npos) << what;
    EXPECT_NE(what.find("mesh g2-g3"), std::string::npos) << what;
  }
}

TEST(Propagate, MismatchedTeethCycleIsInconsistent) {
  // Pitches are deliberately unequal so that only the cycle check can fail.
  const Geometry g = kPlane;
  const DrivetrainGraph graph(g, {gear("a", g, 1, 10), gear("b", g, 1, 20), gear("c", g, 1, 30)},
                              {mesh("a", "b"), belt("b", "c", true), mesh("c", "a")});
  EXPECT_THROW(propagate(graph, DriveSpec::constant("a", 1.0), {.validate_meshes = false}), InconsistentCycle);
  EXPECT_THROW(propagate(graph, DriveSpec::constant("a", 1.0)), MeshInvalid);
}

TEST(Propagate, ConsistentCycleAccepted) {
  // Gear meshed to two pulleys-by-belt routes that agree.
  const Geometry g = kPlane;
  const DrivetrainGraph graph(g, {gear("a", g, 1.0, 10), gear("b", g, 2.0, 20), pulley("c", g, 0.5)},
                              {mesh("a", "b"), belt("a", "c", true), belt("c", "b", false)});
  const Solution sol = propagate(graph, DriveSpec::constant("a", 2.0));
  ASSERT_EQ(sol.cycles.size(), 1u);
  EXPECT_LT(sol.cycles[0].residual, 1e-15);
  EXPECT_DOUBLE_EQ(sol.omega("b"), -1.0);
}

TEST(Propagate, DisconnectedComponentsListed) {
  const Geometry g = kPlane;
  const DrivetrainGraph graph(g, {pulley("a", g, 1), pulley("b", g, 1), pulley("x", g, 1), pulley("y", g, 1)},
                              {belt("a", "b"), belt("x", "y")});
  try {
    propagate(graph, DriveSpec::constant("a", 1.0));
    FAIL() << "expected DisconnectedComponent";
  } catch (const DisconnectedComponent& e) {
    EXPECT_NE(std::string(e.what()).find("x, y"), std::string::npos) << e.what();
  }
}

TEST(Propagate, MeshPitchValidated) {
  const Geometry g = kHyperboloid;
  const DrivetrainGraph graph(g, {gear("a", g, std::asinh(1.0), 10), gear("b", g, std::asinh(1.0), 11)},
                              {mesh("a", "b")});
  EXPECT_THROW(propagate(graph, DriveSpec::constant("a", 1.0)), MeshInvalid);
  EXPECT_NEAR(propagate(graph, DriveSpec::constant("a", 1.0), {.validate_meshes = false}).omega("b"), -10.0 / 11.0,
              1e-15);
}

TEST(Propagate, PlacementValidatedOnlyWhenBothGearsPlaced) {
  const Geometry g = kPlane;
  std::vector<Component> comps{{"a", Gear(Circle(Point::plane(0, 0), 1.0), 10), true},
                               {"b", Gear(Circle(Point::plane(5, 0), 2.0), 20), true}};
  EXPECT_THROW(propagate(DrivetrainGraph(g, comps, {mesh("a", "b")}), DriveSpec::constant("a", 1.0)), MeshInvalid);
  comps[1].placed = false;
  EXPECT_NO_THROW(propagate(DrivetrainGraph(g, comps, {mesh("a", "b")}), DriveSpec::constant("a", 1.0)));
}

TEST(Propagate, TimeVaryingDrive) {
  const Geometry g = kSphere;
  const DrivetrainGraph graph(g, {pulley("p1", g, kPi / 6), pulley("p2", g, kPi / 2)}, {belt("p1", "p2")});
  const AngleFunction alpha = AngleFunction::polynomial({0.0, 1.0, 1.0});
  const Solution sol = propagate(graph, DriveSpec::varying("p1", alpha));
  EXPECT_DOUBLE_EQ(sol.omega("p2", 2.0), 0.5 * 5.0);
}

TEST(Propagate, MeshAndBeltLawsOnRandomGraphs) {
  Rng rng(202);
  for (const Geometry& g : kSpaces) {
    for (int i = 0; i < 10; ++i) {
      const RandomGraph rg = random_consistent_graph(rng, g, 8, 5);
      const AngleFunction alpha = AngleFunction::custom([](double t) { return std::sin(t); },
                                                        [](double t) { return std::cos(t); });
      const Solution sol = propagate(rg.graph, DriveSpec::varying("n0", alpha));
      const double t = rng.uniform(0.0, 3.0);
      for (const Coupling& c : rg.graph.couplings()) {
        const Component& a = rg.graph.component(c.a);
        const Component& b = rg.graph.component(c.b);
        const double wa = sol.omega(c.a, t);
        const double wb = sol.omega(c.b, t);
        const double scale = std::max(std::abs(wa), std::abs(wb)) + 1e-300;
        if (c.kind == CouplingKind::mesh) {
          const double na = a.gear().teeth();
          const double nb = b.gear().teeth();
          EXPECT_LT(std::abs(na * wa + nb * wb) / (std::max(na, nb) * scale), 1e-12);
        } else {
          const double sa = length_factor(g, a.circle().radius());
          const double sb = length_factor(g, b.circle().radius());
          const double sign = c.crossed ? -1.0 : 1.0;
          EXPECT_LT(std::abs(sa * wa - sign * sb * wb) / (std::max(sa, sb) * scale), 1e-12);
        }
      }
    }
  }
}

TEST(Propagate, UnchangedByGlobalIsometry) {
  // A placed hyperbolic train: g1 meshes g2, g2 belted to p3.
  const Geometry g = kHyperboloid;
  const double R1 = std::asinh(1.0);
  const double R2 = std::asinh(2.0);
  const Point c1 = Point::origin(g);
  const Point c2 = Point::hyperboloid(std::sinh(R1 + R2), 0.0, std::cosh(R1 + R2));
  const Point c3 = Point::hyperboloid(0.0, std::sinh(4.0), std::cosh(4.0));
  auto build = [&](const Isometry& iso) {
    return DrivetrainGraph(g,
                           {{"g1", Gear(Circle(iso.apply(c1), R1), 10), true},
                            {"g2", Gear(Circle(iso.apply(c2), R2), 20), true},
                            {"p3", Pulley(Circle(iso.apply(c3), 0.7)), true}},
                           {mesh("g1", "g2"), belt("g2", "p3")});
  };
  const Solution before = propagate(build(Isometry::identity(g)), DriveSpec::constant("g1", 1.5));
  Rng rng(203);
  for (int i = 0; i < 10; ++i) {
    const Isometry iso = Isometry::rotation_about(rng.point(g), rng.angle()).then(Isometry::carry_origin_to(rng.point(g)));
    const Solution after = propagate(build(iso), DriveSpec::constant("g1", 1.5));
    EXPECT_EQ(after.ratio, before.ratio);
  }
}

TEST(Propagate, EuclideanLimitOfCurvedRatios) {
  const double eps = 1e-3;
  Rng rng(204);
  for (int i = 0; i < 50; ++i) {
    const double R1 = rng.uniform(0.1, 1.5);
    const double R2 = rng.uniform(0.1, 1.5);
    const double euclid = R1 / R2;
    for (const Geometry& g : {kHyperboloid, kSphere}) {
      const DrivetrainGraph graph(g, {pulley("a", g, eps * R1), pulley("b", g, eps * R2)}, {belt("a", "b")});
      const double ratio = propagate(graph, DriveSpec::constant("a", 1.0)).omega("b");
      const double err = relative_error(ratio, euclid);
      EXPECT_LT(err, 5e-6);
      // O(eps^2) with the coefficient (R1^2 - R2^2) / 6.
      EXPECT_NEAR(err, std::abs(R1 * R1 - R2 * R2) / 6.0 * eps * eps, 1e-10);
    }
  }
}

// --- gear_ratio ----------------------------------------------------------------------

TEST(GearRatio, SingleMeshOfEqualGears) {
  const DrivetrainGraph graph(kPlane, {gear("a", kPlane, 1, 20), gear("b", kPlane, 1, 20)}, {mesh("a", "b")});
  EXPECT_EQ(gear_ratio(graph, "a", "b"), -1.0);
}

TEST(GearRatio, ChainOfTwoMeshesCancels) {
  const DrivetrainGraph graph(kPlane, {gear("a", kPlane, 1, 20), gear("b", kPlane, 2, 40), gear("c", kPlane, 1, 20)},
                              {mesh("a", "b"), mesh("b", "c")});
  EXPECT_EQ(gear_ratio(graph, "a", "c"), 1.0);
}

TEST(GearRatio, NoPathThrows) {
  const DrivetrainGraph graph(kPlane, {pulley("a", kPlane, 1), pulley("b", kPlane, 1)}, {});
  EXPECT_THROW(gear_ratio(graph, "a", "b"), NoPath);
}

TEST(GearRatio, PathIndependentOnRandomConsistentGraphs) {
  Rng rng(205);
  for (const Geometry& g : kSpaces) {
    for (int i = 0; i < 20; ++i) {
      const RandomGraph rg = random_consistent_graph(rng, g, 7, 5);
      EXPECT_NO_THROW(propagate(rg.graph, DriveSpec::constant("n0", 1.0)));
      for (int k = 0; k < 5; ++k) {
        const int a = static_cast<int>(rng.integer(0, 6));
        const int b = static_cast<int>(rng.integer(0, 6));
        const std::string ia = "n" + std::to_string(a);
        const std::string ib = "n" + std::to_string(b);
        const double ratio = gear_ratio(rg.graph, ia, ib);
        EXPECT_LT(relative_error(ratio, rg.potential[b] / rg.potential[a]), 1e-12);
        for (double path : all_path_ratios(rg.graph, ia, ib)) EXPECT_LT(relative_error(path, ratio), 1e-12);
      }
    }
  }
}

TEST(CycleResiduals, ReportsWithoutThrowing) {
  const Geometry g = kPlane;
  const DrivetrainGraph graph(g, {gear("g1", g, 1, 20), gear("g2", g, 1, 20), gear("g3", g, 1, 20)},
                              {mesh("g1", "g2"), mesh("g2", "g3"), mesh("g3", "g1")});
  const auto cycles = cycle_residuals(graph);
  ASSERT_EQ(cycles.size(), 1u);
  EXPECT_NEAR(cycles[0].residual, 2.0, 1e-15);
}

// --- simulate -------------------------------------------------------------------------

TEST(Simulate, ConstantDriveEndsAtTwoPi) {
  const DrivetrainGraph graph(kPlane, {pulley("a", kPlane, 1.0)}, {});
  const AngleSeries s = simulate(graph, DriveSpec::constant("a", 2 * kPi), 1.0, 0.25);
  ASSERT_EQ(s.times.size(), 5u);
  EXPECT_EQ(s.angles[0].front(), 0.0);
  EXPECT_DOUBLE_EQ(s.angles[0].back(), 2 * kPi);
  EXPECT_EQ(s.times.back(), 1.0);
}

TEST(Simulate, ConstantDriveIsExactlyLinear) {
  const DrivetrainGraph graph(kPlane, {gear("g1", kPlane, 1.0, 20), gear("g2", kPlane, 3.0, 60)}, {mesh("g1", "g2")});
  const AngleSeries s = simulate(graph, DriveSpec::constant("g1", 3.0), 2.0, 0.01);
  const Solution sol = propagate(graph, DriveSpec::constant("g1", 3.0));
  for (std::size_t node = 0; node < s.ids.size(); ++node) {
    for (std::size_t k = 0; k < s.times.size(); ++k) {
      EXPECT_EQ(s.angles[node][k], sol.omega(s.ids[node]) * s.times[k]);
    }
  }
}

TEST(Simulate, MeshedPairSatisfiesTeethIntegralAndToothSimulator) {
  const DrivetrainGraph graph(kPlane, {gear("g1", kPlane, 1.0, 20), gear("g2", kPlane, 3.0, 60)}, {mesh("g1", "g2")});
  // Drive of exactly one tooth per unit time.
  const double w = 2 * kPi / 20;
  const AngleSeries s = simulate(graph, DriveSpec::constant("g1", w), 30.0, 1.0);
  const std::vector<std::int64_t> ones(30, 1);
  const auto [s1, s2] = oracle::tooth_simulator(20, 60, ones);
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    EXPECT_NEAR(20 * s.angles[0][k] + 60 * s.angles[1][k], 0.0, 1e-12);
    // Teeth swept by each gear match the counted winding maps.
    EXPECT_NEAR(s.angles[0][k] * 20 / (2 * kPi), static_cast<double>(s1[k]), 1e-9);
    EXPECT_NEAR(-s.angles[1][k] * 60 / (2 * kPi), static_cast<double>(s2[k]), 1e-9);
  }
}

TEST(Simulate, TimeVaryingDriveIntegratesToSine) {
  const DrivetrainGraph graph(kPlane, {pulley("a", kPlane, 1.0), pulley("b", kPlane, 2.0)}, {belt("a", "b")});
  const AngleFunction alpha = AngleFunction::custom([](double t) { return std::sin(t); },
                                                    [](double t) { return std::cos(t); });
  const AngleSeries s = simulate(graph, DriveSpec::varying("a", alpha), 2.0, 1e-5);
  double worst = 0.0;
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    worst = std::max(worst, std::abs(s.angles[0][k] - std::sin(s.times[k])));
    EXPECT_NEAR(s.angles[1][k], 0.5 * s.angles[0][k], 1e-15);
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Simulate, SampledDrive) {
  std::vector<double> values;
  for (int k = 0; k <= 100; ++k) values.push_back(std::sin(0.01 * k));
  const DrivetrainGraph graph(kPlane, {pulley("a", kPlane, 1.0)}, {});
  const AngleSeries s = simulate(graph, DriveSpec::varying("a", AngleFunction::sampled(values, 0.01)), 1.0, 0.01);
  ASSERT_EQ(s.times.size(), 101u);
  EXPECT_NEAR(s.angles[0].back(), std::sin(1.0), 1e-4);
}

TEST(Simulate, ZeroDurationGivesSingleRow) {
  const DrivetrainGraph graph(kPlane, {pulley("a", kPlane, 1.0)}, {});
  const AngleSeries s = simulate(graph, DriveSpec::constant("a", 1.0), 0.0, 0.1);
  ASSERT_EQ(s.times.size(), 1u);
  EXPECT_EQ(s.angles[0][0], 0.0);
}

TEST(Simulate, InvalidStep) {
  const DrivetrainGraph graph(kPlane, {pulley("a", kPlane, 1.0)}, {});
  EXPECT_THROW(simulate(graph, DriveSpec::constant("a", 1.0), 1.0, 0.0), InvalidStep);
  EXPECT_THROW(simulate(graph, DriveSpec::constant("a", 1.0), 1.0, -0.1), InvalidStep);
  EXPECT_THROW(simulate(graph, DriveSpec::constant("a", 1.0), -1.0, 0.1), InvalidStep);
}
