// gearform: solve, simulate, render or check a drivetrain scene.
//
//   gearform solve|simulate|render|check <scene.json>
//            [--duration T] [--step H] [--out PATH] [--seed N]

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gearform/commands.hpp"

namespace {

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  text = buffer.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gear and pulley drivetrains on the plane, the hyperbolic plane and the sphere"};
  app.require_subcommand(1);

  std::string scene_path;
  std::string out_path;
  double duration = 1.0;
  double step = 0.01;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("scene", scene_path, "Scene file (JSON)")->required();
    sub->add_option("--duration", duration, "Simulated time span")->capture_default_str();
    sub->add_option("--step", step, "Simulation time step")->capture_default_str();
    sub->add_option("--out", out_path, "Write the result to this file instead of standard output");
    sub->add_option("--seed", seed, "Random seed (all commands are deterministic)");
  };
  CLI::App* solve = app.add_subcommand("solve", "Angular velocity of every component");
  CLI::App* sim = app.add_subcommand("simulate", "CSV time series of component angles");
  CLI::App* render = app.add_subcommand("render", "SVG picture of a placed scene");
  CLI::App* check = app.add_subcommand("check", "Mesh, belt and cycle validation report");
  for (CLI::App* sub : {solve, sim, render, check}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : gearform::kExitSchema;
  }

  std::string text;
  if (!read_file(scene_path, text)) {
    std::cerr << "error: cannot read " << scene_path << "\n";
    return gearform::kExitIo;
  }

  gearform::CommandResult result;
  if (*solve) {
    result = gearform::cmd_solve(text);
  } else if (*sim) {
    result = gearform::cmd_simulate(text, duration, step);
  } else if (*render) {
    result = gearform::cmd_render(text);
  } else {
    result = gearform::cmd_check(text);
  }

  std::cerr << result.diagnostics;
  if (!result.output.empty()) {
    if (out_path.empty()) {
      std::cout << result.output;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      out << result.output;
      if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return gearform::kExitIo;
      }
    }
  }
  return result.exit_code;
}
