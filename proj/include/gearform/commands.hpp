#pragma once

// The four CLI commands as pure functions of the scene text.

#include <exception>
#include <string>
#include <string_view>

namespace gearform {

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitSchema = 2,
  kExitKinematic = 3,
  kExitRender = 4,
};

struct CommandResult {
  int exit_code = kExitOk;
  /// Table, CSV, SVG or report text, depending on the command.
  std::string output;
  /// Error message when exit_code is nonzero.
  std::string diagnostics;
};

/// Node table: id, kind, ratio to the drive and angular velocity (at t = 0
/// for time-varying drives).
CommandResult cmd_solve(std::string_view scene_text);

/// CSV angle series `t,<id>,...` in shortest round-trip notation.
CommandResult cmd_simulate(std::string_view scene_text, double duration, double step);

CommandResult cmd_render(std::string_view scene_text);

/// Pitch, placement, tangency and cycle report. The exit code is that of the
/// worst finding.
CommandResult cmd_check(std::string_view scene_text);

/// Exit code for an exception raised by the library.
int exit_code_for(const std::exception& e);

}  // namespace gearform
