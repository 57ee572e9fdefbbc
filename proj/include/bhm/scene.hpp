#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace bhm {

/// Overrides applied on top of the scene document.
struct SceneOptions {
  std::optional<std::string> task;    // solve | fibres | verify | slice | charts
  std::optional<std::string> format;  // json | csv
  std::optional<double> tol;          // solver / classification tolerance
  std::uint64_t seed = 1;             // for {"random": ...} point sets
  int threads = 0;                    // 0: BHM_THREADS, else hardware concurrency
};

struct SceneResult {
  int exit_code = 0;    // 0 ok, 2 schema error, 3 domain error
  int code = 0;         // the ErrorCode value, or -1 for an internal failure
  std::string output;   // the report (empty on error)
  std::string error;    // {"error": {"code", "message"}} on failure
};

/// Runs one scene document. Output is a pure function of (input, options):
/// work is split over threads by index and reassembled in input order.
SceneResult run_scene(const std::string& input, const SceneOptions& options = {});

}  // namespace bhm
