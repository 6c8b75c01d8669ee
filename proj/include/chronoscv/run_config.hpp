#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace chronoscv::runcfg {

struct RunOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed_override;
  bool deterministic = false;
};

/// Executes the task named in the config ("gaussian", "wigner-grid", "pdm",
/// "properties", "trajectory", "tomo"), writing the declared artifacts plus a
/// <artifact>.meta.json sidecar. Returns 0 on success, 2 on config/validation
/// errors, 3 when a numerical guard refuses to proceed.
int run(const RunOptions& opts);

}  // namespace chronoscv::runcfg
