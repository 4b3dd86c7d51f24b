#ifndef KESTEN_COMMANDS_HPP
#define KESTEN_COMMANDS_HPP

#include "kesten/config.hpp"

namespace kesten {

// Each command validates its config, runs the engines, writes CSV/SVG plus a
// manifest.json under the config's out_dir, and returns a process exit code
// (0 success; throwing maps to 2 config / 3 numerical in the CLI).
int cmd_lyapunov(const RunConfig& cfg);
int cmd_alpha(const RunConfig& cfg);
int cmd_exit(const RunConfig& cfg);
int cmd_audit(const RunConfig& cfg);
int cmd_sweep_lr(const RunConfig& cfg);
int cmd_reproduce(const RunConfig& cfg);

}  // namespace kesten

#endif  // KESTEN_COMMANDS_HPP
