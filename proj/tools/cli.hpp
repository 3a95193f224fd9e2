#pragma once

namespace particula::cli {

/// Full command-line entry point (subcommands md, bench, verify). Returns
/// the process exit code: 0 success, 1 runtime error or failed verification,
/// 2 usage error.
int run(int argc, const char* const* argv);

}  // namespace particula::cli
