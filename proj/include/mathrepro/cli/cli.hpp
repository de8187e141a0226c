#ifndef MATHREPRO_CLI_CLI_HPP
#define MATHREPRO_CLI_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace mathrepro::cli {

/// Dispatches one invocation. `args` excludes the program name. Exit
/// codes: 0 success, 1 verification failure (doctest fail, manifest
/// discrepancy, validate violations), 2 usage error (stdout stays empty,
/// usage goes to stderr), 3 IO/format error. In-process so tests can
/// drive the exact surface the installed binary exposes.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace mathrepro::cli

#endif
