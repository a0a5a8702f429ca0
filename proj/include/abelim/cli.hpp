#pragma once

#include "abelim/functors.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace abelim {

inline constexpr const char* tool_version = "abelim 0.1.0";

enum ExitCode : int { exit_pass = 0, exit_failure = 1, exit_config = 2, exit_undetermined = 3 };

/// "tensor(Z/4)", "tor(Z/2 + Z/2)", "lambda(3)", "l1lambda2", "homology(2)".
FunctorTag parse_functor_label(std::string_view text);

/// Text rendering of a JSON report, one "key: value" line per leaf.
std::string render_text(const nlohmann::json& j);

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`; the return value is the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace abelim
