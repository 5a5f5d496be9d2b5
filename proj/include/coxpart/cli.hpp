#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace coxpart::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUnknown = 2, kUsage = 3 };

/// Runs one subcommand. Reports go to out, diagnostics to err; verify-burst may read in.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in);

struct Result {
  int exit_code = 0;
  std::string out;
  std::string err;
};
/// Convenience form; args exclude the program name.
Result run(const std::vector<std::string>& args, std::string_view stdin_text = {});

/// The report for a command from its self-contained inputs (schema 1). The exit code is
/// stored under "exit". Deterministic: equal inputs give byte-identical dumps.
nlohmann::json execute(const std::string& command, const nlohmann::json& inputs);

}  // namespace coxpart::cli
