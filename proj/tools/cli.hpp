#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polytree/boundary.hpp"
#include "polytree/errors.hpp"
#include "polytree/family.hpp"
#include "polytree/polynomial.hpp"

namespace polytree::cli {

/// Exit codes: success, operational error, a checked property does not hold.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCheckFailed = 2;

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error("cli", what) {}
};

struct CommandRequest {
  std::string command;  // "help" when only usage text was asked for
  std::string help_text;

  std::optional<Polynomial> poly;
  std::optional<FamilySpec> family;
  std::optional<BoundaryPoint> point;

  int depth = 4;
  int n = 1;        // zeros: iterate order; limit-iterate: m; kbound: N
  int degree = 2;   // nd
  int extra = 2;    // verify-thm2
  bool normalize = false;
  bool auto_rescale = false;
  std::string format = "json";  // tree: json | dot
  std::string out;              // empty: stdout
};

/// Validates flags and parses every grammar payload; throws UsageError
/// or ParseError. `args` excludes the program name.
CommandRequest parse_args(const std::vector<std::string>& args);

int run(const CommandRequest& request, std::ostream& out, std::ostream& err);

/// parse_args + run with module-tagged error reporting.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polytree::cli
