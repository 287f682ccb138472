#ifndef HARMONIC_CLI_HPP
#define HARMONIC_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "harmonic/grid.hpp"
#include "harmonic/particular.hpp"

namespace harmonic::cli {

enum class Subcommand { Eval, Solve, Factor, Particular, Verify, Bay, Wave };

/// Everything one invocation needs. Equal configs give byte-identical output.
struct RunConfig {
  Subcommand subcommand = Subcommand::Eval;

  std::string expr;         // eval
  std::string at = "0,0";   // eval: "re,im"
  bool diff = false;        // eval
  std::string op = "dxx + dyy";
  std::string f = "0";
  std::string g = "0";
  std::string fhom = "0";
  std::string field;        // verify: "EXPR @ SUBST" or "bay[:n=..,h=..,k=..]"
  bool take_real = true;
  std::optional<GridSpec> grid;
  int levels = 2;
  bool verify = false;
  bool unchecked = false;

  std::size_t panels = 64;
  QuadraturePath path = QuadraturePath::XThenY;
  double residual_tolerance = 1e-6;  // particular: relative to 1 + max|g|

  int bay_n = 1;
  double bay_h = 1.0;
  std::optional<double> bay_xmax;
  double bay_k = 1.0;

  std::string out_path;     // CSV
  std::string report_path;  // JSON (also --json for verify)
  std::uint64_t seed = 0;
};

/// Exit status: 0 success, 1 usage/parse/domain error, 2 certification failure.
/// The JSON report goes to `out`, diagnostics to `err` as `E<code>: ...`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (args[0] is the program name) and runs.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes `contents` to `path` through a temporary file and a rename.
void write_atomically(const std::string& path, const std::string& contents);

/// "%.17g"
std::string format_double(double v);

}  // namespace harmonic::cli

#endif  // HARMONIC_CLI_HPP
