#pragma once

#include "fracstep/schemes.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracstep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;

/// Invalid configuration; the message names the flag or config line at fault.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A raw setting and where it came from ("--h", "run.cfg:4", ...).
struct Setting {
  std::string value;
  std::string origin;
};
using Settings = std::map<std::string, Setting>;

/// Parses `key = value` lines; '#' starts a comment. Keys are normalised to
/// snake_case. Unknown keys are rejected with their line number.
Settings parse_config_text(const std::string& text, const std::string& source);
Settings load_config_file(const std::string& path);

/// "2^-3" style powers are accepted alongside ordinary decimals.
double parse_real(const std::string& text, const std::string& origin);
std::vector<double> parse_real_list(const std::string& text, const std::string& origin);
/// "s=0.2,K=25" -> {s: 0.2, K: 25}.
std::map<std::string, double> parse_param_list(const std::string& text, const std::string& origin);

enum class SchemeChoice { GL, NSFD, both };

struct RunConfig {
  std::string model = "predator_prey";
  std::map<std::string, double> params;  // overrides of the model defaults
  SchemeChoice scheme = SchemeChoice::NSFD;
  std::vector<double> alphas;
  std::vector<double> x0;
  double t0 = 0.0;
  double T = 10.0;
  double h = 0.01;
  std::string output;
  std::uint64_t seed = 42;
  SolverOptions options;

  std::vector<double> ladder;
  double h_star = 0.0;
  double h_nsfd = 0.01;
  double h_gl = 0.001;
  std::size_t samples = 1000;
  double box_max = 10.0;
  std::string format = "text";
};

/// Resolves flag settings over config-file settings over `base`.
RunConfig resolve_config(const RunConfig& base, const Settings& from_file, const Settings& from_flags);

/// Keys understood by the resolver (snake_case).
const std::vector<std::string>& known_keys();

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_stability(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_converge(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Defaults per subcommand before file and flag settings are applied.
RunConfig defaults_for(const std::string& command);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fracstep::cli
