#include "fracstep/cli.hpp"

#include <CLI11.hpp>

#include <functional>
#include <ostream>

namespace fracstep::cli {

namespace {

struct FlagSpec {
  const char* flag;
  const char* key;
  const char* help;
};

// Flags shared by every subcommand; each maps onto a config-file key.
constexpr FlagSpec kFlags[] = {
    {"--model", "model", "model name (predator_prey, toy)"},
    {"--set", "set", "model parameters, e.g. s=0.2,K=25"},
    {"--scheme", "scheme", "GL, NSFD or both"},
    {"--alpha", "alpha", "fractional order(s) in (0,1], comma separated"},
    {"--x0", "x0", "initial state, comma separated"},
    {"--t0", "t0", "start time"},
    {"--T", "T", "end time"},
    {"--h", "h", "time step"},
    {"--output", "output", "output path prefix"},
    {"--seed", "seed", "sampling seed (default: $FRACSTEP_SEED or 42)"},
    {"--newton-tol", "newton_tol", "GL Newton residual tolerance"},
    {"--newton-max-iter", "newton_max_iter", "GL Newton iteration cap"},
    {"--negativity-policy", "negativity_policy", "record or halt"},
    {"--ladder", "ladder", "dyadic step ladder, e.g. 2^-3..2^-7"},
    {"--h-star", "h_star", "reference step"},
    {"--h-nsfd", "h_nsfd", "NSFD step for compare"},
    {"--h-gl", "h_gl", "GL step for compare"},
    {"--samples", "samples", "validator sample count"},
    {"--box-max", "box_max", "validator box edge"},
    {"--format", "format", "stdout format: text or csv"},
};

using Command = std::function<int(const RunConfig&, std::ostream&, std::ostream&)>;

struct Subcommand {
  CLI::App* app = nullptr;
  std::string name;
  Command run;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  bool gl_explicit = false;
  CLI::Option* gl_explicit_opt = nullptr;
  std::string config_path;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Caputo fractional ODE solver: GL and positivity-preserving NSFD schemes", "fracstep"};
  app.set_help_flag("--help", "print help and exit");  // -h would clash with --h
  app.require_subcommand(1);

  std::vector<std::unique_ptr<Subcommand>> subs;
  auto add = [&](const std::string& name, const std::string& help, Command fn) {
    auto sub = std::make_unique<Subcommand>();
    sub->name = name;
    sub->run = std::move(fn);
    sub->app = app.add_subcommand(name, help);
    for (const auto& f : kFlags) {
      sub->options[f.key] = sub->app->add_option(f.flag, sub->values[f.key], f.help);
    }
    sub->gl_explicit_opt =
        sub->app->add_flag("--gl-explicit", sub->gl_explicit, "evaluate f at x_{n-1} in the GL scheme");
    sub->app->add_option("--config", sub->config_path, "key = value configuration file");
    subs.push_back(std::move(sub));
  };
  add("simulate", "integrate a model and write trajectory CSVs", cmd_simulate);
  add("stability", "equilibria and fractional linear stability (predator_prey)", cmd_stability);
  add("converge", "self-convergence rate table for the NSFD scheme", cmd_converge);
  add("compare", "NSFD vs GL at different steps, with timings", cmd_compare);
  add("validate", "audit a model's positivity decomposition", cmd_validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  for (const auto& sub : subs) {
    if (!sub->app->parsed()) continue;
    try {
      Settings flags;
      for (const auto& [key, opt] : sub->options) {
        if (opt->count() > 0) flags[key] = {sub->values[key], opt->get_name()};
      }
      if (sub->gl_explicit_opt->count() > 0) flags["gl_explicit"] = {sub->gl_explicit ? "true" : "false", "--gl-explicit"};
      const Settings file = sub->config_path.empty() ? Settings{} : load_config_file(sub->config_path);
      const RunConfig cfg = resolve_config(defaults_for(sub->name), file, flags);
      return sub->run(cfg, out, err);
    } catch (const ConfigError& e) {
      err << "configuration error: " << e.what() << "\n";
      return kExitConfig;
    } catch (const ParameterError& e) {
      err << "configuration error: " << e.what() << "\n";
      return kExitConfig;
    } catch (const SolverError& e) {
      err << "solver failure at " << e.what() << "\n";
      return kExitSolver;
    } catch (const std::exception& e) {
      err << "solver failure: " << e.what() << "\n";
      return kExitSolver;
    }
  }
  return kExitConfig;
}

}  // namespace fracstep::cli
