#include "fracstep/analysis.hpp"
#include "fracstep/cli.hpp"
#include "fracstep/convergence.hpp"
#include "fracstep/csv.hpp"
#include "fracstep/models.hpp"
#include "fracstep/validators.hpp"

#include <array>
#include <chrono>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

namespace fracstep::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string short_real(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string fixed(double v, int digits) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*f", digits, v);
  return buf.data();
}

std::string sci(double v) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.3e", v);
  return buf.data();
}

std::string vec_text(const Vector& v, int digits = 6) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fixed(v[i], digits);
  }
  return s + ")";
}

std::string complex_text(const Complex& z) {
  if (z.imag() == 0.0) return fixed(z.real(), 6);
  return fixed(z.real(), 6) + (z.imag() < 0 ? " - " : " + ") + fixed(std::abs(z.imag()), 6) + "i";
}

// Human form of a ladder step: 2^-k when it is one, the shortest decimal otherwise.
std::string step_label(double h) {
  int e = 0;
  if (std::frexp(h, &e) == 0.5) return "2^" + std::to_string(e - 1);
  return short_real(h);
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

DecomposedSystem build_system(const RunConfig& cfg) {
  try {
    return make_model(cfg.model, cfg.params);
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
}

Vector initial_state(const RunConfig& cfg, const DecomposedSystem& sys, std::ostream& err) {
  if (cfg.x0.empty()) throw ConfigError("--x0: initial state is required");
  if (static_cast<int>(cfg.x0.size()) != sys.dim) {
    throw ConfigError("--x0: model '" + sys.name + "' needs " + std::to_string(sys.dim) +
                      " components, got " + std::to_string(cfg.x0.size()));
  }
  Vector x0 = Eigen::Map<const Vector>(cfg.x0.data(), static_cast<Eigen::Index>(cfg.x0.size()));
  if ((x0.array() < 0.0).any()) {
    err << "warning: negative initial state " << vec_text(x0)
        << "; positivity guarantees do not apply\n";
  }
  return x0;
}

std::vector<Scheme> schemes_of(SchemeChoice c) {
  switch (c) {
    case SchemeChoice::GL: return {Scheme::GL};
    case SchemeChoice::NSFD: return {Scheme::NSFD};
    case SchemeChoice::both: return {Scheme::NSFD, Scheme::GL};
  }
  return {};
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("--output: cannot write '" + path + "'");
  return out;
}

std::string trajectory_path(const std::string& prefix, Scheme s, double alpha) {
  return prefix + "_" + std::string(to_string(s)) + "_a" + short_real(alpha) + ".csv";
}

void check_horizon(const RunConfig& cfg) {
  if (cfg.T < cfg.t0) throw ConfigError("--T: end time " + short_real(cfg.T) + " precedes t0 " + short_real(cfg.t0));
}

Grid make_grid(const RunConfig& cfg, double h, const std::string& flag) {
  try {
    return Grid::over(cfg.t0, cfg.T, h);
  } catch (const ParameterError& e) {
    throw ConfigError(flag + ": " + e.what());
  }
}

struct TimedRun {
  Trajectory traj;
  double seconds;
};

TimedRun timed_integrate(const DecomposedSystem& sys, Scheme scheme, double alpha, const Vector& x0,
                         const Grid& grid, const SolverOptions& opts) {
  const auto start = Clock::now();
  auto traj = integrate(sys, scheme, FractionalOrder(alpha), x0, grid, opts);
  return {std::move(traj), seconds_since(start)};
}

}  // namespace

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto sys = build_system(cfg);
  const Vector x0 = initial_state(cfg, sys, err);
  check_horizon(cfg);
  const std::string prefix = cfg.output.empty() ? "trajectory" : cfg.output;
  const auto schemes = schemes_of(cfg.scheme);

  if (cfg.T == cfg.t0) {
    for (auto s : schemes) {
      for (double a : cfg.alphas) {
        const auto path = trajectory_path(prefix, s, a);
        auto file = open_output(path);
        write_state_csv(file, cfg.t0, x0);
        out << "run scheme=" << to_string(s) << " alpha=" << short_real(a) << " steps=0\n"
            << "  output: " << path << "\n"
            << "  zero-length run; final state " << vec_text(x0) << "\n";
      }
    }
    return kExitOk;
  }

  const Grid grid = make_grid(cfg, cfg.h, "--h");
  struct Job {
    Scheme scheme;
    double alpha;
    std::future<TimedRun> result;
  };
  std::vector<Job> jobs;
  for (auto s : schemes) {
    for (double a : cfg.alphas) {
      jobs.push_back({s, a, std::async(std::launch::async, timed_integrate, std::cref(sys), s, a,
                                       std::cref(x0), std::cref(grid), std::cref(cfg.options))});
    }
  }

  for (auto& job : jobs) {
    const TimedRun run = job.result.get();
    const auto& traj = run.traj;
    const auto path = trajectory_path(prefix, job.scheme, job.alpha);
    auto file = open_output(path);
    write_trajectory_csv(file, traj);

    out << "run scheme=" << to_string(job.scheme) << " alpha=" << short_real(job.alpha)
        << " h=" << short_real(grid.h) << " steps=" << grid.n_steps << " wall_s=" << fixed(run.seconds, 6)
        << "\n  output: " << path << "\n  negativity_events: " << traj.negativity.size() << "\n";
    constexpr std::size_t kShown = 20;
    for (std::size_t i = 0; i < std::min(kShown, traj.negativity.size()); ++i) {
      const auto& ev = traj.negativity[i];
      out << "    step " << ev.step << " t=" << short_real(grid.t(ev.step)) << " x" << ev.component + 1
          << " = " << format_real(ev.value) << "\n";
    }
    if (traj.negativity.size() > kShown) {
      out << "    ... " << traj.negativity.size() - kShown << " more\n";
    }
    out << "  final: t=" << short_real(grid.end()) << " x=" << vec_text(traj.state(traj.size() - 1)) << "\n";
  }
  return kExitOk;
}

int cmd_stability(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.model != "predator_prey") {
    throw ConfigError("--model: stability analysis needs closed-form equilibria; only predator_prey has them");
  }
  PredatorPreyParams p;
  try {
    p = PredatorPreyParams::from_map(cfg.params);
    p.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  std::vector<FractionalOrder> alphas;
  for (double a : cfg.alphas) alphas.emplace_back(a);
  const auto rep = stability_report(p, alphas);

  std::ostringstream csv;
  csv << "point,kind,exists,x,y,re1,im1,re2,im2,marginal_alpha,R0,alpha,verdict\n";
  for (const auto& pt : rep.points) {
    if (!pt.exists) {
      csv << pt.label << ',' << to_string(pt.kind) << ",0,,,,,,,," << format_real(rep.R0) << ",,\n";
      continue;
    }
    const auto& st = pt.stability;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      csv << pt.label << ',' << to_string(pt.kind) << ",1," << format_real(pt.point[0]) << ','
          << format_real(pt.point[1]) << ',' << format_real(st.eigenvalues[0].real()) << ','
          << format_real(st.eigenvalues[0].imag()) << ',' << format_real(st.eigenvalues[1].real()) << ','
          << format_real(st.eigenvalues[1].imag()) << ','
          << (st.marginal_alpha ? format_real(*st.marginal_alpha) : "") << ',' << format_real(rep.R0) << ','
          << short_real(alphas[i].value()) << ',' << to_string(pt.verdicts[i]) << '\n';
    }
  }
  if (!cfg.output.empty()) {
    auto file = open_output(cfg.output + "_stability.csv");
    file << csv.str();
  }
  if (cfg.format == "csv") {
    out << csv.str();
    return kExitOk;
  }

  out << "predator_prey stability report\n  params:";
  for (const auto& [k, v] : p.as_map()) out << ' ' << k << '=' << short_real(v);
  out << "\n  R0 = " << fixed(rep.R0, 4) << "\n";
  for (const auto& pt : rep.points) {
    if (!pt.exists) {
      out << pt.label << " does not exist (R0=" << fixed(rep.R0, 4) << (rep.R0 <= 1.0 ? " <= 1" : "") << ")\n";
      continue;
    }
    const auto& st = pt.stability;
    out << pt.label << " = " << vec_text(pt.point, 4) << " [" << to_string(pt.kind) << "]\n"
        << "  eigenvalues: " << complex_text(st.eigenvalues[0]) << ", " << complex_text(st.eigenvalues[1])
        << "  (" << st.real_sign_pattern() << ")\n"
        << "  |arg|: " << fixed(st.args[0], 6) << ", " << fixed(st.args[1], 6) << "\n"
        << "  marginal alpha: " << (st.marginal_alpha ? fixed(*st.marginal_alpha, 4) : std::string("none")) << "\n";
    if (!st.note.empty()) out << "  note: " << st.note << "\n";
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      out << "  alpha=" << short_real(alphas[i].value()) << ": " << to_string(pt.verdicts[i]) << "\n";
    }
  }
  out << "P1 verdicts " << (rep.p1_consistent ? "agree" : "DISAGREE") << " with 'stable iff R0 < 1'\n";
  return kExitOk;
}

int cmd_converge(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto sys = build_system(cfg);
  const Vector x0 = initial_state(cfg, sys, err);
  try {
    validate_ladder(cfg.ladder, cfg.h_star);
    if (cfg.h_star > cfg.ladder.back()) throw ParameterError("h* must not exceed the smallest ladder step");
    for (double h : cfg.ladder) Grid::over(0.0, cfg.T, h);
    Grid::over(0.0, cfg.T, cfg.h_star);
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("--ladder/--h-star: ") + e.what());
  }

  std::vector<RateTable> tables;
  for (double a : cfg.alphas) {
    tables.push_back(rate_table(sys, FractionalOrder(a), x0, cfg.T, cfg.ladder, cfg.h_star, cfg.options));
  }

  std::ostringstream csv;
  csv << "alpha,h,xi";
  for (int i = 1; i <= sys.dim; ++i) csv << ",eps_x" << i;
  csv << ",rho\n";
  for (const auto& t : tables) {
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      csv << short_real(t.alpha.value()) << ',' << format_real(t.steps[i]) << ',' << format_real(t.xi[i]);
      for (double e : t.errors[i].eps_per_component) csv << ',' << format_real(e);
      csv << ',' << (i > 0 ? format_real(t.rho[i - 1]) : "") << '\n';
    }
  }
  if (!cfg.output.empty()) {
    auto file = open_output(cfg.output + "_rates.csv");
    file << csv.str();
  }
  if (cfg.format == "csv") {
    out << csv.str();
    return kExitOk;
  }

  out << "NSFD self-convergence, model " << cfg.model << ", x0=" << vec_text(x0, 4) << ", T=" << short_real(cfg.T)
      << ", h*=" << step_label(cfg.h_star) << "\n"
      << "rho = log2(xi(2h) / xi(h)) between neighbouring steps\n";
  auto cell = [](const std::string& s) {
    std::string c = s;
    if (c.size() < 11) c.append(11 - c.size(), ' ');
    return c;
  };
  out << cell("alpha") << cell("");
  for (double h : cfg.ladder) out << cell(step_label(h));
  out << "\n";
  for (const auto& t : tables) {
    out << cell(short_real(t.alpha.value())) << cell("xi");
    for (double e : t.xi) out << cell(sci(e));
    out << "\n" << cell("") << cell("rho") << cell("");
    for (double r : t.rho) out << cell(fixed(r, 4));
    out << "\n";
  }
  return kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto sys = build_system(cfg);
  const Vector x0 = initial_state(cfg, sys, err);
  check_horizon(cfg);
  if (cfg.alphas.empty()) throw ConfigError("--alpha: an order is required");
  const double alpha = cfg.alphas.front();
  if (cfg.alphas.size() > 1) err << "warning: compare uses the first alpha only\n";
  if (cfg.T == cfg.t0) {
    out << "empty comparison (T = t0)\n";
    return kExitOk;
  }

  const Grid nsfd_grid = make_grid(cfg, cfg.h_nsfd, "--h-nsfd");
  const Grid gl_grid = make_grid(cfg, cfg.h_gl, "--h-gl");
  const bool nsfd_coarse = nsfd_grid.h >= gl_grid.h;
  const double ratio = nsfd_coarse ? nsfd_grid.h / gl_grid.h : gl_grid.h / nsfd_grid.h;
  const double stride_d = std::round(ratio);
  if (std::abs(ratio - stride_d) > 1e-9 * ratio) {
    throw ConfigError("--h-nsfd/--h-gl: the larger step must be an integer multiple of the smaller");
  }
  const auto stride = static_cast<std::size_t>(stride_d);

  const auto nsfd = timed_integrate(sys, Scheme::NSFD, alpha, x0, nsfd_grid, cfg.options);
  const auto gl = timed_integrate(sys, Scheme::GL, alpha, x0, gl_grid, cfg.options);

  const auto& coarse = nsfd_coarse ? nsfd.traj : gl.traj;
  const auto& fine = nsfd_coarse ? gl.traj : nsfd.traj;
  double max_diff = 0.0;
  for (std::size_t n = 0; n < coarse.size(); ++n) {
    const double d = (coarse.state(n) - fine.state(n * stride)).lpNorm<Eigen::Infinity>();
    max_diff = std::max(max_diff, d);
  }

  if (!cfg.output.empty()) {
    auto f1 = open_output(trajectory_path(cfg.output, Scheme::NSFD, alpha));
    write_trajectory_csv(f1, nsfd.traj);
    auto f2 = open_output(trajectory_path(cfg.output, Scheme::GL, alpha));
    write_trajectory_csv(f2, gl.traj);
  }

  const double time_ratio = nsfd.seconds > 0.0 ? gl.seconds / nsfd.seconds : 0.0;
  out << "compare model=" << cfg.model << " alpha=" << short_real(alpha) << " x0=" << vec_text(x0, 4)
      << " T=" << short_real(cfg.T) << "\n"
      << "  NSFD h=" << short_real(nsfd_grid.h) << " steps=" << nsfd_grid.n_steps << " wall_s=" << fixed(nsfd.seconds, 6)
      << " negativity_events=" << nsfd.traj.negativity.size() << " final=" << vec_text(nsfd.traj.state(nsfd.traj.size() - 1)) << "\n"
      << "  GL   h=" << short_real(gl_grid.h) << " steps=" << gl_grid.n_steps << " wall_s=" << fixed(gl.seconds, 6)
      << " negativity_events=" << gl.traj.negativity.size() << " final=" << vec_text(gl.traj.state(gl.traj.size() - 1)) << "\n"
      << "  max node difference on the h=" << short_real(coarse.grid.h) << " grid: " << format_real(max_diff) << "\n"
      << "  wall-clock ratio GL/NSFD: " << fixed(time_ratio, 2) << "\n";
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto sys = build_system(cfg);
  if (!(cfg.box_max > 0.0)) throw ConfigError("--box-max must be > 0");
  const auto dec = validate_decomposition(sys, cfg.samples, cfg.box_max, cfg.seed);
  const auto mono = check_quasi_monotone(sys, cfg.samples, cfg.box_max, cfg.seed);

  out << "validate model=" << sys.name << " samples=" << cfg.samples << " box=[0," << short_real(cfg.box_max)
      << "]^" << sys.dim << " seed=" << cfg.seed << "\n"
      << "decomposition: " << (dec.pass ? "pass" : "fail") << "\n"
      << "  max |f - (f+ - x*f-)|: " << format_real(*dec.max_consistency_error) << "\n"
      << "  min f+: " << vec_text(*dec.min_plus) << "\n"
      << "  min f-: " << vec_text(*dec.min_minus) << "\n"
      << "  min f_i on face x_i=0: " << vec_text(*dec.min_boundary_f) << "\n";
  for (const auto& f : dec.findings) out << "  finding: " << f << "\n";
  out << "quasi-monotone: " << (mono.pass ? "pass" : "fail") << "\n"
      << "  min f_i(x) - f_i(y): " << format_real(*mono.min_monotone_increment) << "\n";
  for (const auto& f : mono.findings) out << "  finding: " << f << "\n";
  return kExitOk;
}

}  // namespace fracstep::cli
