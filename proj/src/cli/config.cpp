#include "fracstep/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fracstep::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string normalise_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

std::string unquote(std::string v) {
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) {
    return v.substr(1, v.size() - 2);
  }
  return v;
}

bool is_known(const std::string& key) {
  if (key.rfind("param.", 0) == 0) return key.size() > 6;
  const auto& keys = known_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

double parse_plain(const std::string& text, const std::string& origin) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(v)) {
    throw ConfigError(origin + ": '" + text + "' is not a number");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, sep);) parts.push_back(trim(part));
  return parts;
}

bool parse_bool(const std::string& text, const std::string& origin) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(origin + ": '" + text + "' is not a boolean");
}

std::uint64_t parse_seed(const std::string& text, const std::string& origin) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError(origin + ": '" + text + "' is not a nonnegative integer seed");
  }
  return v;
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "model", "set",   "scheme",  "alpha",  "x0",     "t0",         "T",
      "h",     "output", "seed",   "newton_tol", "newton_max_iter", "negativity_policy",
      "gl_explicit", "ladder", "h_star", "h_nsfd", "h_gl", "samples", "box_max", "format"};
  return keys;
}

Settings parse_config_text(const std::string& text, const std::string& source) {
  Settings out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string origin = source + ":" + std::to_string(lineno);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(origin + ": expected 'key = value'");
    const std::string key = normalise_key(trim(line.substr(0, eq)));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    if (!is_known(key)) throw ConfigError(origin + ": unknown key '" + key + "'");
    if (out.contains(key)) throw ConfigError(origin + ": duplicate key '" + key + "'");
    out[key] = {value, origin};
  }
  return out;
}

Settings load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

double parse_real(const std::string& raw, const std::string& origin) {
  const std::string text = trim(raw);
  const auto caret = text.find('^');
  if (caret == std::string::npos) return parse_plain(text, origin);
  const double base = parse_plain(text.substr(0, caret), origin);
  const double exponent = parse_plain(text.substr(caret + 1), origin);
  const double v = std::pow(base, exponent);
  if (!std::isfinite(v)) throw ConfigError(origin + ": '" + text + "' overflows");
  return v;
}

std::vector<double> parse_real_list(const std::string& text, const std::string& origin) {
  std::vector<double> values;
  for (const auto& part : split(text, ',')) {
    if (part.empty()) throw ConfigError(origin + ": empty entry in list '" + text + "'");
    // "a..b" spans a dyadic ladder from a down to b.
    if (const auto dots = part.find(".."); dots != std::string::npos && part.find('^') != std::string::npos) {
      const double hi = parse_real(part.substr(0, dots), origin);
      const double lo = parse_real(part.substr(dots + 2), origin);
      if (!(lo > 0.0) || lo > hi) throw ConfigError(origin + ": bad ladder range '" + part + "'");
      for (double h = hi; h >= lo * (1.0 - 1e-12); h *= 0.5) values.push_back(h);
      continue;
    }
    values.push_back(parse_real(part, origin));
  }
  if (values.empty()) throw ConfigError(origin + ": empty list");
  return values;
}

std::map<std::string, double> parse_param_list(const std::string& text, const std::string& origin) {
  std::map<std::string, double> out;
  for (const auto& part : split(text, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ConfigError(origin + ": expected name=value, got '" + part + "'");
    const auto name = trim(part.substr(0, eq));
    if (name.empty()) throw ConfigError(origin + ": missing parameter name in '" + part + "'");
    out[name] = parse_real(part.substr(eq + 1), origin + " (" + name + ")");
  }
  return out;
}

RunConfig resolve_config(const RunConfig& base, const Settings& file, const Settings& flags) {
  RunConfig cfg = base;
  auto pick = [&](const std::string& key) -> const Setting* {
    if (auto it = flags.find(key); it != flags.end()) return &it->second;
    if (auto it = file.find(key); it != file.end()) return &it->second;
    return nullptr;
  };

  if (const auto* s = pick("model")) cfg.model = s->value;

  if (auto it = file.find("set"); it != file.end()) {
    for (const auto& [k, v] : parse_param_list(it->second.value, it->second.origin)) cfg.params[k] = v;
  }
  for (const auto& [key, s] : file) {
    if (key.rfind("param.", 0) == 0) cfg.params[key.substr(6)] = parse_real(s.value, s.origin);
  }
  if (auto it = flags.find("set"); it != flags.end()) {
    for (const auto& [k, v] : parse_param_list(it->second.value, it->second.origin)) cfg.params[k] = v;
  }

  if (const auto* s = pick("scheme")) {
    if (s->value == "GL" || s->value == "gl") {
      cfg.scheme = SchemeChoice::GL;
    } else if (s->value == "NSFD" || s->value == "nsfd") {
      cfg.scheme = SchemeChoice::NSFD;
    } else if (s->value == "both") {
      cfg.scheme = SchemeChoice::both;
    } else {
      throw ConfigError(s->origin + ": scheme must be GL, NSFD or both, got '" + s->value + "'");
    }
  }
  if (const auto* s = pick("alpha")) {
    cfg.alphas = parse_real_list(s->value, s->origin);
    for (double a : cfg.alphas) {
      if (!(a > 0.0 && a <= 1.0)) throw ConfigError(s->origin + ": alpha " + s->value + " outside (0, 1]");
    }
  }
  if (const auto* s = pick("x0")) cfg.x0 = parse_real_list(s->value, s->origin);
  if (const auto* s = pick("t0")) cfg.t0 = parse_real(s->value, s->origin);
  if (const auto* s = pick("T")) cfg.T = parse_real(s->value, s->origin);
  if (const auto* s = pick("h")) {
    cfg.h = parse_real(s->value, s->origin);
    if (!(cfg.h > 0.0)) throw ConfigError(s->origin + ": h must be > 0");
  }
  if (const auto* s = pick("output")) cfg.output = s->value;
  if (const auto* s = pick("seed")) cfg.seed = parse_seed(s->value, s->origin);
  if (const auto* s = pick("newton_tol")) {
    cfg.options.newton_tol = parse_real(s->value, s->origin);
    if (!(cfg.options.newton_tol > 0.0)) throw ConfigError(s->origin + ": newton_tol must be > 0");
  }
  if (const auto* s = pick("newton_max_iter")) {
    const double v = parse_real(s->value, s->origin);
    if (v < 1 || v != std::floor(v)) throw ConfigError(s->origin + ": newton_max_iter must be an integer >= 1");
    cfg.options.newton_max_iter = static_cast<int>(v);
  }
  if (const auto* s = pick("negativity_policy")) {
    if (s->value == "record") {
      cfg.options.negativity_policy = NegativityPolicy::record;
    } else if (s->value == "halt") {
      cfg.options.negativity_policy = NegativityPolicy::halt;
    } else {
      throw ConfigError(s->origin + ": negativity_policy must be record or halt");
    }
  }
  if (const auto* s = pick("gl_explicit")) cfg.options.gl_explicit = parse_bool(s->value, s->origin);
  if (const auto* s = pick("ladder")) cfg.ladder = parse_real_list(s->value, s->origin);
  if (const auto* s = pick("h_star")) cfg.h_star = parse_real(s->value, s->origin);
  if (const auto* s = pick("h_nsfd")) cfg.h_nsfd = parse_real(s->value, s->origin);
  if (const auto* s = pick("h_gl")) cfg.h_gl = parse_real(s->value, s->origin);
  if (const auto* s = pick("samples")) {
    const double v = parse_real(s->value, s->origin);
    if (v < 1 || v != std::floor(v)) throw ConfigError(s->origin + ": samples must be an integer >= 1");
    cfg.samples = static_cast<std::size_t>(v);
  }
  if (const auto* s = pick("box_max")) cfg.box_max = parse_real(s->value, s->origin);
  if (const auto* s = pick("format")) {
    if (s->value != "text" && s->value != "csv") throw ConfigError(s->origin + ": format must be text or csv");
    cfg.format = s->value;
  }
  return cfg;
}

RunConfig defaults_for(const std::string& command) {
  RunConfig cfg;
  if (const char* env = std::getenv("FRACSTEP_SEED"); env != nullptr && *env != '\0') {
    cfg.seed = parse_seed(env, "FRACSTEP_SEED");
  }
  if (command == "simulate") {
    cfg.alphas = {0.8};
  } else if (command == "stability") {
    cfg.alphas = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  } else if (command == "converge") {
    cfg.alphas = {0.5, 0.6, 0.7, 0.8, 0.9};
    cfg.x0 = {0.05, 0.05};
    cfg.T = 1.0;
    cfg.ladder = {0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
    cfg.h_star = std::ldexp(1.0, -12);
  } else if (command == "compare") {
    cfg.alphas = {0.8};
    cfg.T = 5.0;
  }
  return cfg;
}

}  // namespace fracstep::cli
