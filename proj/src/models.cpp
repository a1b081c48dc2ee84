#include "fracstep/models.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace fracstep {

Vector DecomposedSystem::full(const Vector& x) const {
  if (!eval_full) throw ContractViolation("system '" + name + "' has no full evaluator");
  return (*eval_full)(x);
}

Vector DecomposedSystem::recombined(const Vector& x) const {
  return eval_plus(x) - x.cwiseProduct(eval_minus(x));
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

double lookup(const std::map<std::string, double>& values, const std::string& key, double fallback) {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

void reject_unknown(const std::map<std::string, double>& values,
                    const std::map<std::string, double>& known, const std::string& model) {
  for (const auto& [key, value] : values) {
    if (!known.contains(key)) {
      throw ParameterError("unknown parameter '" + key + "' for model '" + model + "'");
    }
  }
}

}  // namespace

void PredatorPreyParams::validate() const {
  require(s > 0.0, "predator_prey: s must be > 0");
  require(K > 0.0, "predator_prey: K must be > 0");
  require(q > 0.0, "predator_prey: q must be > 0");
  require(q1 >= 0.0, "predator_prey: q1 must be >= 0");
  require(beta > 0.0, "predator_prey: beta must be > 0");
  require(s0 > 0.0, "predator_prey: s0 must be > 0");
  require(E >= 0.0, "predator_prey: E must be >= 0");
}

std::map<std::string, double> PredatorPreyParams::as_map() const {
  return {{"s", s}, {"K", K}, {"q", q}, {"q1", q1}, {"beta", beta}, {"s0", s0}, {"E", E}};
}

PredatorPreyParams PredatorPreyParams::from_map(const std::map<std::string, double>& values) {
  const PredatorPreyParams d;
  reject_unknown(values, d.as_map(), "predator_prey");
  PredatorPreyParams p;
  p.s = lookup(values, "s", d.s);
  p.K = lookup(values, "K", d.K);
  p.q = lookup(values, "q", d.q);
  p.q1 = lookup(values, "q1", d.q1);
  p.beta = lookup(values, "beta", d.beta);
  p.s0 = lookup(values, "s0", d.s0);
  p.E = lookup(values, "E", d.E);
  return p;
}

void ToyModelParams::validate() const {
  require(a >= 0.0 && b >= 0.0 && c >= 0.0, "toy: a, b, c must be >= 0");
}

std::map<std::string, double> ToyModelParams::as_map() const {
  return {{"a", a}, {"b", b}, {"c", c}};
}

ToyModelParams ToyModelParams::from_map(const std::map<std::string, double>& values) {
  const ToyModelParams d;
  reject_unknown(values, d.as_map(), "toy");
  return {lookup(values, "a", d.a), lookup(values, "b", d.b), lookup(values, "c", d.c)};
}

DecomposedSystem predator_prey_system(const PredatorPreyParams& p) {
  p.validate();
  const double death = p.s0 + p.E;

  DecomposedSystem sys;
  sys.name = "predator_prey";
  sys.dim = 2;
  sys.params = p.as_map();
  sys.eval_plus = [p](const Vector& v) {
    const double x = v[0], y = v[1];
    return Vector{{p.s * x, p.beta * x * y / (1.0 + p.q1 * x)}};
  };
  sys.eval_minus = [p, death](const Vector& v) {
    const double x = v[0], y = v[1];
    return Vector{{p.s * x / p.K + p.q * y / (1.0 + p.q1 * x), death}};
  };
  sys.eval_full = [p, death](const Vector& v) {
    const double x = v[0], y = v[1];
    const double response = x * y / (1.0 + p.q1 * x);
    return Vector{{p.s * x * (1.0 - x / p.K) - p.q * response, p.beta * response - death * y}};
  };
  sys.jacobian = [p, death](const Vector& v) {
    const double x = v[0], y = v[1];
    const double u = 1.0 + p.q1 * x;
    Matrix j(2, 2);
    j << p.s - 2.0 * p.s * x / p.K - p.q * y / (u * u), -p.q * x / u,
        p.beta * y / (u * u), p.beta * x / u - death;
    return j;
  };
  return sys;
}

DecomposedSystem toy_system(const ToyModelParams& p) {
  p.validate();

  DecomposedSystem sys;
  sys.name = "toy";
  sys.dim = 2;
  sys.params = p.as_map();
  sys.eval_plus = [p](const Vector& v) {
    const double x = v[0], y = v[1];
    return Vector{{p.b * x, x * y / (1.0 + x)}};
  };
  sys.eval_minus = [p](const Vector& v) {
    const double x = v[0], y = v[1];
    return Vector{{p.b * x + p.a * y / (1.0 + x), p.c}};
  };
  sys.eval_full = [p](const Vector& v) {
    const double x = v[0], y = v[1];
    const double response = x * y / (1.0 + x);
    return Vector{{p.b * x * (1.0 - x) - p.a * response, response - p.c * y}};
  };
  sys.jacobian = [p](const Vector& v) {
    const double x = v[0], y = v[1];
    const double u = 1.0 + x;
    Matrix j(2, 2);
    j << p.b - 2.0 * p.b * x - p.a * y / (u * u), -p.a * x / u,
        y / (u * u), x / u - p.c;
    return j;
  };
  return sys;
}

namespace {

struct ModelEntry {
  std::map<std::string, double> defaults;
  std::function<DecomposedSystem(const std::map<std::string, double>&)> build;
};

const std::map<std::string, ModelEntry>& registry() {
  static const std::map<std::string, ModelEntry> models = {
      {"predator_prey",
       {PredatorPreyParams{}.as_map(),
        [](const auto& m) { return predator_prey_system(PredatorPreyParams::from_map(m)); }}},
      {"toy",
       {ToyModelParams{}.as_map(),
        [](const auto& m) { return toy_system(ToyModelParams::from_map(m)); }}},
  };
  return models;
}

const ModelEntry& entry(const std::string& name) {
  const auto& models = registry();
  auto it = models.find(name);
  if (it == models.end()) throw ParameterError("unknown model '" + name + "'");
  return it->second;
}

}  // namespace

std::vector<std::string> model_names() {
  std::vector<std::string> names;
  for (const auto& [name, e] : registry()) names.push_back(name);
  return names;
}

std::map<std::string, double> model_defaults(const std::string& name) { return entry(name).defaults; }

DecomposedSystem make_model(const std::string& name, const std::map<std::string, double>& overrides) {
  const auto& e = entry(name);
  auto values = e.defaults;
  for (const auto& [key, value] : overrides) {
    if (!values.contains(key)) {
      throw ParameterError("unknown parameter '" + key + "' for model '" + name + "'");
    }
    values[key] = value;
  }
  return e.build(values);
}

}  // namespace fracstep
