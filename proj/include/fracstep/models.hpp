#pragma once

#include "fracstep/system.hpp"

#include <map>
#include <string>
#include <vector>

namespace fracstep {

/// Holling type-II predator-prey model with linear predator harvesting:
///   D x = s x (1 - x/K) - q x y / (1 + q1 x)
///   D y = beta x y / (1 + q1 x) - (s0 + E) y
struct PredatorPreyParams {
  double s = 0.1;     // prey growth rate
  double K = 5.0;     // carrying capacity
  double q = 1.0;     // maximal consumption rate
  double q1 = 2.0;    // handling time
  double beta = 5.0;  // conversion factor
  double s0 = 0.7;    // predator death rate
  double E = 0.3;     // harvesting effort

  void validate() const;
  std::map<std::string, double> as_map() const;
  static PredatorPreyParams from_map(const std::map<std::string, double>& values);
};

/// D x = b x (1 - x) - a x y / (1 + x),  D y = x y / (1 + x) - c y.
struct ToyModelParams {
  double a = 2.0;
  double b = 1.0;
  double c = 6.0;

  void validate() const;
  std::map<std::string, double> as_map() const;
  static ToyModelParams from_map(const std::map<std::string, double>& values);
};

/// f_+ = (s x, beta x y / (1 + q1 x)),  f_- = (s x / K + q y / (1 + q1 x), s0 + E).
DecomposedSystem predator_prey_system(const PredatorPreyParams& p);

/// f_+ = (b x, x y / (1 + x)),  f_- = (b x + a y / (1 + x), c).
DecomposedSystem toy_system(const ToyModelParams& p);

/// Names accepted by make_model.
std::vector<std::string> model_names();

/// Default parameter map of a registered model.
std::map<std::string, double> model_defaults(const std::string& name);

/// Builds a registered model; `overrides` replaces entries of the default map.
/// Unknown model names or parameter keys raise ParameterError.
DecomposedSystem make_model(const std::string& name,
                            const std::map<std::string, double>& overrides = {});

}  // namespace fracstep
