#pragma once

#include <stdexcept>
#include <string>

namespace vdw {

/// Multipole series failed to reach the requested tolerance within n_max.
class SeriesError : public std::runtime_error {
 public:
  SeriesError(const std::string& msg, int n_used, double tail_estimate)
      : std::runtime_error(msg), n_used(n_used), tail_estimate(tail_estimate) {}
  int n_used;
  double tail_estimate;
};

/// Adaptive quadrature exhausted its panel budget.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& msg, int panels, double est_error)
      : std::runtime_error(msg), panels(panels), est_error(est_error) {}
  int panels;
  double est_error;
};

/// Config file or flag could not be parsed / validated.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& msg, int line = 0, std::string field = "")
      : std::runtime_error(msg), line(line), field(std::move(field)) {}
  int line;
  std::string field;
};

}  // namespace vdw
