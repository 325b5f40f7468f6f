#pragma once

#include <stdexcept>
#include <string>

namespace esdg {

/// Raised when a state with non-positive density or pressure is encountered.
/// Carries the location so solver blow-ups can be traced to a node.
class NonPhysicalState : public std::runtime_error {
public:
  NonPhysicalState(double rho, double pressure, int element, int node,
                   int stage = -1)
      : std::runtime_error(format(rho, pressure, element, node, stage)),
        rho_(rho), pressure_(pressure), element_(element), node_(node),
        stage_(stage) {}

  double rho() const { return rho_; }
  double pressure() const { return pressure_; }
  int element() const { return element_; }
  int node() const { return node_; }
  int stage() const { return stage_; }

  NonPhysicalState with_stage(int stage) const {
    return NonPhysicalState(rho_, pressure_, element_, node_, stage);
  }

private:
  static std::string format(double rho, double p, int element, int node,
                            int stage) {
    std::string msg = "non-physical state (rho=" + std::to_string(rho) +
                      ", p=" + std::to_string(p) + ")";
    if (element >= 0)
      msg += " at element=" + std::to_string(element) +
             " node=" + std::to_string(node);
    if (stage >= 0) msg += " stage=" + std::to_string(stage);
    return msg;
  }

  double rho_, pressure_;
  int element_, node_, stage_;
};

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A peer rank failed to deliver a face trace in time.
class ExchangeTimeout : public std::runtime_error {
public:
  explicit ExchangeTimeout(const std::string& msg)
      : std::runtime_error(msg) {}
};

} // namespace esdg
