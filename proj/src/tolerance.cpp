#include "transition/tolerance.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace transition {

namespace {

double initial_tol() {
  const char* env = std::getenv("TRANSITION_LAB_TOL");
  if (env == nullptr || *env == '\0') return 1e-10;
  std::size_t used = 0;
  double value = std::stod(env, &used);
  if (used != std::string(env).size() || !(value > 0.0)) {
    throw std::invalid_argument(std::string("TRANSITION_LAB_TOL must be a positive number, got '") +
                                env + "'");
  }
  return value;
}

std::atomic<double>& tol_slot() {
  static std::atomic<double> slot{initial_tol()};
  return slot;
}

}  // namespace

double default_tol() { return tol_slot().load(std::memory_order_relaxed); }

void set_default_tol(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  tol_slot().store(tol, std::memory_order_relaxed);
}

}  // namespace transition
