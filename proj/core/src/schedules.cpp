#include "ecfp/schedules.hpp"

#include <cmath>
#include <stdexcept>

namespace ecfp {

StepSizeSchedule::StepSizeSchedule(Family family, double rho, double t0)
    : family_(family), rho_(rho), t0_(t0) {}

StepSizeSchedule StepSizeSchedule::classical() {
  return StepSizeSchedule(Family::classical, 1.0, 1.0);
}

StepSizeSchedule StepSizeSchedule::power(double rho, double t0) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw std::invalid_argument(
        "step size exponent rho must lie in (0, 1]; the step sum diverges "
        "only in that range");
  }
  if (!(t0 >= 0.0) || !std::isfinite(t0)) {
    throw std::invalid_argument("step size offset t0 must be finite and >= 0");
  }
  return StepSizeSchedule(Family::power, rho, t0);
}

double gamma_at(const StepSizeSchedule& s, std::int64_t t) {
  if (t < 1) throw std::invalid_argument("iteration index must be >= 1");
  const double base = static_cast<double>(t) + s.t0();
  // rho == 1 uses plain division so the classical schedule is the exactly
  // rounded 1/(t+1) rather than pow's approximation.
  if (s.rho() == 1.0) return 1.0 / base;
  return std::pow(base, -s.rho());
}

EpsilonSchedule::EpsilonSchedule(Family family, double scale, double beta)
    : family_(family), scale_(scale), beta_(beta) {}

EpsilonSchedule EpsilonSchedule::zero() {
  return EpsilonSchedule(Family::zero, 0.0, 0.0);
}

EpsilonSchedule EpsilonSchedule::power(double scale, double beta) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument(
        "perturbation scale must be finite and >= 0");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument(
        "perturbation exponent beta must be finite and > 0");
  }
  return EpsilonSchedule(Family::power, scale, beta);
}

double epsilon_at(const EpsilonSchedule& s, std::int64_t t) {
  if (t < 1) throw std::invalid_argument("iteration index must be >= 1");
  if (s.family() == EpsilonSchedule::Family::zero) return 0.0;
  const double base = static_cast<double>(t) + 1.0;
  if (s.beta() == 1.0) return s.scale() / base;
  return s.scale() * std::pow(base, -s.beta());
}

}  // namespace ecfp
