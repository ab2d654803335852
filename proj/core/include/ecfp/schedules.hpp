#ifndef ECFP_SCHEDULES_HPP
#define ECFP_SCHEDULES_HPP

#include <cstdint>

namespace ecfp {

// Step sizes gamma_t = (t + t0)^(-rho). Admissibility (nonnegative,
// vanishing, divergent sum) holds analytically for rho in (0,1], t0 >= 0,
// so it is enforced at construction and never re-checked per step.
class StepSizeSchedule {
 public:
  enum class Family { classical, power };

  // gamma_t = 1/(t+1), the running-average step.
  static StepSizeSchedule classical();
  // gamma_t = (t + t0)^(-rho); rho in (0,1], t0 >= 0.
  static StepSizeSchedule power(double rho, double t0);

  Family family() const { return family_; }
  double rho() const { return rho_; }
  double t0() const { return t0_; }

 private:
  StepSizeSchedule(Family family, double rho, double t0);

  Family family_;
  double rho_;
  double t0_;
};

double gamma_at(const StepSizeSchedule& s, std::int64_t t);

// Perturbations epsilon_t = c * (t+1)^(-beta), vanishing for beta > 0;
// the zero family keeps the process unperturbed.
class EpsilonSchedule {
 public:
  enum class Family { zero, power };

  static EpsilonSchedule zero();
  // epsilon_t = scale * (t+1)^(-beta); scale >= 0, beta > 0.
  static EpsilonSchedule power(double scale, double beta);

  Family family() const { return family_; }
  double scale() const { return scale_; }
  double beta() const { return beta_; }

 private:
  EpsilonSchedule(Family family, double scale, double beta);

  Family family_;
  double scale_;
  double beta_;
};

double epsilon_at(const EpsilonSchedule& s, std::int64_t t);

}  // namespace ecfp

#endif  // ECFP_SCHEDULES_HPP
