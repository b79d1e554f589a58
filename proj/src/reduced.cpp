#include "hjcrit/reduced.hpp"

#include <cmath>
#include <sstream>

#include "hjcrit/fields.hpp"
#include "hjcrit/gaussian.hpp"

namespace hjcrit {

double ode_rhs(const ReducedState& s, double q) {
  if (s.mass < 0.0) throw InvalidArgument("reduced model: mass must be nonnegative");
  if (s.mass == 0.0) return 0.0;
  return -s.c * std::pow(s.mass, q);
}

double ode_rhs(const ReducedState& s) { return ode_rhs(s, q_star(s.dim)); }

double exact_solution(double mass0, double c, double tau, int dim) {
  if (mass0 == 0.0) return 0.0;
  const double k = dim + 1.0;
  return std::pow(std::pow(mass0, -1.0 / k) + c * tau / k, -k);
}

std::vector<ReducedState> integrate_reduced(double mass0, double c, double tau_end, double dt,
                                            int dim) {
  if (mass0 < 0.0) throw InvalidArgument("integrate_reduced: initial mass must be >= 0");
  if (!(dt > 0.0 && dt <= 1e-2)) {
    std::ostringstream msg;
    msg << "integrate_reduced: dt must lie in (0, 1e-2], got " << dt;
    throw InvalidArgument(msg.str());
  }
  const double q = q_star(dim);
  const auto f = [&](double m) { return m > 0.0 ? -c * std::pow(m, q) : 0.0; };

  std::vector<ReducedState> out;
  out.reserve(static_cast<std::size_t>(tau_end / dt) + 2);
  ReducedState s{0.0, mass0, c, dim};
  out.push_back(s);
  std::size_t steps = 0;
  while (s.tau < tau_end) {
    ++steps;
    const double target = std::min(tau_end, steps * dt);
    const double h = target - s.tau;
    if (h <= 0.0) break;
    const double k1 = f(s.mass);
    const double k2 = f(s.mass + 0.5 * h * k1);
    const double k3 = f(s.mass + 0.5 * h * k2);
    const double k4 = f(s.mass + h * k3);
    s.mass += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    s.tau = target;
    out.push_back(s);
  }
  return out;
}

double reduced_asymptote(double c, int dim) {
  const double k = dim + 1.0;
  return std::pow(k / c, k);
}

double asymptote_deviation(double mass0, double c, int dim, double tau) {
  if (!(tau > 0.0)) throw InvalidArgument("asymptote_deviation requires tau > 0");
  const double k = dim + 1.0;
  const double x = k * std::pow(mass0, -1.0 / k) / (c * tau);
  return std::expm1(-k * std::log1p(x));
}

}  // namespace hjcrit
