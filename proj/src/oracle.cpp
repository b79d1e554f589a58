#include "hjcrit/oracle.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <numbers>

#include "hjcrit/fields.hpp"

namespace hjcrit::oracle {

double integrate_half_line(const std::function<double(double)>& f) {
  boost::math::quadrature::exp_sinh<double> rule;
  return rule.integrate(f, 0.0, std::numeric_limits<double>::infinity());
}

double integrate_real_line(const std::function<double(double)>& f) {
  return integrate_half_line(f) + integrate_half_line([&f](double x) { return f(-x); });
}

double gradient_norm(int dim, double q, double amplitude) {
  const double pi = std::numbers::pi;
  // |∇(aG)|(r) = a (r/2) (4π)^{-N/2} e^{-r²/4}
  const auto grad_abs = [=](double r) {
    return amplitude * 0.5 * r * std::pow(4.0 * pi, -0.5 * dim) * std::exp(-0.25 * r * r);
  };
  double integral;
  if (dim == 1) {
    integral = integrate_real_line([&](double x) { return std::pow(grad_abs(std::abs(x)), q); });
  } else if (dim == 2) {
    integral = integrate_half_line([&](double r) { return 2.0 * pi * r * std::pow(grad_abs(r), q); });
  } else {
    throw InvalidArgument("oracle::gradient_norm supports dimensions 1 and 2");
  }
  return std::pow(integral, 1.0 / q);
}

}  // namespace hjcrit::oracle
