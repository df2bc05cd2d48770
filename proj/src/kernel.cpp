#include "plap/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace plap {

double unit_ball_volume(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

Kernel::Kernel(Family family, int d) : family_(family), d_(d) {
  if (d < 1) throw std::invalid_argument("kernel dimension must be positive");
  const double alpha_d = unit_ball_volume(d);
  switch (family) {
    case Family::uniform:
      coeff_ = 1.0 / alpha_d;
      break;
    case Family::triangle:
      // Unit-integral constraint: c_d * d * alpha_d * int_0^1 (1-t) t^{d-1} dt
      //                         = c_d * alpha_d / (d+1) = 1.
      coeff_ = (d + 1.0) / alpha_d;
      break;
  }

  // Verify int_{R^d} eta(|x|) dx = d * alpha_d * int_0^1 eta(t) t^{d-1} dt = 1
  // by composite Simpson quadrature.
  const int steps = 20000;
  const double h = 1.0 / steps;
  double acc = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double t = i * h;
    const double f = (*this)(std::min(t, 1.0 - 1e-12)) * std::pow(t, d - 1);
    const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += w * f;
  }
  const double integral = d * alpha_d * acc * h / 3.0;
  if (std::abs(integral - 1.0) > 1e-6) {
    throw std::invalid_argument("kernel does not integrate to 1");
  }
}

Kernel Kernel::uniform(int d) { return Kernel(Family::uniform, d); }
Kernel Kernel::triangle(int d) { return Kernel(Family::triangle, d); }

Kernel Kernel::parse(const std::string& name, int d) {
  if (name == "uniform") return uniform(d);
  if (name == "triangle") return triangle(d);
  throw std::invalid_argument("unknown kernel '" + name + "'");
}

double Kernel::operator()(double t) const {
  if (t < 0.0) throw std::invalid_argument("kernel argument must be nonnegative");
  if (t >= 1.0) return 0.0;
  switch (family_) {
    case Family::uniform:
      return coeff_;
    case Family::triangle:
      return coeff_ * (1.0 - t);
  }
  return 0.0;
}

double Kernel::scaled(double dist, double eps) const {
  if (eps <= 0.0) throw std::invalid_argument("bandwidth must be positive");
  return std::pow(eps, -d_) * (*this)(dist / eps);
}

const char* Kernel::name() const {
  return family_ == Family::uniform ? "uniform" : "triangle";
}

}  // namespace plap
