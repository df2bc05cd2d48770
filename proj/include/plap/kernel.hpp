#pragma once

#include <string>

namespace plap {

// Volume of the d-dimensional Euclidean unit ball.
double unit_ball_volume(int d);

// Interaction potential eta with support [0,1), nonincreasing, eta(1/2)>0,
// normalized so that the radial integral over R^d equals 1. The normalizer
// is verified by quadrature at construction.
class Kernel {
 public:
  enum class Family { uniform, triangle };

  static Kernel uniform(int d);
  static Kernel triangle(int d);
  static Kernel parse(const std::string& name, int d);

  // eta(t); zero for t >= 1.
  double operator()(double t) const;

  // eta_eps(dist) = eps^{-d} eta(dist/eps).
  double scaled(double dist, double eps) const;

  int dimension() const { return d_; }
  Family family() const { return family_; }
  const char* name() const;

 private:
  Kernel(Family family, int d);
  Family family_;
  int d_;
  double coeff_;
};

}  // namespace plap
