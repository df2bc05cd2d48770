#pragma once

#include <span>
#include <string>
#include <vector>

#include "plap/graph.hpp"

namespace plap {

// p in [2, inf] with its tug-of-war mixing weight alpha = 1/(p-1)
// (alpha = 0 at p = inf).
class PValue {
 public:
  static PValue finite(double p);
  static PValue infinity();
  static PValue parse(const std::string& text);  // "2", "3.5", "inf"

  bool is_infinite() const { return infinite_; }
  double p() const;  // throws for p = inf
  double alpha() const { return alpha_; }
  std::string str() const;

 private:
  PValue(double p, bool infinite);
  double p_ = 2.0;
  bool infinite_ = false;
  double alpha_ = 1.0;
};

enum class Sweep { jacobi, gauss_seidel };
enum class Initialization { min_label, max_label, label_mean };

struct SolverConfig {
  double tolerance = 1e-10;  // sup-norm residual of L_p u over unlabeled vertices
  long max_iterations = 1000000;
  Sweep sweep = Sweep::gauss_seidel;
  Initialization initialization = Initialization::label_mean;

  void validate() const;
};

struct SolveResult {
  std::vector<double> u;
  long iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

// (1/d_x) sum_y w_xy (u(x) - u(y)).
double apply_rw_laplacian(const Graph& g, std::span<const double> u, int x);

// u(x) - (max_{N_x} u + min_{N_x} u) / 2; weights enter only through the
// support pattern.
double apply_infty_laplacian(const Graph& g, std::span<const double> u, int x);

// alpha * L_rw + (1 - alpha) * L_inf.
double apply_game_p_laplacian(const Graph& g, std::span<const double> u, int x,
                              const PValue& p);

// (alpha/d_x) sum_y w_xy u(y) + ((1-alpha)/2)(min_{N_x} u + max_{N_x} u).
// Satisfies u(x) - dpp_rhs(x) = apply_game_p_laplacian(x).
double dpp_rhs(const Graph& g, std::span<const double> u, int x, const PValue& p);

// Monotone fixed-point iteration of the DPP with u = g pinned on Gamma.
// Every connected component must contain a labeled vertex. Non-convergence
// is reported through the flag, not an exception.
SolveResult solve_dirichlet(const Graph& g, const LabelSet& labels, const PValue& p,
                            const SolverConfig& cfg = {});

// Threshold at 1/2; ties classify as 1.
std::vector<int> classify(std::span<const double> u);

}  // namespace plap
