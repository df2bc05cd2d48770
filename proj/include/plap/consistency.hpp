#pragma once

#include <span>
#include <vector>

#include "plap/builders.hpp"
#include "plap/graph.hpp"
#include "plap/solver.hpp"

namespace plap {

// Smallest integer strictly greater than 2 log(2) / (1 - alpha + 2 alpha delta).
// Requires delta > 0 (A1).
int kappa(const PValue& p, double delta_value);

struct Th1Certificate {
  bool applicable = false;  // false when A1 fails
  bool holds = false;
  double bound = 0.0;
  double max_violation = 0.0;
  double delta_value = 0.0;
  double grad_norm = 0.0;
  double sup_norm = 0.0;
  bool negative_log_term = false;  // ||grad g|| > ||g||: literal bound reported, flagged
};

// |u - g| <= (2 log(||g||/||grad g||) / (1 - alpha + 2 alpha delta) + 2) ||grad g||.
Th1Certificate th1_certificate(const Graph& g, const LabelSet& labels,
                               std::span<const double> u, const PValue& p);

struct Th3Certificate {
  bool applicable = false;
  bool holds = false;
  double bound = 0.0;
  double max_edge_diff = 0.0;
  bool negative_log_term = false;
};

// |u(x) - u(y)| over edges <= (4 log(||g||/||grad g||) / (1 - alpha + 2 alpha delta) + 5) ||grad g||.
Th3Certificate th3_certificate(const Graph& g, const LabelSet& labels,
                               std::span<const double> u, const PValue& p);

struct Th2Certificate {
  bool applicable = false;
  bool holds = false;
  int kappa_value = 0;
  std::vector<int> band;        // A_kappa
  std::vector<int> violations;  // misclassified vertices outside the band
};

// Every vertex outside A_kappa classifies correctly.
Th2Certificate th2_certificate(const Graph& g, const LabelSet& labels,
                               std::span<const double> u, const PValue& p);

// Empirical delta/beta; the existential constant of the geometric-graph
// labeling theorem is reported as an observed ratio, not verified.
double delta_beta_ratio(const Graph& g, const LabelSet& labels, double beta);

struct SbmRates {
  std::vector<double> gamma;      // per-vertex inter-class weighted degree fraction
  std::vector<double> beta_frac;  // per-vertex labeled same-class fraction
  double gamma_max = 0.0;
  double beta_min = 1.0;
  std::vector<int> flagged;  // vertices with zero same-class degree, excluded from beta_min
};

SbmRates sbm_rates(const Graph& g, std::span<const int> truth, const LabelSet& labels);

struct SbmCertificate {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double sigma = 0.0;  // (1+s1)(1+s2)/(1-s2)^2 - 1
  double threshold = 0.0;
  bool condition_holds = false;  // (r/q) beta > (1+sigma) max{N0/(N1-1), N1/(N0-1)}
  double probability_bound = 0.0;          // union-bound failure-term sum; may be <= 0
  double probability_bound_literal = 0.0;  // the printed variant with the minus sign
};

SbmCertificate sbm_threshold_check(const SbmSpec& spec, double beta, double sigma1,
                                   double sigma2);

// beta_min > gamma_max / (1 - gamma_max); unsatisfiable (false) at gamma_max = 1.
bool suff_condition_check(const SbmRates& rates);

}  // namespace plap
