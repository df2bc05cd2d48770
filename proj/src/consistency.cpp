#include "plap/consistency.hpp"

#include <algorithm>
#include <cmath>

namespace plap {

namespace {

double exit_rate(const PValue& p, double delta_value) {
  const double a = p.alpha();
  return 1.0 - a + 2.0 * a * delta_value;
}

}  // namespace

int kappa(const PValue& p, double delta_value) {
  if (!(delta_value > 0.0) || delta_value > 1.0) {
    throw std::invalid_argument("kappa requires delta in (0,1]");
  }
  const double value = 2.0 * std::log(2.0) / exit_rate(p, delta_value);
  return static_cast<int>(std::floor(value)) + 1;  // strictly greater
}

Th1Certificate th1_certificate(const Graph& g, const LabelSet& labels,
                               std::span<const double> u, const PValue& p) {
  if (!labels.has_truth()) throw std::invalid_argument("certificate requires truth");
  if (static_cast<int>(u.size()) != g.size()) {
    throw std::invalid_argument("u must be defined on all vertices");
  }
  Th1Certificate cert;
  if (!check_a1(g, labels)) return cert;  // inapplicable
  cert.applicable = true;
  cert.delta_value = delta(g, labels);

  const auto truth = labels.truth();
  cert.grad_norm = grad_sup_norm(g, truth);
  cert.sup_norm = 0.0;
  for (double v : truth) cert.sup_norm = std::max(cert.sup_norm, std::abs(v));
  if (cert.grad_norm == 0.0) {
    // Constant truth per component: the bound degenerates, deviation must be 0.
    cert.bound = 0.0;
    cert.max_violation = 0.0;
    for (int x = 0; x < g.size(); ++x) {
      cert.max_violation = std::max(cert.max_violation, std::abs(u[x] - truth[x]));
    }
    cert.holds = cert.max_violation <= 1e-9;
    return cert;
  }

  const double log_term = std::log(cert.sup_norm / cert.grad_norm);
  cert.negative_log_term = log_term < 0.0;
  cert.bound =
      (2.0 * log_term / exit_rate(p, cert.delta_value) + 2.0) * cert.grad_norm;
  for (int x = 0; x < g.size(); ++x) {
    cert.max_violation = std::max(cert.max_violation, std::abs(u[x] - truth[x]));
  }
  cert.holds = cert.max_violation <= cert.bound;
  return cert;
}

Th3Certificate th3_certificate(const Graph& g, const LabelSet& labels,
                               std::span<const double> u, const PValue& p) {
  if (!labels.has_truth()) throw std::invalid_argument("certificate requires truth");
  Th3Certificate cert;
  if (!check_a1(g, labels)) return cert;
  cert.applicable = true;
  const double delta_value = delta(g, labels);

  const auto truth = labels.truth();
  const double grad_norm = grad_sup_norm(g, truth);
  double sup_norm = 0.0;
  for (double v : truth) sup_norm = std::max(sup_norm, std::abs(v));
  cert.max_edge_diff = grad_sup_norm(g, u);
  if (grad_norm == 0.0) {
    cert.bound = 0.0;
    cert.holds = cert.max_edge_diff <= 1e-9;
    return cert;
  }
  const double log_term = std::log(sup_norm / grad_norm);
  cert.negative_log_term = log_term < 0.0;
  cert.bound = (4.0 * log_term / exit_rate(p, delta_value) + 5.0) * grad_norm;
  cert.holds = cert.max_edge_diff <= cert.bound;
  return cert;
}

Th2Certificate th2_certificate(const Graph& g, const LabelSet& labels,
                               std::span<const double> u, const PValue& p) {
  const auto truth = labels.binary_truth();
  Th2Certificate cert;
  if (!check_a1(g, labels)) return cert;
  cert.applicable = true;
  cert.kappa_value = kappa(p, delta(g, labels));
  cert.band = boundary_band(g, truth, cert.kappa_value);

  std::vector<char> in_band(g.size(), 0);
  for (int x : cert.band) in_band[x] = 1;
  const auto predicted = classify(u);
  for (int x = 0; x < g.size(); ++x) {
    if (!in_band[x] && predicted[x] != truth[x]) cert.violations.push_back(x);
  }
  cert.holds = cert.violations.empty();
  return cert;
}

double delta_beta_ratio(const Graph& g, const LabelSet& labels, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  return delta(g, labels) / beta;
}

SbmRates sbm_rates(const Graph& g, std::span<const int> truth, const LabelSet& labels) {
  if (static_cast<int>(truth.size()) != g.size() || labels.size() != g.size()) {
    throw std::invalid_argument("truth/labels must cover every vertex");
  }
  SbmRates rates;
  rates.gamma.resize(g.size());
  rates.beta_frac.resize(g.size());
  rates.gamma_max = 0.0;
  rates.beta_min = 1.0;
  bool any_beta = false;
  for (int x = 0; x < g.size(); ++x) {
    auto nb = g.neighbors(x);
    auto wt = g.neighbor_weights(x);
    double total = 0.0, inter = 0.0, same = 0.0, same_labeled = 0.0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      total += wt[i];
      if (truth[nb[i]] != truth[x]) {
        inter += wt[i];
      } else {
        same += wt[i];
        if (labels.is_labeled(nb[i])) same_labeled += wt[i];
      }
    }
    if (total <= 0.0) throw StructuralError("vertex " + std::to_string(x) + " has zero degree");
    rates.gamma[x] = inter / total;
    rates.gamma_max = std::max(rates.gamma_max, rates.gamma[x]);
    if (same > 0.0) {
      rates.beta_frac[x] = same_labeled / same;
      rates.beta_min = std::min(rates.beta_min, rates.beta_frac[x]);
      any_beta = true;
    } else {
      rates.beta_frac[x] = 0.0;
      rates.flagged.push_back(x);
    }
  }
  if (!any_beta) rates.beta_min = 0.0;
  return rates;
}

SbmCertificate sbm_threshold_check(const SbmSpec& spec, double beta, double sigma1,
                                   double sigma2) {
  spec.validate();
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in [0,1]");
  if (sigma1 < 0.0) throw std::invalid_argument("sigma1 must be >= 0");
  if (sigma2 < 0.0 || sigma2 >= 1.0) throw std::invalid_argument("sigma2 must lie in [0,1)");

  SbmCertificate cert;
  cert.sigma1 = sigma1;
  cert.sigma2 = sigma2;
  cert.sigma = (1.0 + sigma1) * (1.0 + sigma2) / ((1.0 - sigma2) * (1.0 - sigma2)) - 1.0;
  const double n0 = spec.n0, n1 = spec.n1;
  cert.threshold = (1.0 + cert.sigma) * std::max(n0 / (n1 - 1.0), n1 / (n0 - 1.0));
  cert.condition_holds = (spec.r / spec.q) * beta > cert.threshold;

  double sum_failures = 0.0, literal = 0.0;
  for (int j = 0; j <= 1; ++j) {
    const double nj = j == 0 ? n0 : n1;
    const double nother = j == 0 ? n1 : n0;
    const double t1 = std::exp(-spec.q * nother * sigma1 * sigma1 / (2.0 * (1.0 + sigma1 / 3.0)));
    const double t2 = 3.0 * std::exp(-0.125 * beta * spec.r * nj * sigma2 * sigma2);
    sum_failures += nj * (t1 + t2);
    literal += nj * (t1 - t2);
  }
  cert.probability_bound = 1.0 - sum_failures;
  cert.probability_bound_literal = 1.0 - literal;
  return cert;
}

bool suff_condition_check(const SbmRates& rates) {
  if (rates.gamma_max >= 1.0) return false;  // unsatisfiable
  return rates.beta_min > rates.gamma_max / (1.0 - rates.gamma_max);
}

}  // namespace plap
