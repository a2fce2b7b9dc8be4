#include "gauss_legendre.hpp"

#include <gsl/gsl_integration.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace fracmax::detail {
namespace {

GaussRule make_rule(const gsl_integration_fixed_type* type, int n, double a, double b, double alpha, double beta) {
  gsl_integration_fixed_workspace* w = gsl_integration_fixed_alloc(type, static_cast<std::size_t>(n), a, b, alpha, beta);
  if (!w) throw std::runtime_error("gauss rule: GSL allocation failed");
  GaussRule rule;
  const double* x = gsl_integration_fixed_nodes(w);
  const double* wt = gsl_integration_fixed_weights(w);
  rule.nodes.assign(x, x + n);
  rule.weights.assign(wt, wt + n);
  gsl_integration_fixed_free(w);
  return rule;
}

std::mutex cache_mutex;

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(make_rule(gsl_integration_fixed_legendre, n, -1.0, 1.0, 0.0, 0.0));
  return *slot;
}

const GaussRule& gauss_jacobi_unit(int n, double beta) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi_unit: n must be positive");
  if (!(beta > -1.0)) throw std::invalid_argument("gauss_jacobi_unit: beta must exceed -1");
  static std::map<std::pair<int, double>, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[{n, beta}];
  // GSL's Jacobi weight on [a, b] is (b - x)^alpha (x - a)^beta.
  if (!slot) slot = std::make_unique<GaussRule>(make_rule(gsl_integration_fixed_jacobi, n, 0.0, 1.0, 0.0, beta));
  return *slot;
}

}  // namespace fracmax::detail
