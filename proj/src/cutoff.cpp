#include "fracmax/cutoff.hpp"

#include <cmath>

namespace fracmax {
namespace {

double psi(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double psi_prime(double x) { return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0; }

}  // namespace

double smooth_cutoff(double t) {
  if (t <= 0.5) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = psi(1.0 - t), b = psi(t - 0.5);
  return a / (a + b);
}

double smooth_cutoff_derivative(double t) {
  if (t <= 0.5 || t >= 1.0) return 0.0;
  const double a = psi(1.0 - t), b = psi(t - 0.5);
  const double da = -psi_prime(1.0 - t), db = psi_prime(t - 0.5);
  return (da * b - a * db) / ((a + b) * (a + b));
}

}  // namespace fracmax
