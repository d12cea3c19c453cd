#include <cmath>

#include "dnb/fem.hpp"

namespace dnb {

namespace {

// Σ_m (−1)^m (x/2)^{2m+n} / (m! (m+n)!)
double bessel_series(int n, double x) {
  const double h = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= h / k;
  double sum = term;
  for (int m = 1; m < 60; ++m) {
    term *= -h * h / (static_cast<double>(m) * (m + n));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double bessel_j0(double x) { return bessel_series(0, x); }
double bessel_j1(double x) { return bessel_series(1, x); }

double bessel_j1_prime(double x) {
  if (x == 0.0) return 0.5;
  return bessel_j0(x) - bessel_j1(x) / x;
}

double bessel_j1_prime_first_zero() {
  double lo = 1.5;  // J₁′ > 0
  double hi = 2.0;  // J₁′ < 0
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (bessel_j1_prime(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double mu_disk_reference() {
  static const double mu = [] {
    const double j = bessel_j1_prime_first_zero();
    return j * j;
  }();
  return mu;
}

}  // namespace dnb
