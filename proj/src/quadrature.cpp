#include "dnb/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "dnb/error.hpp"

namespace dnb {

namespace {

// Legendre P_n and its derivative at x by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

void append_ring(std::vector<Complex>& nodes, std::vector<double>& weights, double t,
                 double radial_weight, int n_theta) {
  const double r = std::sqrt(t);
  const double dtheta = 2.0 * std::numbers::pi / n_theta;
  // ∫_𝔻 f dA = ½ ∫₀^{2π} ∫₀¹ f dt dθ
  const double w = 0.5 * radial_weight * dtheta;
  for (int j = 0; j < n_theta; ++j) {
    const double theta = (j + 0.5) * dtheta;
    nodes.emplace_back(std::polar(r, theta));
    weights.push_back(w);
  }
}

}  // namespace

GaussLegendreRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw ConfigError("gauss_legendre: order must be positive");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const auto [p, d] = legendre(n, x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

DiskQuadrature build_disk_quadrature(int n_r, int n_theta) {
  if (n_r < 4 || n_theta < 8) {
    throw ConfigError("disk quadrature needs n_r >= 4 and n_theta >= 8 (got " +
                      std::to_string(n_r) + ", " + std::to_string(n_theta) + ")");
  }
  DiskQuadrature q;
  q.n_r_ = n_r;
  q.n_theta_ = n_theta;
  q.id_ = "disk-gl(" + std::to_string(n_r) + "x" + std::to_string(n_theta) + ")";
  const GaussLegendreRule radial = gauss_legendre(n_r, 0.0, 1.0);
  q.nodes_.reserve(static_cast<std::size_t>(n_r) * n_theta);
  q.weights_.reserve(static_cast<std::size_t>(n_r) * n_theta);
  for (int i = 0; i < n_r; ++i) {
    append_ring(q.nodes_, q.weights_, radial.nodes[i], radial.weights[i], n_theta);
  }
  q.max_radius_ = std::sqrt(radial.nodes.back());
  return q;
}

DiskQuadrature build_graded_disk_quadrature(int n_r_per_panel, int n_theta, int panels,
                                            double t_min) {
  if (n_r_per_panel < 4 || n_theta < 8 || panels < 2 || !(t_min > 0.0 && t_min < 1.0)) {
    throw ConfigError("graded disk quadrature: invalid orders or t_min");
  }
  DiskQuadrature q;
  q.n_r_ = n_r_per_panel * panels;
  q.n_theta_ = n_theta;
  q.id_ = "disk-graded(" + std::to_string(n_r_per_panel) + "x" + std::to_string(panels) + "x" +
          std::to_string(n_theta) + ")";
  const double growth = std::pow(1.0 / t_min, 1.0 / (panels - 1));
  double lo = 0.0;
  double hi = t_min;
  double t_max = 0.0;
  for (int k = 0; k < panels; ++k) {
    if (k == panels - 1) hi = 1.0;
    const GaussLegendreRule rule = gauss_legendre(n_r_per_panel, lo, hi);
    for (int i = 0; i < n_r_per_panel; ++i) {
      append_ring(q.nodes_, q.weights_, rule.nodes[i], rule.weights[i], n_theta);
    }
    t_max = rule.nodes.back();
    lo = hi;
    hi *= growth;
  }
  q.max_radius_ = std::sqrt(t_max);
  return q;
}

}  // namespace dnb
