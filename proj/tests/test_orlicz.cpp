#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "dnb/conformal.hpp"
#include "dnb/error.hpp"
#include "dnb/orlicz.hpp"
#include "dnb/quadrature.hpp"
#include "oracles.hpp"

using namespace dnb;

namespace {

const DiskQuadrature& quad() {
  static const DiskQuadrature q = build_disk_quadrature(16, 32);
  return q;
}

SampledFunction on_disk(const std::function<double(Complex)>& f) {
  std::vector<double> v;
  for (Complex z : quad().nodes()) v.push_back(f(z));
  return SampledFunction(disk_measure(quad()), std::move(v));
}

// Piecewise-constant field on 4 rings × 8 sectors with log-normal levels.
SampledFunction random_field(std::mt19937_64& rng) {
  std::lognormal_distribution<double> level(0.0, 1.5);
  std::array<double, 32> cells{};
  for (double& c : cells) c = level(rng);
  return on_disk([&](Complex z) {
    const int ring = std::min(3, static_cast<int>(4.0 * std::abs(z)));
    const double t = std::arg(z) + oracle::pi;
    const int sector = std::min(7, static_cast<int>(8.0 * t / (2.0 * oracle::pi)));
    return cells[ring * 8 + sector];
  });
}

double lp_norm(const SampledFunction& f, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f.weights()[i] * std::pow(std::abs(f.values()[i]), p);
  return std::pow(s, 1.0 / p);
}

// Orlicz (dual) norm by the Amemiya formula inf_k (1 + ∫M(k|f|))/k, golden
// section in log k. Independent of the Luxemburg solver.
double amemiya_norm(const SampledFunction& f, const YoungFunction& m) {
  const auto g = [&](double log_k) {
    const double k = std::exp(log_k);
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f.weights()[i] * m.eval(k * std::abs(f.values()[i]));
    return (1.0 + s) / k;
  };
  double lo = -20.0;
  double hi = 20.0;
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < 300; ++i) {
    const double a = hi - r * (hi - lo);
    const double b = lo + r * (hi - lo);
    if (g(a) < g(b)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  return g(0.5 * (lo + hi));
}

}  // namespace

TEST_CASE("quadrature normalisation and exactness") {
  const auto q8 = build_disk_quadrature(8, 16);
  double total = 0.0;
  for (double w : q8.weights()) total += w;
  CHECK(total == doctest::Approx(oracle::pi).epsilon(1e-14));
  CHECK(q8.integrate([](Complex z) { return std::norm(z); }) ==
        doctest::Approx(oracle::pi / 2.0).epsilon(1e-12));
  CHECK(std::abs(q8.integrate([](Complex z) { return z.real(); })) <= 1e-14);
  // ∫ x⁴ y² = π/96... check r^{2k} for k up to the radial degree
  for (int k = 1; k < 8; ++k) {
    CHECK(q8.integrate([&](Complex z) { return std::pow(std::norm(z), k); }) ==
          doctest::Approx(oracle::pi / (k + 1)).epsilon(1e-12));
  }
  CHECK(q8.integrate([](Complex z) { return std::pow(z.real(), 4); }) ==
        doctest::Approx(oracle::disk_integral([](Complex z) { return std::pow(z.real(), 4); }, 2000, 64))
            .epsilon(1e-6));
  CHECK(q8.max_radius() < 1.0);
  CHECK_THROWS_AS(build_disk_quadrature(3, 16), ConfigError);
  CHECK_THROWS_AS(build_disk_quadrature(8, 4), ConfigError);

  const auto graded = build_graded_disk_quadrature(12, 32, 20, 1e-10);
  double gt = 0.0;
  for (double w : graded.weights()) gt += w;
  CHECK(gt == doctest::Approx(oracle::pi).epsilon(1e-13));
  // Peaked integrand: ∫ e^{−n r²} = π(1 − e^{−n})/n
  const double n = 1e5;
  CHECK(graded.integrate([&](Complex z) { return std::exp(-n * std::norm(z)); }) ==
        doctest::Approx(oracle::pi * (1.0 - std::exp(-n)) / n).epsilon(1e-10));
}

TEST_CASE("Luxemburg norm examples") {
  const auto phi = YoungFunction::log_linear();
  CHECK(luxemburg_norm(on_disk([](Complex) { return 0.0; }), phi) == 0.0);
  const double one = luxemburg_norm(on_disk([](Complex) { return 1.0; }), phi);
  CHECK(one == doctest::Approx(1.0 / oracle::log_pow_inverse(1.0 / oracle::pi)).epsilon(1e-8));
  CHECK(one == doctest::Approx(3.459).epsilon(1e-3));

  // Constants: c / Y^{-1}(1/|Ω|) on a mapped measure as well.
  const auto map = ConformalMap::perturbed_power({0.5, 0.0}, 2);
  const auto mu = pullback_measure(map, quad());
  for (const auto& y : {YoungFunction::log_linear(), YoungFunction::exp_square(),
                        YoungFunction::power(3.0), YoungFunction::log_pow(2.0)}) {
    for (double c : {0.01, 1.0, 7.5}) {
      const SampledFunction f(mu, std::vector<double>(quad().size(), c));
      CHECK(luxemburg_norm(f, y) == doctest::Approx(c / y.inverse(1.0 / mu->total)).epsilon(1e-8));
    }
  }
}

TEST_CASE("L^p consistency and the Orlicz-norm factor") {
  std::mt19937_64 rng(7);
  for (double p : {1.5, 2.0, 3.0}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = random_field(rng);
      CAPTURE(p);
      // Y(u) = u^p: Luxemburg norm is the L^p norm.
      CHECK(luxemburg_norm(f, YoungFunction::power_scaled(p, 1.0)) ==
            doctest::Approx(lp_norm(f, p)).epsilon(1e-10));
      // M(u) = u^p/p: Orlicz norm is p′^{1/p′}·‖f‖_p.
      const double pp = p / (p - 1.0);
      const auto m = YoungFunction::power(p);
      const double orlicz = amemiya_norm(f, m);
      CHECK(orlicz == doctest::Approx(std::pow(pp, 1.0 / pp) * lp_norm(f, p)).epsilon(1e-6));
      const auto [lo, hi] = orlicz_norm_bracket(f, m);
      CHECK(lo <= orlicz * (1.0 + 1e-9));
      CHECK(orlicz <= hi * (1.0 + 1e-9));
    }
  }
  const auto [z0, z1] = orlicz_norm_bracket(on_disk([](Complex) { return 0.0; }), YoungFunction::log_linear());
  CHECK(z0 == 0.0);
  CHECK(z1 == 0.0);
  const auto [o0, o1] = orlicz_norm_bracket(on_disk([](Complex) { return 1.0; }), YoungFunction::log_linear());
  CHECK(o0 == doctest::Approx(3.459).epsilon(1e-3));
  CHECK(o1 == doctest::Approx(6.918).epsilon(1e-3));
}

TEST_CASE("norm properties on random fields") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& y : {YoungFunction::log_linear(), YoungFunction::exp_square(),
                        YoungFunction::power(2.5)}) {
    CAPTURE(y.name());
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_field(rng).scaled(0.3);
      const auto g = random_field(rng).scaled(0.3);
      const double nf = luxemburg_norm(f, y);
      const double c = std::exp(4.0 * unit(rng) - 2.0);
      CHECK(luxemburg_norm(f.scaled(c), y) == doctest::Approx(c * nf).epsilon(1e-9));
      CHECK(luxemburg_norm(f.scaled(-c), y) == doctest::Approx(c * nf).epsilon(1e-9));
      std::vector<double> sum(f.size());
      std::vector<double> bigger(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) {
        sum[i] = f.values()[i] + g.values()[i];
        bigger[i] = std::abs(f.values()[i]) + 0.1 * unit(rng);
      }
      const double ns = luxemburg_norm(SampledFunction(f.measure(), sum), y);
      CHECK(ns <= (nf + luxemburg_norm(g, y)) * (1.0 + 1e-8));
      CHECK(nf <= luxemburg_norm(SampledFunction(f.measure(), bigger), y) * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("Hölder and Young inequalities on 100 seeded fields") {
  std::mt19937_64 rng(2024);
  int holder_violations = 0;
  int young_violations = 0;
  const std::array kinds{YoungFunction::log_linear(), YoungFunction::exp_square(),
                         YoungFunction::power(2.0), YoungFunction::log_linear_tilde()};
  for (int trial = 0; trial < 100; ++trial) {
    const auto& y = kinds[trial % kinds.size()];
    const auto ys = complementary(y);
    const auto f = random_field(rng);
    const auto g = random_field(rng).scaled(0.2);
    const auto h = holder_pairing(f, g, y);
    if (h.lhs > h.rhs * (1.0 + 1e-12)) ++holder_violations;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double u = f.values()[i];
      const double v = g.values()[i];
      if (u * v > y.eval(u) + ys.eval(v) + 1e-9 * (1.0 + u * v)) ++young_violations;
    }
  }
  CHECK(holder_violations == 0);
  CHECK(young_violations == 0);

  const auto zero = on_disk([](Complex) { return 0.0; });
  const auto h0 = holder_pairing(zero, zero, YoungFunction::power(2.0));
  CHECK(h0.lhs == 0.0);
  CHECK(h0.rhs == 0.0);
  const auto one = on_disk([](Complex) { return 1.0; });
  const auto h1 = holder_pairing(one, one, YoungFunction::power(2.0));
  CHECK(h1.lhs == doctest::Approx(oracle::pi).epsilon(1e-13));
  // ‖1‖ for u²/2 on measure π is (π/2)^{1/2}; the pair is self-dual.
  CHECK(h1.rhs == doctest::Approx(2.0 * oracle::pi / 2.0).epsilon(1e-9));
  CHECK(h1.lhs <= h1.rhs);

  const auto other = SampledFunction(pullback_measure(ConformalMap::moebius({0.2, 0.0}), quad()),
                                     std::vector<double>(quad().size(), 1.0));
  CHECK_THROWS_AS(holder_pairing(one, other, YoungFunction::power(2.0)), ParameterError);
}

TEST_CASE("weighted median") {
  CHECK(weighted_median(on_disk([](Complex) { return 2.5; })) == doctest::Approx(2.5));
  CHECK(weighted_median(on_disk([](Complex z) { return z.imag() > 0.0 ? 1.0 : 0.0; })) == 0.0);
  // Area of {r > t} is π(1 − t²); with n_r radial nodes the answer is the node
  // radius just above 1/√2.
  const auto fine = build_disk_quadrature(200, 16);
  std::vector<double> r;
  for (Complex z : fine.nodes()) r.push_back(std::abs(z));
  const double med = weighted_median(SampledFunction(disk_measure(fine), r));
  CHECK(med == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(5e-3));
  // Negative-valued fields: the median is taken over t ≥ 0.
  CHECK(weighted_median(on_disk([](Complex) { return -1.0; })) == 0.0);
}
