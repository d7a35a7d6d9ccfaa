#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "omega/catalog.hpp"
#include "omega/forms.hpp"
#include "oracles.hpp"

using omega::EinsteinFactor;
using omega::HeisenbergMetric;
using omega::OmegaValue;

namespace {

// Brute-force enumeration of the product values over all eigenvalue pairs
// with lambda + mu <= sum_cap, grouped by value. Independent of product_omega.
std::vector<std::pair<double, long long>> brute_force_product(const EinsteinFactor& f1,
                                                              const EinsteinFactor& f2, double sum_cap) {
  std::vector<std::pair<double, long long>> raw;
  for (const auto& [l, ml] : f1.spectrum) {
    for (const auto& [m, mm] : f2.spectrum) {
      if (l == 0.0 && m == 0.0) continue;
      if (l + m > sum_cap) continue;
      const double v = (f1.einstein_const * l + f2.einstein_const * m) / ((l + m) * (l + m));
      if (v > 0.0) raw.emplace_back(v, ml * mm);
    }
  }
  std::sort(raw.begin(), raw.end(), [](auto& a, auto& b) { return a.first > b.first; });
  std::vector<std::pair<double, long long>> grouped;
  for (const auto& [v, m] : raw) {
    if (!grouped.empty() && std::abs(grouped.back().first - v) <= 1e-12 * std::max(1.0, grouped.back().first))
      grouped.back().second += m;
    else
      grouped.emplace_back(v, m);
  }
  return grouped;
}

}  // namespace

TEST_CASE("sphere_spectrum: closed forms and the harmonic-polynomial oracle") {
  const EinsteinFactor s2 = omega::sphere_spectrum(2, 1.0, 2);
  REQUIRE(s2.spectrum.size() == 3);
  CHECK(s2.spectrum[0] == std::pair<double, long long>(0.0, 1));
  CHECK(s2.spectrum[1] == std::pair<double, long long>(2.0, 3));
  CHECK(s2.spectrum[2] == std::pair<double, long long>(6.0, 5));
  CHECK(s2.einstein_const == 1.0);

  const EinsteinFactor s1 = omega::sphere_spectrum(1, 1.0, 1);
  CHECK(s1.spectrum[1] == std::pair<double, long long>(1.0, 2));
  CHECK(s1.einstein_const == 0.0);

  const EinsteinFactor s3 = omega::sphere_spectrum(3, 2.0, 1);
  CHECK(s3.spectrum[1].first == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(s3.einstein_const == doctest::Approx(0.5).epsilon(1e-15));

  // Multiplicity formula against the brute-force harmonic polynomial dimension.
  for (int n = 1; n <= 4; ++n) {
    const EinsteinFactor f = omega::sphere_spectrum(n, 1.0, 4);
    for (int k = 0; k <= 4; ++k)
      CHECK(f.spectrum[static_cast<std::size_t>(k)].second == oracles::harmonic_dimension(n + 1, k));
  }
}

TEST_CASE("torus_spectrum: lattice enumeration") {
  const std::vector<double> sq = {2 * M_PI, 2 * M_PI};
  const EinsteinFactor t = omega::torus_spectrum(sq, 2.0);
  REQUIRE(t.spectrum.size() == 3);
  CHECK(t.spectrum[0] == std::pair<double, long long>(0.0, 1));
  CHECK(t.spectrum[1] == std::pair<double, long long>(1.0, 4));
  CHECK(t.spectrum[2] == std::pair<double, long long>(2.0, 4));
  CHECK(t.einstein_const == 0.0);

  const EinsteinFactor circle = omega::torus_spectrum({2 * M_PI}, 4.0);
  REQUIRE(circle.spectrum.size() == 3);
  CHECK(circle.spectrum[1] == std::pair<double, long long>(1.0, 2));
  CHECK(circle.spectrum[2] == std::pair<double, long long>(4.0, 2));

  const EinsteinFactor trivial = omega::torus_spectrum({1.0, 3.0}, 0.0);
  REQUIRE(trivial.spectrum.size() == 1);
  CHECK(trivial.spectrum[0] == std::pair<double, long long>(0.0, 1));
}

TEST_CASE("product_omega: S2 x S2 top values") {
  const EinsteinFactor s2 = omega::sphere_spectrum(2, 1.0, 30);
  const auto values = omega::product_omega(s2, s2, 2);
  REQUIRE(values.size() == 2);
  CHECK(values[0].value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(values[0].multiplicity.value() == 6);
  CHECK(values[1].value == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(values[1].multiplicity.value() == 9);
}

TEST_CASE("product_omega: flat second factor and cancellation filter") {
  const EinsteinFactor s2 = omega::sphere_spectrum(2, 1.0, 30);
  const EinsteinFactor t2 = omega::torus_spectrum({2 * M_PI, 2 * M_PI}, 60.0);
  const auto values = omega::product_omega(s2, t2, 1);
  CHECK(values[0].value == doctest::Approx(0.5).epsilon(1e-15));

  // a1 = 1, a2 = -1, lambda = mu = 2 cancels to zero and is excluded.
  EinsteinFactor f1;
  f1.einstein_const = 1.0;
  f1.dim = 2;
  f1.spectrum = {{0.0, 1}, {2.0, 1}, {1000.0, 1}};
  EinsteinFactor f2 = f1;
  f2.einstein_const = -1.0;
  const auto vals = omega::product_omega(f1, f2, 1);
  // The top positive value comes from (2, 0): (1*2)/(2^2) = 1/2; the (2,2) pair is filtered.
  CHECK(vals[0].value == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("product_omega: brute-force equivalence and certification errors") {
  const EinsteinFactor s2 = omega::sphere_spectrum(2, 1.0, 40);
  const EinsteinFactor s3 = omega::sphere_spectrum(3, 1.0, 40);
  const auto got = omega::product_omega(s2, s3, 10);
  const auto expected = brute_force_product(s2, s3, 1e18);
  REQUIRE(expected.size() >= 10);
  for (int i = 0; i < 10; ++i) {
    CHECK(got[static_cast<std::size_t>(i)].value == expected[static_cast<std::size_t>(i)].first);
    CHECK(got[static_cast<std::size_t>(i)].multiplicity.value() == expected[static_cast<std::size_t>(i)].second);
  }

  // A spectrum truncated to a couple of levels cannot certify a deep prefix.
  const EinsteinFactor shallow = omega::sphere_spectrum(2, 1.0, 2);
  CHECK_THROWS_AS(omega::product_omega(shallow, shallow, 10), omega::insufficient_spectrum_error);
  EinsteinFactor flat = omega::torus_spectrum({2 * M_PI}, 9.0);
  CHECK_THROWS_AS(omega::product_omega(flat, flat, 1), omega::input_error);  // a_1 = 0
}

TEST_CASE("catalog_lambda_of_g: 1/lambda with multiplicities") {
  const EinsteinFactor s2 = omega::sphere_spectrum(2, 1.0, 6);
  const auto vals = omega::catalog_lambda_of_g(s2, 2);
  CHECK(vals[0].value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(vals[0].multiplicity.value() == 3);
  CHECK(vals[1].value == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(vals[1].multiplicity.value() == 5);

  const EinsteinFactor circle = omega::torus_spectrum({2 * M_PI}, 16.5);
  const auto cv = omega::catalog_lambda_of_g(circle, 2);
  CHECK(cv[0].value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cv[0].multiplicity.value() == 2);
  CHECK(cv[1].value == doctest::Approx(0.25).epsilon(1e-15));

  CHECK(omega::catalog_lambda_of_g(s2, 1)[0].value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(omega::catalog_lambda_of_g(s2, 100), omega::insufficient_spectrum_error);
}

TEST_CASE("cross-validation: analytic forms reproduce the closed-form values") {
  const EinsteinFactor s3 = omega::sphere_spectrum(3, 1.0, 8);
  const auto closed = omega::einstein_omega(s3, 4);
  long long needed = 0;
  for (const OmegaValue& group : closed) needed += group.multiplicity.value();
  const omega::FormPair forms = omega::einstein_forms(s3, static_cast<int>(needed));
  const omega::LambdaSpectrum s = omega::solve_lambda(forms);
  std::size_t flat = 0;
  for (const OmegaValue& group : closed) {
    for (long long rep = 0; rep < group.multiplicity.value(); ++rep) {
      REQUIRE(flat < s.positive.size());
      CHECK(s.positive[flat] == doctest::Approx(group.value).epsilon(1e-12));
      ++flat;
    }
  }

  // Product forms against product_omega.
  const EinsteinFactor s2 = omega::sphere_spectrum(2, 1.0, 12);
  const omega::FormPair pforms = omega::product_einstein_forms(s2, s2, 26.5);
  const omega::LambdaSpectrum ps = omega::solve_lambda(pforms);
  const auto pvals = omega::product_omega(s2, s2, 5);
  std::size_t idx = 0;
  for (const OmegaValue& group : pvals) {
    for (long long rep = 0; rep < group.multiplicity.value(); ++rep) {
      REQUIRE(idx < ps.positive.size());
      CHECK(ps.positive[idx] == doctest::Approx(group.value).epsilon(1e-12));
      ++idx;
    }
  }
}

TEST_CASE("product law: top value of the tensor forms equals the factor max") {
  const EinsteinFactor s2 = omega::sphere_spectrum(2, 1.0, 12);
  const EinsteinFactor s4 = omega::sphere_spectrum(4, 1.0, 12);
  const omega::FormPair forms = omega::product_einstein_forms(s2, s4, 30.0);
  const omega::LambdaSpectrum s = omega::solve_lambda(forms);
  const double lhs = s.positive.at(0);
  const double rhs = std::max(omega::einstein_omega(s2, 1)[0].value, omega::einstein_omega(s4, 1)[0].value);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("homothety: radius never changes the values") {
  for (int n = 2; n <= 5; ++n) {
    const auto base = omega::einstein_omega(omega::sphere_spectrum(n, 1.0, 20), 3);
    for (double radius : {0.5, 3.0, 11.0}) {
      const auto scaled = omega::einstein_omega(omega::sphere_spectrum(n, radius, 20), 3);
      for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(scaled[i].value == doctest::Approx(base[i].value).epsilon(1e-12));
        CHECK(scaled[i].multiplicity.value() == base[i].multiplicity.value());
      }
    }
  }
}

TEST_CASE("Bochner ceiling: catalog values stay below (dim-1)/dim, sharp only on spheres") {
  for (int n = 2; n <= 5; ++n) {
    const auto vals = omega::einstein_omega(omega::sphere_spectrum(n, 1.0, 20), 1);
    CHECK(vals[0].value == doctest::Approx((n - 1.0) / n).epsilon(1e-15));
  }
  const EinsteinFactor s2 = omega::sphere_spectrum(2, 1.0, 30);
  const auto prod = omega::product_omega(s2, s2, 1);
  const double dim_bound = 3.0 / 4.0;  // product dimension 4
  CHECK(prod[0].value < dim_bound);
  CHECK(omega::unitary_omega1(2, 1.0) <= 3.0 / 4.0);
  HeisenbergMetric h{1, {1.0}, 1.0};
  CHECK(omega::heisenberg_omega1(h) <= 2.0 / 3.0);  // dim 3
}

TEST_CASE("Lichnerowicz chain on catalog entries") {
  // S^3(1): lambda_1 = 3, r = 2, Omega_1 = 2/3; equality throughout.
  const EinsteinFactor s3 = omega::sphere_spectrum(3, 1.0, 10);
  const double lambda1 = s3.spectrum[1].first;
  const double r = s3.einstein_const;
  const double omega1 = omega::einstein_omega(s3, 1)[0].value;
  CHECK(lambda1 == doctest::Approx(r / omega1).epsilon(1e-14));
  CHECK(r / omega1 == doctest::Approx(3.0 / 2.0 * r).epsilon(1e-14));

  // Products of positively curved factors: chain holds with r = min(a1, a2).
  const EinsteinFactor s2 = omega::sphere_spectrum(2, 1.0, 30);
  const double l1 = 2.0;  // smallest positive of the product
  const double rr = 1.0;
  const double om = omega::product_omega(s2, s2, 1)[0].value;
  const int dim = 4;
  CHECK(l1 >= rr / om - 1e-12);
  CHECK(rr / om >= static_cast<double>(dim) / (dim - 1) * rr - 1e-12);
}

TEST_CASE("heisenberg: formula values and the integer search") {
  HeisenbergMetric h{1, {1.0}, 1.0};

  // Large Hermite indices drive the numerator negative.
  CHECK(omega::heisenberg_omega_ck(h, 1, {400}) < 0.0);

  // Positive values never beat the ground level.
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> unit(0.25, 2.5);
  std::uniform_int_distribution<long long> cdist(1, 9);
  std::uniform_int_distribution<long long> kdist(0, 5);
  for (int trial = 0; trial < 200; ++trial) {
    HeisenbergMetric m{2, {unit(rng), unit(rng)}, unit(rng)};
    const long long c = cdist(rng);
    const std::vector<long long> k = {kdist(rng), kdist(rng)};
    const double vk = omega::heisenberg_omega_ck(m, c, k);
    if (vk > 0.0) CHECK(omega::heisenberg_omega_ck(m, c, {0, 0}) >= vk - 1e-15);
  }

  // Metric tuned so the critical point is the integer c = 1 attains the
  // closed-form supremum for n = 1.
  const double g_star = 8.0 * M_PI / (3.0 + std::sqrt(17.0));
  HeisenbergMetric tuned{1, {1.0}, g_star};
  CHECK(omega::heisenberg_critical_c(tuned) == doctest::Approx(1.0).epsilon(1e-12));
  const double attained = omega::heisenberg_omega_ck(tuned, 1, {0});
  CHECK(attained == doctest::Approx(omega::heisenberg_sup(1)).epsilon(1e-13));
  CHECK(omega::heisenberg_omega1(tuned) == doctest::Approx(omega::heisenberg_sup(1)).epsilon(1e-13));

  // Result never exceeds the sup over metrics.
  for (int trial = 0; trial < 100; ++trial) {
    HeisenbergMetric m{1, {unit(rng)}, unit(rng)};
    CHECK(omega::heisenberg_omega1(m) <= omega::heisenberg_sup(1) + 1e-12);
  }

  // The positive set is never empty: F is positive above its finite root and
  // the search bracket always contains such integers, so the value is a
  // strictly positive number even for extreme frame constants.
  HeisenbergMetric tiny_d{1, {0.01}, 1.0};
  const double tiny_value = omega::heisenberg_omega1(tiny_d);
  CHECK(tiny_value > 0.0);
  CHECK(tiny_value <= omega::heisenberg_sup(1));
}

TEST_CASE("heisenberg_sup: closed forms") {
  const double s17 = std::sqrt(17.0);
  const double n1 = 4.0 * (s17 - 3.0) / ((s17 - 1.0) * (s17 + 3.0) * (s17 + 3.0));
  CHECK(omega::heisenberg_sup(1) == doctest::Approx(n1).epsilon(1e-15));
  CHECK(omega::heisenberg_sup(1) == doctest::Approx((71.0 - 17.0 * s17) / 32.0).epsilon(1e-14));
  CHECK(omega::heisenberg_sup(2) == 1.0 / 32.0);
  CHECK(omega::heisenberg_sup(7) == 1.0 / 32.0);
  CHECK_THROWS_AS(omega::heisenberg_sup(0), omega::input_error);

  // n = 2 attains 1/32 exactly at d = (1,1), g = pi, c = 1.
  HeisenbergMetric m2{2, {1.0, 1.0}, M_PI};
  CHECK(omega::heisenberg_omega_ck(m2, 1, {0, 0}) == doctest::Approx(1.0 / 32.0).epsilon(1e-15));
}

TEST_CASE("unitary_omega1: formula branches") {
  CHECK(omega::unitary_omega1(2, std::sqrt(2.0)) == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
  CHECK(omega::unitary_omega1(2, 1e-3) == doctest::Approx(0.25).epsilon(1e-15));
  for (double r : {0.1, 0.7, 1.3, 2.9, 10.0}) {
    const int n = 3;
    CHECK(omega::unitary_omega1(n, r) <= (static_cast<double>(n * n) - 1.0) / (n * n));
  }
  CHECK_THROWS_AS(omega::unitary_omega1(1, 1.0), omega::input_error);
}
