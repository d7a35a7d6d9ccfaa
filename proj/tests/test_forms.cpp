#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "omega/forms.hpp"
#include "oracles.hpp"

using omega::FormPair;
using omega::LambdaSpectrum;
using omega::SpectralBasis;

namespace {

FormPair diag_forms() {
  // Basis lambda = (2, 6, 12) with S = g: A = diag(lambda), B = diag(lambda^2).
  FormPair f;
  f.A = Eigen::Vector3d(2, 6, 12).asDiagonal();
  f.B = Eigen::Vector3d(4, 36, 144).asDiagonal();
  f.basis.manifold_dim = 2;
  f.basis.eigenvalues = Eigen::Vector3d(2, 6, 12);
  f.basis.provenance = "test";
  return f;
}

}  // namespace

TEST_CASE("solve_lambda: A equal to B gives the constant spectrum 1") {
  std::mt19937_64 rng(7);
  FormPair f;
  f.B = oracles::random_spd(6, rng);
  f.A = f.B;
  const LambdaSpectrum s = omega::solve_lambda(f);
  REQUIRE(s.positive.size() == 6);
  CHECK(s.zero_dim == 0);
  for (double v : s.positive) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solve_lambda: diagonal eigenbasis forms recover 1/lambda_k") {
  const LambdaSpectrum s = omega::solve_lambda(diag_forms());
  REQUIRE(s.positive.size() == 3);
  CHECK(s.positive[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s.positive[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(s.positive[2] == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
  // Vectors are B-normalized.
  for (int j = 0; j < 3; ++j) {
    const Eigen::VectorXd v = s.positive_vectors.col(j);
    CHECK(v.dot(diag_forms().B * v) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("solve_lambda: matches the Jacobi-rotation oracle on random pencils") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    FormPair f;
    f.A = oracles::random_symmetric(5, rng);
    f.B = oracles::random_spd(5, rng);
    const LambdaSpectrum s = omega::solve_lambda(f);

    const Eigen::MatrixXd b_is = oracles::jacobi_inv_sqrt(f.B);
    const auto expected = oracles::jacobi_eigenvalues(b_is * f.A * b_is);

    std::vector<double> got;
    for (auto it = s.negative.begin(); it != s.negative.end(); ++it) got.push_back(*it);
    for (int i = 0; i < s.zero_dim; ++i) got.push_back(0.0);
    for (auto it = s.positive.rbegin(); it != s.positive.rend(); ++it) got.push_back(*it);
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i)
      CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-10));
  }
}

TEST_CASE("solve_lambda: input validation") {
  FormPair f = diag_forms();
  f.A(0, 1) = 0.5;  // break symmetry
  CHECK_THROWS_AS(omega::solve_lambda(f), omega::input_error);

  FormPair g = diag_forms();
  g.B(2, 2) = -1.0;  // break positive definiteness
  CHECK_THROWS_AS(omega::solve_lambda(g), omega::input_error);
}

TEST_CASE("solve_lambda: zero class satisfies A v = 0 in the truncation") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd b = oracles::random_spd(7, rng);
    Eigen::VectorXd spec(7);
    spec << 2.0, 1.0, 0.5, 0.0, 0.0, -0.5, -2.0;
    FormPair f;
    f.B = b;
    f.A = oracles::pencil_with_spectrum(b, spec, rng);
    const LambdaSpectrum s = omega::solve_lambda(f);
    CHECK(s.zero_dim == 2);
    CHECK(s.positive.size() == 3);
    CHECK(s.negative.size() == 2);
    CHECK(s.negative[0] < s.negative[1]);  // most negative first
    const double a_norm = f.A.norm();
    for (int j = 0; j < s.zero_dim; ++j)
      CHECK((f.A * s.zero_vectors.col(j)).norm() <= 1e-8 * a_norm);
  }
}

TEST_CASE("solve_lambda: vectors with distinct values are B- and A-orthogonal") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    FormPair f;
    f.A = oracles::random_symmetric(8, rng);
    f.B = oracles::random_spd(8, rng);
    const LambdaSpectrum s = omega::solve_lambda(f);
    std::vector<std::pair<double, Eigen::VectorXd>> all;
    for (std::size_t i = 0; i < s.positive.size(); ++i)
      all.emplace_back(s.positive[i], s.positive_vectors.col(static_cast<Eigen::Index>(i)));
    for (std::size_t i = 0; i < s.negative.size(); ++i)
      all.emplace_back(s.negative[i], s.negative_vectors.col(static_cast<Eigen::Index>(i)));
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        if (std::abs(all[i].first - all[j].first) < 1e-9) continue;
        CHECK(std::abs(all[i].second.dot(f.B * all[j].second)) <= 1e-9);
        CHECK(std::abs(all[i].second.dot(f.A * all[j].second)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("rayleigh: coordinates, maximizers, and the supremum property") {
  FormPair f;
  f.A = Eigen::Vector2d(2, 6).asDiagonal();
  f.B = Eigen::Vector2d(4, 36).asDiagonal();
  CHECK(omega::rayleigh(f, Eigen::Vector2d(1, 0)) == doctest::Approx(0.5).epsilon(1e-15));
  // Scale invariance.
  Eigen::Vector2d v(0.3, -0.7);
  CHECK(omega::rayleigh(f, v) == doctest::Approx(omega::rayleigh(f, 17.0 * v)).epsilon(1e-14));
  CHECK_THROWS_AS(omega::rayleigh(f, Eigen::Vector2d(0, 0)), omega::input_error);

  const FormPair d = diag_forms();
  const LambdaSpectrum s = omega::solve_lambda(d);
  CHECK(omega::rayleigh(d, s.positive_vectors.col(0)) == doctest::Approx(s.positive[0]).epsilon(1e-9));

  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    Eigen::Vector3d r(gauss(rng), gauss(rng), gauss(rng));
    CHECK(omega::rayleigh(d, r) <= s.positive[0] + 1e-12);
  }
}

TEST_CASE("greedy_lambda: matches solve_lambda on the diagonal example") {
  const LambdaSpectrum g = omega::greedy_lambda(diag_forms(), 3);
  REQUIRE(g.positive.size() == 3);
  CHECK(g.positive[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g.positive[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(g.positive[2] == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("greedy_lambda: negative semidefinite form yields an empty positive list") {
  std::mt19937_64 rng(41);
  FormPair f;
  f.B = oracles::random_spd(5, rng);
  f.A = -oracles::random_spd(5, rng, 0.1);
  const LambdaSpectrum g = omega::greedy_lambda(f, 5);
  CHECK(g.positive.empty());
}

TEST_CASE("greedy_lambda: rank-one positive part is found at k = 1") {
  std::mt19937_64 rng(43);
  const Eigen::MatrixXd b = oracles::random_spd(6, rng);
  Eigen::VectorXd spec(6);
  spec << 0.7, -0.1, -0.4, -0.9, -1.3, -2.0;
  FormPair f;
  f.B = b;
  f.A = oracles::pencil_with_spectrum(b, spec, rng);
  const LambdaSpectrum g = omega::greedy_lambda(f, 1);
  REQUIRE(g.positive.size() == 1);
  CHECK(g.positive[0] == doctest::Approx(0.7).epsilon(1e-10));
}

TEST_CASE("property: greedy and eigen-solve agree on random pencils up to N = 12") {
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<int> size(3, 12);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = size(rng);
    FormPair f;
    f.A = oracles::random_symmetric(n, rng);
    f.B = oracles::random_spd(n, rng);
    const LambdaSpectrum s = omega::solve_lambda(f);
    const LambdaSpectrum g = omega::greedy_lambda(f, n);
    REQUIRE(g.positive.size() == s.positive.size());
    for (std::size_t i = 0; i < g.positive.size(); ++i)
      CHECK(g.positive[i] == doctest::Approx(s.positive[i]).epsilon(1e-9));
  }
}

TEST_CASE("property: min-max over random subspaces is bounded by Lambda_j") {
  std::mt19937_64 rng(53);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = 9;
  FormPair f;
  f.A = oracles::random_symmetric(n, rng);
  f.B = oracles::random_spd(n, rng);
  const LambdaSpectrum s = omega::solve_lambda(f);
  for (int j = 1; j <= 4; ++j) {
    if (static_cast<std::size_t>(j) > s.positive.size()) break;
    for (int sample = 0; sample < 100; ++sample) {
      Eigen::MatrixXd l(n, j);
      for (int c = 0; c < j; ++c)
        for (int r = 0; r < n; ++r) l(r, c) = gauss(rng);
      const Eigen::MatrixXd al = l.transpose() * f.A * l;
      const Eigen::MatrixXd bl = l.transpose() * f.B * l;
      Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(al, bl, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
      CHECK(es.eigenvalues()[0] <= s.positive[static_cast<std::size_t>(j - 1)] + 1e-10);
    }
    // Equality is witnessed on the span of the first j associated vectors.
    const Eigen::MatrixXd v = s.positive_vectors.leftCols(j);
    const Eigen::MatrixXd av = v.transpose() * f.A * v;
    const Eigen::MatrixXd bv = v.transpose() * f.B * v;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(av, bv, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    CHECK(es.eigenvalues()[0] == doctest::Approx(s.positive[static_cast<std::size_t>(j - 1)]).epsilon(1e-9));
  }
}

TEST_CASE("property: adding a PSD increment never lowers the spectrum") {
  std::mt19937_64 rng(59);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = 8;
  for (int trial = 0; trial < 25; ++trial) {
    FormPair f;
    f.A = oracles::random_symmetric(n, rng);
    f.B = oracles::random_spd(n, rng);
    Eigen::MatrixXd g(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) g(r, c) = gauss(rng);
    FormPair fplus = f;
    fplus.A += g.transpose() * g;

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> base(f.A, f.B, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> bumped(fplus.A, fplus.B,
                                                                     Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    for (int i = 0; i < n; ++i) CHECK(bumped.eigenvalues()[i] >= base.eigenvalues()[i] - 1e-10);

    // Classified positive lists inherit the ordering where both are defined.
    const LambdaSpectrum s0 = omega::solve_lambda(f);
    const LambdaSpectrum s1 = omega::solve_lambda(fplus);
    for (std::size_t k = 0; k < s0.positive.size(); ++k) {
      REQUIRE(s1.positive.size() > k);
      CHECK(s1.positive[k] >= s0.positive[k] - 1e-10);
    }
  }
}

TEST_CASE("decay bound: values are dominated by s_max / lambda_k") {
  // A = diag(s_j lambda_j) with s_j <= s_max models S <= s_max * g pointwise.
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = 20;
  Eigen::VectorXd lambda(n);
  double acc = 0.5;
  for (int i = 0; i < n; ++i) {
    acc += unit(rng) + 0.1;
    lambda[i] = acc;
  }
  const double s_max = 3.0;
  Eigen::VectorXd s_coeff(n);
  for (int i = 0; i < n; ++i) s_coeff[i] = s_max * unit(rng);
  FormPair f;
  f.A = (s_coeff.array() * lambda.array()).matrix().asDiagonal();
  f.B = lambda.cwiseProduct(lambda).asDiagonal();
  const LambdaSpectrum s = omega::solve_lambda(f);
  for (std::size_t k = 0; k < s.positive.size(); ++k)
    CHECK(s.positive[k] <= s_max / lambda[static_cast<Eigen::Index>(k)] + 1e-12);
}
