#include "omega/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "omega/torus.hpp"

namespace omega {

namespace {

std::string describe(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [key, value] : kv) {
    if (!first) os << ",";
    os << key << "=" << value;
    first = false;
  }
  return os.str();
}

Eigen::MatrixXd random_symmetric(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) m(i, j) = m(j, i) = unit(rng);
  return m;
}

Eigen::MatrixXd random_spd(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = unit(rng);
  return g.transpose() * g + 0.5 * Eigen::MatrixXd::Identity(n, n);
}

double min_rayleigh_on_span(const FormPair& forms, const Eigen::MatrixXd& span) {
  const Eigen::MatrixXd a = span.transpose() * forms.A * span;
  const Eigen::MatrixXd b = span.transpose() * forms.B * span;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (a + a.transpose()), 0.5 * (b + b.transpose()),
                                                               Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  return es.eigenvalues()[0];
}

// Tensor-sum assembly of two factor FormPairs on the product basis
// {psi_i psi'_k : (i,k) != (0,0)} with the constants reinstated as index 0.
FormPair tensor_product_forms(const FormPair& f1, const FormPair& f2) {
  const Eigen::Index n1 = f1.size(), n2 = f2.size();
  const Eigen::Index total = (n1 + 1) * (n2 + 1) - 1;
  auto flat = [n2](Eigen::Index i, Eigen::Index k) { return i * (n2 + 1) + k - 1; };  // skips (0,0)

  Eigen::VectorXd l1 = Eigen::VectorXd::Zero(n1 + 1), l2 = Eigen::VectorXd::Zero(n2 + 1);
  l1.tail(n1) = f1.basis.eigenvalues;
  l2.tail(n2) = f2.basis.eigenvalues;

  FormPair out;
  out.A = Eigen::MatrixXd::Zero(total, total);
  out.B = Eigen::MatrixXd::Zero(total, total);
  for (Eigen::Index i = 0; i <= n1; ++i) {
    for (Eigen::Index k = 0; k <= n2; ++k) {
      if (i == 0 && k == 0) continue;
      const Eigen::Index row = flat(i, k);
      const double lambda_sum = l1[i] + l2[k];
      out.B(row, row) = lambda_sum * lambda_sum;
      // A1 block: same psi'_k, const row/col of A1 vanish (gradients of constants).
      for (Eigen::Index j = 1; j <= n1; ++j) {
        if (i == 0) continue;
        out.A(row, flat(j, k)) += f1.A(i - 1, j - 1);
      }
      for (Eigen::Index l = 1; l <= n2; ++l) {
        if (k == 0) continue;
        out.A(row, flat(i, l)) += f2.A(k - 1, l - 1);
      }
    }
  }
  out.A = 0.5 * (out.A + out.A.transpose()).eval();
  out.basis.manifold_dim = f1.basis.manifold_dim + f2.basis.manifold_dim;
  out.basis.provenance = "tensor-product";
  return out;
}

}  // namespace

VerifyReport check_minmax(const FormPair& forms, int j, int samples, std::uint64_t seed) {
  VerifyReport report;
  report.suite = "minmax";
  const VerifyTolerances tol;
  report.tolerances = {{"bound", tol.minmax_bound}, {"witness", tol.minmax_witness}};
  const Eigen::Index n = forms.size();
  if (j < 1 || 2 * j > n) throw input_error("check_minmax: require 1 <= j <= N/2");

  const LambdaSpectrum s = solve_lambda(forms);
  if (static_cast<int>(s.positive.size()) < j) {
    report.skipped_reason = "fewer than j positive values";
    return report;
  }
  const double lambda_j = s.positive[static_cast<std::size_t>(j - 1)];

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int c = 0; c < samples; ++c) {
    Eigen::MatrixXd span(n, j);
    for (Eigen::Index col = 0; col < j; ++col)
      for (Eigen::Index row = 0; row < n; ++row) span(row, col) = gauss(rng);
    const double low = min_rayleigh_on_span(forms, span);
    ++report.cases;
    if (!(low <= lambda_j + tol.minmax_bound))
      report.failures.push_back({describe({{"sample", static_cast<double>(c)}, {"j", static_cast<double>(j)}}),
                                 "min rayleigh over L_j <= Lambda_j", lambda_j, low});
  }

  const double witness = min_rayleigh_on_span(forms, s.positive_vectors.leftCols(j));
  ++report.cases;
  if (std::abs(witness - lambda_j) > tol.minmax_witness)
    report.failures.push_back({describe({{"j", static_cast<double>(j)}}),
                               "equality on span(v_1..v_j)", lambda_j, witness});
  return report;
}

VerifyReport check_monotone(const FormPair& base, const Eigen::MatrixXd& psd_increment, std::uint64_t seed) {
  (void)seed;
  VerifyReport report;
  report.suite = "monotone";
  const VerifyTolerances tol;
  report.tolerances = {{"shift", tol.monotone}};
  if (psd_increment.rows() != base.size() || psd_increment.cols() != base.size())
    throw input_error("check_monotone: increment size mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> inc_check(0.5 * (psd_increment + psd_increment.transpose()),
                                                           Eigen::EigenvaluesOnly);
  if (inc_check.eigenvalues()[0] < -1e-10 * std::max(1.0, psd_increment.cwiseAbs().maxCoeff()))
    throw input_error("check_monotone: increment is not positive semidefinite");

  FormPair bumped = base;
  bumped.A += 0.5 * (psd_increment + psd_increment.transpose());
  const LambdaSpectrum s0 = solve_lambda(base);
  const LambdaSpectrum s1 = solve_lambda(bumped);

  for (std::size_t k = 0; k < s0.positive.size(); ++k) {
    ++report.cases;
    const double upper = k < s1.positive.size() ? s1.positive[k] : 0.0;
    if (!(upper >= s0.positive[k] - tol.monotone))
      report.failures.push_back({describe({{"k", static_cast<double>(k + 1)}}),
                                 "Lambda_k(A + inc) >= Lambda_k(A)", s0.positive[k], upper});
  }
  // Negative side: Lambda_{-k}(A + inc) >= Lambda_{-k}(A); values past the
  // bumped list have moved into the zero or positive classes, hence >= 0.
  for (std::size_t k = 0; k < s1.negative.size(); ++k) {
    ++report.cases;
    const double lower = k < s0.negative.size() ? s0.negative[k] : s1.negative[k];
    if (!(s1.negative[k] >= lower - tol.monotone))
      report.failures.push_back({describe({{"k", static_cast<double>(k + 1)}}),
                                 "Lambda_-k(A + inc) >= Lambda_-k(A)", lower, s1.negative[k]});
  }
  return report;
}

VerifyReport check_product_law(const FormPair& f1, const FormPair& f2) {
  VerifyReport report;
  report.suite = "product-law";
  const VerifyTolerances tol;
  report.tolerances = {{"top_value", tol.product_law}};
  if (f1.basis.eigenvalues.size() != f1.size() || f2.basis.eigenvalues.size() != f2.size())
    throw input_error("check_product_law: factors need eigenbasis metadata");

  const LambdaSpectrum s1 = solve_lambda(f1);
  const LambdaSpectrum s2 = solve_lambda(f2);
  const double top1 = s1.positive.empty() ? 0.0 : s1.positive[0];
  const double top2 = s2.positive.empty() ? 0.0 : s2.positive[0];
  const double expected = std::max(top1, top2);

  const LambdaSpectrum sp = solve_lambda(tensor_product_forms(f1, f2));
  const double observed = sp.positive.empty() ? 0.0 : sp.positive[0];
  ++report.cases;
  if (std::abs(observed - expected) > tol.product_law)
    report.failures.push_back({describe({{"N1", static_cast<double>(f1.size())}, {"N2", static_cast<double>(f2.size())}}),
                               "Lambda_1(S1 (+) S2) = max(Lambda_1(S1), Lambda_1(S2))", expected, observed});
  return report;
}

VerifyReport check_lichnerowicz_values(double lambda1, double ricci_lower, double omega1, int dim,
                                       double tolerance, const std::string& label) {
  VerifyReport report;
  report.suite = "lichnerowicz";
  report.tolerances = {{"chain", tolerance}};
  if (!(ricci_lower > 0.0)) {
    report.skipped_reason = "Ricci lower bound r <= 0 (" + label + ")";
    return report;
  }
  const double middle = ricci_lower / omega1;
  const double right = static_cast<double>(dim) / (dim - 1) * ricci_lower;
  report.cases = 2;
  if (!(lambda1 >= middle * (1.0 - tolerance) - tolerance))
    report.failures.push_back({label, "lambda_1 >= r / Omega_1", middle, lambda1});
  if (!(middle >= right * (1.0 - tolerance) - tolerance))
    report.failures.push_back({label, "r / Omega_1 >= dim/(dim-1) r", right, middle});
  return report;
}

VerifyReport check_lichnerowicz(const EinsteinFactor& factor) {
  factor.validate();
  const VerifyTolerances tol;
  if (!(factor.einstein_const > 0.0)) {
    VerifyReport report;
    report.suite = "lichnerowicz";
    report.skipped_reason = "Einstein constant not positive";
    return report;
  }
  const double lambda1 = factor.spectrum.at(1).first;
  const double omega1 = einstein_omega(factor, 1).at(0).value;
  return check_lichnerowicz_values(lambda1, factor.einstein_const, omega1, factor.dim,
                                   tol.lichnerowicz_analytic, "einstein factor");
}

namespace {

VerifyReport merge(const std::string& suite, std::vector<VerifyReport> parts) {
  VerifyReport out;
  out.suite = suite;
  for (VerifyReport& p : parts) {
    out.cases += p.cases;
    out.failures.insert(out.failures.end(), p.failures.begin(), p.failures.end());
    out.tolerances.insert(p.tolerances.begin(), p.tolerances.end());
  }
  return out;
}

VerifyReport suite_minmax(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(6, 10);
  std::uniform_int_distribution<int> jdist(1, 4);
  std::vector<VerifyReport> parts;
  // The diagonal example with the equality witness 1/6 at j = 2.
  FormPair diag;
  diag.A = Eigen::Vector3d(2, 6, 12).asDiagonal() * 1.0;
  diag.B = Eigen::Vector3d(4, 36, 144).asDiagonal() * 1.0;
  parts.push_back(check_minmax(diag, 1, 10, seed ^ 0xabc));
  for (int c = 0; c < cases; ++c) {
    FormPair f;
    const int n = size(rng);
    f.A = random_symmetric(n, rng);
    f.B = random_spd(n, rng);
    parts.push_back(check_minmax(f, jdist(rng), 10, rng()));
  }
  return merge("minmax", std::move(parts));
}

VerifyReport suite_monotone(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(5, 10);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<VerifyReport> parts;
  for (int c = 0; c < cases; ++c) {
    const int n = size(rng);
    FormPair f;
    f.A = random_symmetric(n, rng);
    f.B = random_spd(n, rng);
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = unit(rng);
    Eigen::MatrixXd increment = g.transpose() * g;
    if (c % 10 == 0) increment.setZero();  // equality case
    parts.push_back(check_monotone(f, increment, rng()));
  }
  return merge("monotone", std::move(parts));
}

VerifyReport suite_product_law(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(2, 6);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<VerifyReport> parts;

  // Analytic S2(1) x S2(1) forms.
  const EinsteinFactor s2 = sphere_spectrum(2, 1.0, 8);
  parts.push_back(check_product_law(einstein_forms(s2, 15), einstein_forms(s2, 15)));
  // Flat factor (zero form) times the sphere.
  FormPair flat = lambda_g_forms(torus_spectrum({2 * 3.14159265358979323846, 2 * 3.14159265358979323846}, 9.5), 12);
  flat.A.setZero();
  parts.push_back(check_product_law(flat, einstein_forms(s2, 15)));

  for (int c = 0; c < cases; ++c) {
    auto make_factor = [&]() {
      const int n = size(rng);
      Eigen::VectorXd lambda(n);
      double acc = 0.3;
      for (int i = 0; i < n; ++i) {
        acc += 0.2 + (unit(rng) + 1.0);
        lambda[i] = acc;
      }
      FormPair f;
      f.A = random_symmetric(n, rng);
      f.B = lambda.cwiseProduct(lambda).asDiagonal();
      f.basis.manifold_dim = 2;
      f.basis.eigenvalues = lambda;
      f.basis.provenance = "verify:random-factor";
      return f;
    };
    parts.push_back(check_product_law(make_factor(), make_factor()));
  }
  return merge("product-law", std::move(parts));
}

VerifyReport suite_orthogonality(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(5, 10);
  const VerifyTolerances tol;
  VerifyReport report;
  report.suite = "orthogonality";
  report.tolerances = {{"pairing", tol.orthogonality}};
  for (int c = 0; c < cases; ++c) {
    const int n = size(rng);
    FormPair f;
    f.A = random_symmetric(n, rng);
    f.B = random_spd(n, rng);
    const LambdaSpectrum s = solve_lambda(f);
    std::vector<std::pair<double, Eigen::VectorXd>> all;
    for (std::size_t i = 0; i < s.positive.size(); ++i)
      all.emplace_back(s.positive[i], s.positive_vectors.col(static_cast<Eigen::Index>(i)));
    for (std::size_t i = 0; i < s.negative.size(); ++i)
      all.emplace_back(s.negative[i], s.negative_vectors.col(static_cast<Eigen::Index>(i)));
    ++report.cases;
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        if (std::abs(all[i].first - all[j].first) < 1e-8) continue;
        const double b_pair = std::abs(all[i].second.dot(f.B * all[j].second));
        const double a_pair = std::abs(all[i].second.dot(f.A * all[j].second));
        if (b_pair > tol.orthogonality)
          report.failures.push_back({describe({{"case", static_cast<double>(c)}}),
                                     "B-orthogonality of distinct values", 0.0, b_pair});
        if (a_pair > tol.orthogonality)
          report.failures.push_back({describe({{"case", static_cast<double>(c)}}),
                                     "A-orthogonality of distinct values", 0.0, a_pair});
      }
    }
  }
  return report;
}

VerifyReport suite_decay_bound(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(0.2, 2.0);
  std::uniform_real_distribution<double> period(3.0, 9.0);
  std::uniform_int_distribution<int> freq(-2, 2);
  std::uniform_int_distribution<int> sign(0, 1);
  const VerifyTolerances tol;
  VerifyReport report;
  report.suite = "decay-bound";
  report.tolerances = {{"bound", tol.decay_bound}};
  for (int c = 0; c < cases; ++c) {
    const double a0 = amp(rng);
    const double b0 = (sign(rng) ? 1.0 : -1.0) * amp(rng) * 0.8;
    const int m1 = freq(rng), m2 = freq(rng);
    const std::vector<double> periods = {period(rng), period(rng)};
    std::ostringstream spec;
    spec.precision(17);
    spec << "scalar-cos:" << a0 << "," << b0 << "," << m1 << "," << m2;
    const TorusField field = builtin_field(spec.str(), periods, 32);
    const double s_max = a0 + std::abs(b0);  // exact pointwise top eigenvalue
    const auto [forms, modes] = fourier_forms(field, 3);
    const LambdaSpectrum s = solve_lambda(forms);
    ++report.cases;
    for (std::size_t k = 0; k < s.positive.size(); ++k) {
      const double bound = s_max / forms.basis.eigenvalues[static_cast<Eigen::Index>(k)];
      if (!(s.positive[k] <= bound + tol.decay_bound)) {
        report.failures.push_back({spec.str(), "Lambda_k <= s_max / lambda_k", bound, s.positive[k]});
        break;
      }
    }
  }
  return report;
}

VerifyReport suite_lichnerowicz(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(2, 6);
  std::uniform_real_distribution<double> radius(0.4, 3.0);
  std::uniform_real_distribution<double> stretch(1.5, 4.0);
  const VerifyTolerances tol;
  std::vector<VerifyReport> parts;
  for (int c = 0; c < cases; ++c) {
    switch (c % 3) {
      case 0: {
        parts.push_back(check_lichnerowicz(sphere_spectrum(dim(rng), radius(rng), 6)));
        break;
      }
      case 1: {
        // Product of positively curved factors: r = min(a1, a2).
        const EinsteinFactor f1 = sphere_spectrum(dim(rng), radius(rng), 24);
        const EinsteinFactor f2 = sphere_spectrum(dim(rng), radius(rng), 24);
        const double r = std::min(f1.einstein_const, f2.einstein_const);
        const double lambda1 = std::min(f1.spectrum.at(1).first, f2.spectrum.at(1).first);
        const double omega1 = product_omega(f1, f2, 1).at(0).value;
        parts.push_back(check_lichnerowicz_values(lambda1, r, omega1, f1.dim + f2.dim,
                                                  tol.lichnerowicz_analytic, "product"));
        break;
      }
      default: {
        // G_r = r^2 g_1 + g_2 with unit-Einstein spheres: the equality case
        // lambda_1 = r_low / Omega_1 at large r.
        const int n1 = dim(rng), n2 = dim(rng);
        const double r = stretch(rng);
        const EinsteinFactor f1 = sphere_spectrum(n1, r * std::sqrt(static_cast<double>(n1 - 1)), 24);
        const EinsteinFactor f2 = sphere_spectrum(n2, std::sqrt(static_cast<double>(n2 - 1)), 24);
        const double r_low = std::min(f1.einstein_const, f2.einstein_const);
        const double lambda1 = std::min(f1.spectrum.at(1).first, f2.spectrum.at(1).first);
        const double omega1 = product_omega(f1, f2, 1).at(0).value;
        VerifyReport part = check_lichnerowicz_values(lambda1, r_low, omega1, n1 + n2,
                                                      tol.lichnerowicz_analytic, "G_r product");
        // Equality of the left link when the stretched factor carries lambda_1.
        if (lambda1 == f1.spectrum.at(1).first && omega1 > 0.0) {
          ++part.cases;
          if (std::abs(lambda1 - r_low / omega1) > 1e-10)
            part.failures.push_back({"G_r product", "equality lambda_1 = r/Omega_1", r_low / omega1, lambda1});
        }
        parts.push_back(std::move(part));
        break;
      }
    }
  }
  return merge("lichnerowicz", std::move(parts));
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"minmax", "monotone", "product-law", "orthogonality", "decay-bound", "lichnerowicz"};
}

VerifyReport run_suite(const std::string& name, int cases, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  VerifyReport report;
  if (name == "minmax") {
    report = suite_minmax(cases, seed);
  } else if (name == "monotone") {
    report = suite_monotone(cases, seed);
  } else if (name == "product-law") {
    report = suite_product_law(cases, seed);
  } else if (name == "orthogonality") {
    report = suite_orthogonality(cases, seed);
  } else if (name == "decay-bound") {
    report = suite_decay_bound(cases, seed);
  } else if (name == "lichnerowicz") {
    report = suite_lichnerowicz(cases, seed);
  } else {
    throw input_error("run_suite: unknown suite '" + name + "'");
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace omega
