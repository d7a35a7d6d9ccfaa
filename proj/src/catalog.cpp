#include "omega/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

namespace omega {

namespace {

constexpr double kPi = std::numbers::pi;

long long binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long result = 1;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

std::string format_value(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

struct Group {
  double value;
  long long multiplicity;
  std::string witness;
};

// Groups (value, mult, witness) triples by value with a relative tolerance,
// keeping the first witness seen in enumeration order.
std::vector<Group> group_descending(std::vector<Group> items, double rel_tol = 1e-12) {
  std::stable_sort(items.begin(), items.end(), [](const Group& a, const Group& b) { return a.value > b.value; });
  std::vector<Group> out;
  for (const Group& g : items) {
    if (!out.empty() && std::abs(out.back().value - g.value) <= rel_tol * std::max(std::abs(out.back().value), 1.0)) {
      out.back().multiplicity += g.multiplicity;
    } else {
      out.push_back(g);
    }
  }
  return out;
}

Eigen::VectorXd expand_positive_eigenvalues(const EinsteinFactor& f, int count) {
  std::vector<double> lambdas;
  for (const auto& [value, mult] : f.spectrum) {
    if (value <= 0.0) continue;
    for (long long m = 0; m < mult && static_cast<int>(lambdas.size()) < count; ++m) lambdas.push_back(value);
    if (static_cast<int>(lambdas.size()) >= count) break;
  }
  if (static_cast<int>(lambdas.size()) < count)
    throw insufficient_spectrum_error("factor spectrum has fewer than " + std::to_string(count) +
                                      " nonzero eigenvalues counted with multiplicity");
  return Eigen::Map<Eigen::VectorXd>(lambdas.data(), count);
}

FormPair diagonal_forms(const EinsteinFactor& f, double coeff, int count) {
  f.validate();
  const Eigen::VectorXd lambda = expand_positive_eigenvalues(f, count);
  FormPair out;
  out.A = (coeff * lambda).asDiagonal();
  out.B = lambda.cwiseProduct(lambda).asDiagonal();
  out.basis.manifold_dim = std::max(f.dim, 1);
  out.basis.eigenvalues = lambda;
  out.basis.provenance = "analytic-catalog";
  return out;
}

}  // namespace

void EinsteinFactor::validate() const {
  if (spectrum.empty()) throw input_error("EinsteinFactor: spectrum is empty");
  if (spectrum.front().first != 0.0 || spectrum.front().second != 1)
    throw input_error("EinsteinFactor: spectrum must start with eigenvalue 0 of multiplicity 1");
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    if (spectrum[i].second < 1) throw input_error("EinsteinFactor: multiplicities must be positive");
    if (i > 0 && spectrum[i].first <= spectrum[i - 1].first)
      throw input_error("EinsteinFactor: eigenvalues must be ascending and distinct");
  }
  if (dim < 0) throw input_error("EinsteinFactor: dimension must be nonnegative");
}

void HeisenbergMetric::validate() const {
  if (n < 1) throw input_error("HeisenbergMetric: n must be positive");
  if (static_cast<int>(d.size()) != n) throw input_error("HeisenbergMetric: expected n frame constants");
  for (double di : d)
    if (!(di > 0.0)) throw input_error("HeisenbergMetric: frame constants must be positive");
  if (!(g_last > 0.0)) throw input_error("HeisenbergMetric: g_last must be positive");
}

double HeisenbergMetric::p() const {
  double acc = 0.0;
  for (double di : d) acc += di * di;
  return acc;
}

double HeisenbergMetric::q() const {
  double acc = 0.0;
  for (double di : d) acc += di * di * di * di;
  return acc;
}

double HeisenbergMetric::r() const {
  double acc = 0.0;
  for (double di : d) acc += di * di * di * di * di * di;
  return acc;
}

EinsteinFactor sphere_spectrum(int n, double radius, int max_level) {
  if (n < 1) throw input_error("sphere_spectrum: dimension must be >= 1");
  if (!(radius > 0.0)) throw input_error("sphere_spectrum: radius must be positive");
  if (max_level < 0) throw input_error("sphere_spectrum: max_level must be nonnegative");
  EinsteinFactor f;
  f.dim = n;
  f.einstein_const = static_cast<double>(n - 1) / (radius * radius);
  for (int k = 0; k <= max_level; ++k) {
    const double lambda = static_cast<double>(k) * (k + n - 1) / (radius * radius);
    const long long mult = binomial(n + k, n) - binomial(n + k - 2, n);
    f.spectrum.emplace_back(lambda, mult);
  }
  return f;
}

EinsteinFactor torus_spectrum(const std::vector<double>& periods, double max_norm) {
  if (periods.empty()) throw input_error("torus_spectrum: need at least one period");
  for (double p : periods)
    if (!(p > 0.0)) throw input_error("torus_spectrum: periods must be positive");
  if (max_norm < 0.0) throw input_error("torus_spectrum: max_norm must be nonnegative");

  const int n = static_cast<int>(periods.size());
  std::vector<int> bound(periods.size());
  for (int j = 0; j < n; ++j)
    bound[static_cast<std::size_t>(j)] = static_cast<int>(std::floor(periods[static_cast<std::size_t>(j)] *
                                                                     std::sqrt(max_norm) / (2.0 * kPi)));

  std::vector<double> values;
  std::vector<int> m(periods.size(), 0);
  std::function<void(int, double)> visit = [&](int axis, double partial) {
    if (axis == n) {
      values.push_back(partial);
      return;
    }
    const double step = 2.0 * kPi / periods[static_cast<std::size_t>(axis)];
    for (int mj = -bound[static_cast<std::size_t>(axis)]; mj <= bound[static_cast<std::size_t>(axis)]; ++mj) {
      const double term = (step * mj) * (step * mj);
      if (partial + term <= max_norm + 1e-12 * std::max(1.0, max_norm)) visit(axis + 1, partial + term);
    }
  };
  visit(0, 0.0);

  std::sort(values.begin(), values.end());
  EinsteinFactor f;
  f.dim = n;
  f.einstein_const = 0.0;
  for (double v : values) {
    if (!f.spectrum.empty() &&
        std::abs(f.spectrum.back().first - v) <= 1e-12 * std::max(1.0, std::abs(v))) {
      ++f.spectrum.back().second;
    } else {
      f.spectrum.emplace_back(v, 1);
    }
  }
  return f;
}

EinsteinFactor point_factor() {
  EinsteinFactor f;
  f.dim = 0;
  f.einstein_const = 0.0;
  f.spectrum = {{0.0, 1}};
  f.complete = true;
  return f;
}

std::vector<OmegaValue> product_omega(const EinsteinFactor& f1, const EinsteinFactor& f2, int top) {
  f1.validate();
  f2.validate();
  if (!(f1.einstein_const > 0.0)) throw input_error("product_omega: requires a_1 > 0");
  if (top < 1) throw input_error("product_omega: top must be positive");

  const double a1 = f1.einstein_const;
  const double a2 = f2.einstein_const;
  std::vector<Group> candidates;
  for (const auto& [l, ml] : f1.spectrum) {
    for (const auto& [m, mm] : f2.spectrum) {
      if (l == 0.0 && m == 0.0) continue;
      const double sum = l + m;
      const double value = (a1 * l + a2 * m) / (sum * sum);
      if (value > 0.0)
        candidates.push_back({value, ml * mm, "lambda=" + format_value(l) + ",mu=" + format_value(m)});
    }
  }

  const std::vector<Group> groups = group_descending(std::move(candidates));
  if (static_cast<int>(groups.size()) < top)
    throw insufficient_spectrum_error("product_omega: only " + std::to_string(groups.size()) +
                                      " positive values enumerable from the truncated spectra");

  // Any pair outside the enumeration has lambda + mu above every truncation
  // edge, hence value below max(a1,|a2|)/edge; the prefix is certified only
  // when that ceiling stays below the last returned value.
  double edge = std::numeric_limits<double>::infinity();
  if (!f1.complete) edge = std::min(edge, f1.max_listed_eigenvalue());
  if (!f2.complete) edge = std::min(edge, f2.max_listed_eigenvalue());
  const double ceiling = std::isinf(edge) ? 0.0 : std::max(a1, std::abs(a2)) / edge;
  const double last = groups[static_cast<std::size_t>(top - 1)].value;
  if (!(ceiling < last))
    throw insufficient_spectrum_error(
        "product_omega: truncated spectra cannot certify the requested prefix (unenumerated values may reach " +
        format_value(ceiling) + ", last requested value is " + format_value(last) + ")");

  std::vector<OmegaValue> out;
  out.reserve(static_cast<std::size_t>(top));
  for (int i = 0; i < top; ++i) {
    const Group& g = groups[static_cast<std::size_t>(i)];
    out.push_back({g.value, g.multiplicity, g.witness});
  }
  return out;
}

std::vector<OmegaValue> einstein_omega(const EinsteinFactor& f, int top) {
  f.validate();
  if (f.einstein_const <= 0.0) return {};  // S = a g with a <= 0: every value is zero
  return product_omega(f, point_factor(), top);
}

std::vector<OmegaValue> catalog_lambda_of_g(const EinsteinFactor& f, int top) {
  f.validate();
  if (top < 1) throw input_error("catalog_lambda_of_g: top must be positive");
  std::vector<Group> items;
  for (const auto& [l, m] : f.spectrum) {
    if (l <= 0.0) continue;
    items.push_back({1.0 / l, m, "lambda=" + format_value(l)});
  }
  const std::vector<Group> groups = group_descending(std::move(items));
  if (static_cast<int>(groups.size()) < top)
    throw insufficient_spectrum_error("catalog_lambda_of_g: spectrum has only " + std::to_string(groups.size()) +
                                      " distinct nonzero eigenvalues");
  std::vector<OmegaValue> out;
  for (int i = 0; i < top; ++i) {
    const Group& g = groups[static_cast<std::size_t>(i)];
    out.push_back({g.value, g.multiplicity, g.witness});
  }
  return out;
}

double heisenberg_omega_ck(const HeisenbergMetric& metric, long long c, const std::vector<long long>& k) {
  metric.validate();
  if (c == 0) throw input_error("heisenberg_omega_ck: c must be nonzero");
  if (static_cast<int>(k.size()) != metric.n) throw input_error("heisenberg_omega_ck: expected n Hermite indices");
  for (long long ki : k)
    if (ki < 0) throw input_error("heisenberg_omega_ck: Hermite indices must be nonnegative");

  const double g = metric.g_last;
  const double cc = static_cast<double>(c);
  const double ac = std::abs(cc);
  double numerator = 0.0;
  double denom_sum = 0.0;
  for (int i = 0; i < metric.n; ++i) {
    const double d2 = metric.d[static_cast<std::size_t>(i)] * metric.d[static_cast<std::size_t>(i)];
    const double d4 = d2 * d2;
    const double d6 = d4 * d2;
    const double occ = 2.0 * static_cast<double>(k[static_cast<std::size_t>(i)]) + 1.0;
    numerator += 2.0 * kPi * kPi * cc * cc * d4 - kPi * ac * d6 * g * occ;
    denom_sum += 2.0 * kPi * ac * d2 * occ;
  }
  const double denom = 4.0 * kPi * kPi * cc * cc / g + denom_sum;
  return numerator / (denom * denom);
}

double heisenberg_critical_c(const HeisenbergMetric& metric) {
  metric.validate();
  const double p = metric.p(), q = metric.q(), r = metric.r();
  return metric.g_last / (2.0 * kPi) * (r / q) * (std::sqrt(9.0 / 16.0 + p * q / (2.0 * r)) + 0.75);
}

double heisenberg_omega1(const HeisenbergMetric& metric) {
  metric.validate();
  const double x_star = heisenberg_critical_c(metric);
  // The profile is negative below its root, rises to the maximum at x_star,
  // then decreases, so the integer maximum lies in [1, ceil(x_star) + 1].
  const long long hi = static_cast<long long>(std::ceil(x_star)) + 1;
  if (hi > 100000000LL) throw input_error("heisenberg_omega1: critical c too large to search");
  const std::vector<long long> ground(static_cast<std::size_t>(metric.n), 0);
  double best = 0.0;
  for (long long c = 1; c <= hi; ++c) best = std::max(best, heisenberg_omega_ck(metric, c, ground));
  return std::max(best, 0.0);
}

double heisenberg_sup(int n) {
  if (n < 1) throw input_error("heisenberg_sup: n must be positive");
  if (n == 1) {
    // Bound profile (1/4)(X - 3/4)/((X - 1/4)(X + 3/4)^2) evaluated at X = sqrt(17)/4.
    const double x = std::sqrt(17.0) / 4.0;
    return 0.25 * (x - 0.75) / ((x - 0.25) * (x + 0.75) * (x + 0.75));
  }
  return 1.0 / 32.0;
}

double unitary_omega1(int n, double r) {
  if (n < 2) throw input_error("unitary_omega1: n must be >= 2");
  if (!(r > 0.0)) throw input_error("unitary_omega1: r must be positive");
  const double nn = static_cast<double>(n) * n;
  const double denom = nn + static_cast<double>(n) / (r * r) - 1.0;
  const double first = 0.5 * nn * (nn - 1.0) / (denom * denom);
  return std::max(first, 0.25);
}

FormPair lambda_g_forms(const EinsteinFactor& f, int count) { return diagonal_forms(f, 1.0, count); }

FormPair einstein_forms(const EinsteinFactor& f, int count) {
  return diagonal_forms(f, f.einstein_const, count);
}

FormPair product_einstein_forms(const EinsteinFactor& f1, const EinsteinFactor& f2, double lambda_sum_cap) {
  f1.validate();
  f2.validate();
  struct Entry {
    double lambda_sum;
    double a_value;
  };
  std::vector<Entry> entries;
  for (const auto& [l, ml] : f1.spectrum) {
    for (const auto& [m, mm] : f2.spectrum) {
      if (l == 0.0 && m == 0.0) continue;
      const double sum = l + m;
      if (sum > lambda_sum_cap) continue;
      const double value = f1.einstein_const * l + f2.einstein_const * m;
      for (long long rep = 0; rep < ml * mm; ++rep) entries.push_back({sum, value});
    }
  }
  if (entries.size() < 2) throw insufficient_spectrum_error("product_einstein_forms: cap leaves fewer than 2 modes");
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.lambda_sum < b.lambda_sum; });

  const Eigen::Index n = static_cast<Eigen::Index>(entries.size());
  Eigen::VectorXd lambda(n), avals(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    lambda[i] = entries[static_cast<std::size_t>(i)].lambda_sum;
    avals[i] = entries[static_cast<std::size_t>(i)].a_value;
  }
  FormPair out;
  out.A = avals.asDiagonal();
  out.B = lambda.cwiseProduct(lambda).asDiagonal();
  out.basis.manifold_dim = std::max(f1.dim + f2.dim, 1);
  out.basis.eigenvalues = lambda;
  out.basis.provenance = "analytic-catalog:product";
  return out;
}

}  // namespace omega
