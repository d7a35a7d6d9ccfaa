#include "omega/torus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace omega {

namespace {

constexpr double kPi = std::numbers::pi;

bool power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

double wrap_into(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0) r += period;
  return r;
}

// Displacement wrapped into [-period/2, period/2).
double wrap_centered(double x, double period) {
  double r = wrap_into(x, period);
  if (r >= period / 2) r -= period;
  return r;
}

// Quintic smoothstep and derivatives; C^2 glue at both ends.
double s5(double s) { return s * s * s * (s * (6 * s - 15) + 10); }
double s5p(double s) { return 30 * s * s * (s - 1) * (s - 1); }
double s5pp(double s) { return 60 * s * (s - 1) * (2 * s - 1); }

// Plateau bump on [-1, 1]: 1 for |t| <= 1/2, smooth descent to 0 at |t| = 1.
double bump(double t) {
  const double a = std::abs(t);
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  return 1.0 - s5(2.0 * (a - 0.5));
}

double bump_d1(double t) {
  const double a = std::abs(t);
  if (a <= 0.5 || a >= 1.0) return 0.0;
  return -2.0 * s5p(2.0 * (a - 0.5)) * (t >= 0 ? 1.0 : -1.0);
}

double bump_d2(double t) {
  const double a = std::abs(t);
  if (a <= 0.5 || a >= 1.0) return 0.0;
  return -4.0 * s5pp(2.0 * (a - 0.5));
}

std::vector<int> unflatten(long index, int dims, int grid) {
  std::vector<int> idx(static_cast<std::size_t>(dims));
  for (int a = dims - 1; a >= 0; --a) {
    idx[static_cast<std::size_t>(a)] = static_cast<int>(index % grid);
    index /= grid;
  }
  return idx;
}

std::vector<double> split_csv_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    out.push_back(std::stod(cell));
  }
  return out;
}

}  // namespace

double TorusField::volume() const {
  double v = 1.0;
  for (double p : periods) v *= p;
  return v;
}

long TorusField::total_points() const {
  long total = 1;
  for (int a = 0; a < dim(); ++a) total *= grid_size;
  return total;
}

void TorusField::validate() const {
  if (periods.empty()) throw input_error("TorusField: need at least one period");
  for (double p : periods)
    if (!(p > 0.0)) throw input_error("TorusField: periods must be positive");
  if (!power_of_two(grid_size) || grid_size < 16)
    throw input_error("TorusField: grid_size must be a power of two >= 16");
  if (static_cast<long>(samples.size()) != total_points())
    throw input_error("TorusField: sample count does not match the grid");
  const int n = dim();
  for (const Eigen::MatrixXd& s : samples) {
    if (s.rows() != n || s.cols() != n) throw input_error("TorusField: tensor dimension mismatch");
    if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, s.cwiseAbs().maxCoeff()))
      throw input_error("TorusField: tensor not symmetric at a sample point");
  }
}

TorusField tabulate_field(const std::vector<double>& periods, int grid_size,
                          const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& fn, int bandwidth) {
  TorusField field;
  field.periods = periods;
  field.grid_size = grid_size;
  field.bandwidth = bandwidth;
  field.evaluate = fn;
  const int n = field.dim();
  field.samples.resize(static_cast<std::size_t>(field.total_points()));
  for (long flat = 0; flat < field.total_points(); ++flat) {
    const std::vector<int> idx = unflatten(flat, n, grid_size);
    Eigen::VectorXd x(n);
    for (int a = 0; a < n; ++a) x[a] = periods[static_cast<std::size_t>(a)] * idx[static_cast<std::size_t>(a)] / grid_size;
    field.samples[static_cast<std::size_t>(flat)] = fn(x);
  }
  field.validate();
  return field;
}

TorusField builtin_field(const std::string& spec, const std::vector<double>& periods, int grid_size) {
  const int n = static_cast<int>(periods.size());
  std::string name = spec;
  std::string args;
  const std::size_t colon = spec.find(':');
  if (colon != std::string::npos) {
    name = spec.substr(0, colon);
    args = spec.substr(colon + 1);
  }

  if (name == "identity") {
    return tabulate_field(periods, grid_size, [n](const Eigen::VectorXd&) { return Eigen::MatrixXd::Identity(n, n).eval(); }, 0);
  }
  if (name == "neg-identity") {
    return tabulate_field(periods, grid_size, [n](const Eigen::VectorXd&) { return (-Eigen::MatrixXd::Identity(n, n)).eval(); }, 0);
  }
  if (name == "diag") {
    const std::vector<double> c = split_csv_numbers(args);
    if (static_cast<int>(c.size()) != n) throw input_error("builtin_field diag: expected one entry per axis");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a) m(a, a) = c[static_cast<std::size_t>(a)];
    return tabulate_field(periods, grid_size, [m](const Eigen::VectorXd&) { return m; }, 0);
  }
  if (name == "indefinite") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a) m(a, a) = (a == 0) ? 1.0 : -1.0;
    return tabulate_field(periods, grid_size, [m](const Eigen::VectorXd&) { return m; }, 0);
  }
  if (name == "cap") {
    // Nonnegative scalar bump times the metric, supported in a small cap
    // around the domain center; positive only there.
    std::vector<double> params = split_csv_numbers(args);
    const double width_factor = params.empty() ? 6.0 : params[0];
    std::vector<double> center(periods.size()), width(periods.size());
    for (int a = 0; a < n; ++a) {
      center[static_cast<std::size_t>(a)] = periods[static_cast<std::size_t>(a)] / 2.0;
      width[static_cast<std::size_t>(a)] = periods[static_cast<std::size_t>(a)] / width_factor;
    }
    auto fn = [n, center, width, periods](const Eigen::VectorXd& x) {
      double value = 1.0;
      for (int a = 0; a < n; ++a)
        value *= bump(wrap_centered(x[a] - center[static_cast<std::size_t>(a)], periods[static_cast<std::size_t>(a)]) /
                      width[static_cast<std::size_t>(a)]);
      return (value * Eigen::MatrixXd::Identity(n, n)).eval();
    };
    return tabulate_field(periods, grid_size, fn, -1);
  }
  if (name == "scalar-cos") {
    // (a + b cos(2 pi m.x/p)) * Identity; pointwise max eigenvalue a + |b|.
    const std::vector<double> params = split_csv_numbers(args);
    if (static_cast<int>(params.size()) != 2 + n)
      throw input_error("builtin_field scalar-cos: expected a,b,m1..mn");
    const double a0 = params[0], b0 = params[1];
    std::vector<int> m(periods.size());
    int bw = 0;
    for (int a = 0; a < n; ++a) {
      m[static_cast<std::size_t>(a)] = static_cast<int>(params[static_cast<std::size_t>(2 + a)]);
      bw = std::max(bw, std::abs(m[static_cast<std::size_t>(a)]));
    }
    auto fn = [n, a0, b0, m, periods](const Eigen::VectorXd& x) {
      double phase = 0.0;
      for (int a = 0; a < n; ++a) phase += 2.0 * kPi * m[static_cast<std::size_t>(a)] * x[a] / periods[static_cast<std::size_t>(a)];
      return ((a0 + b0 * std::cos(phase)) * Eigen::MatrixXd::Identity(n, n)).eval();
    };
    return tabulate_field(periods, grid_size, fn, bw);
  }
  throw input_error("builtin_field: unknown field '" + name + "'");
}

TorusField load_field_csv(const std::string& path, const std::vector<double>& periods) {
  std::ifstream in(path);
  if (!in) throw input_error("load_field_csv: cannot open " + path);
  const int n = static_cast<int>(periods.size());
  const int upper = n * (n + 1) / 2;
  std::vector<Eigen::MatrixXd> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const std::vector<double> cells = split_csv_numbers(line);
    if (static_cast<int>(cells.size()) != upper)
      throw input_error("load_field_csv: expected " + std::to_string(upper) + " entries per row");
    Eigen::MatrixXd s(n, n);
    int at = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) s(i, j) = s(j, i) = cells[static_cast<std::size_t>(at++)];
    samples.push_back(s);
  }
  const double per_axis = std::pow(static_cast<double>(samples.size()), 1.0 / n);
  const int grid = static_cast<int>(std::lround(per_axis));
  TorusField field;
  field.periods = periods;
  field.grid_size = grid;
  field.bandwidth = -1;
  field.samples = std::move(samples);
  field.validate();
  // Periodic multilinear interpolation for off-grid evaluation.
  field.evaluate = [field_copy = field](const Eigen::VectorXd& x) {
    const int dims = field_copy.dim();
    const int g = field_copy.grid_size;
    std::vector<int> base(static_cast<std::size_t>(dims));
    std::vector<double> frac(static_cast<std::size_t>(dims));
    for (int a = 0; a < dims; ++a) {
      const double u = wrap_into(x[a], field_copy.periods[static_cast<std::size_t>(a)]) /
                       field_copy.periods[static_cast<std::size_t>(a)] * g;
      base[static_cast<std::size_t>(a)] = static_cast<int>(std::floor(u)) % g;
      frac[static_cast<std::size_t>(a)] = u - std::floor(u);
    }
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(dims, dims);
    for (int corner = 0; corner < (1 << dims); ++corner) {
      double weight = 1.0;
      long flat = 0;
      for (int a = 0; a < dims; ++a) {
        const int bit = (corner >> a) & 1;
        weight *= bit ? frac[static_cast<std::size_t>(a)] : 1.0 - frac[static_cast<std::size_t>(a)];
        flat = flat * g + (base[static_cast<std::size_t>(a)] + bit) % g;
      }
      acc += weight * field_copy.samples[static_cast<std::size_t>(flat)];
    }
    return acc;
  };
  return field;
}

std::pair<FormPair, std::vector<FourierMode>> fourier_forms(const TorusField& field, int max_freq) {
  field.validate();
  if (max_freq < 1) throw input_error("fourier_forms: max_freq must be >= 1");
  const int n = field.dim();
  const int g = field.grid_size;
  if (field.bandwidth >= 0 && field.bandwidth + 2 * max_freq > g - 1)
    throw input_error("fourier_forms: field bandwidth exceeds the grid Nyquist for this basis");

  // Representative lattice vectors: first nonzero component positive.
  std::vector<FourierMode> modes;
  std::vector<int> m(static_cast<std::size_t>(n), -max_freq);
  while (true) {
    bool nonzero = false, representative = false;
    for (int a = 0; a < n; ++a) {
      if (m[static_cast<std::size_t>(a)] != 0) {
        nonzero = true;
        representative = m[static_cast<std::size_t>(a)] > 0;
        break;
      }
    }
    if (nonzero && representative) {
      double lambda = 0.0;
      for (int a = 0; a < n; ++a) {
        const double kappa = 2.0 * kPi * m[static_cast<std::size_t>(a)] / field.periods[static_cast<std::size_t>(a)];
        lambda += kappa * kappa;
      }
      modes.push_back({m, false, lambda});
      modes.push_back({m, true, lambda});
    }
    int axis = n - 1;
    while (axis >= 0 && m[static_cast<std::size_t>(axis)] == max_freq) m[static_cast<std::size_t>(axis--)] = -max_freq;
    if (axis < 0) break;
    ++m[static_cast<std::size_t>(axis)];
  }
  std::stable_sort(modes.begin(), modes.end(), [](const FourierMode& a, const FourierMode& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    if (a.m != b.m) return a.m < b.m;
    return a.is_sin < b.is_sin;
  });

  const Eigen::Index count = static_cast<Eigen::Index>(modes.size());
  const long pts = field.total_points();
  if (pts * count > 80'000'000L) throw input_error("fourier_forms: basis times grid too large");

  // Gradient tables: one (points x functions) matrix per axis.
  const double norm = std::sqrt(2.0 / field.volume());
  std::vector<Eigen::MatrixXd> grad(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) grad[static_cast<std::size_t>(a)].resize(pts, count);
  for (long flat = 0; flat < pts; ++flat) {
    const std::vector<int> idx = unflatten(flat, n, g);
    for (Eigen::Index j = 0; j < count; ++j) {
      const FourierMode& mode = modes[static_cast<std::size_t>(j)];
      double phase = 0.0;
      for (int a = 0; a < n; ++a)
        phase += 2.0 * kPi * mode.m[static_cast<std::size_t>(a)] * idx[static_cast<std::size_t>(a)] / g;
      const double osc = mode.is_sin ? std::cos(phase) : -std::sin(phase);
      for (int a = 0; a < n; ++a) {
        const double kappa = 2.0 * kPi * mode.m[static_cast<std::size_t>(a)] / field.periods[static_cast<std::size_t>(a)];
        grad[static_cast<std::size_t>(a)](flat, j) = norm * osc * kappa;
      }
    }
  }

  const double weight = field.volume() / static_cast<double>(pts);
  Eigen::MatrixXd a_form = Eigen::MatrixXd::Zero(count, count);
  Eigen::VectorXd s_component(pts);
  for (int p = 0; p < n; ++p) {
    for (int q = p; q < n; ++q) {
      for (long flat = 0; flat < pts; ++flat) s_component[flat] = field.samples[static_cast<std::size_t>(flat)](p, q);
      const Eigen::MatrixXd block =
          grad[static_cast<std::size_t>(p)].transpose() * s_component.asDiagonal() * grad[static_cast<std::size_t>(q)];
      a_form += weight * (p == q ? block : (block + block.transpose()).eval());
    }
  }
  a_form = 0.5 * (a_form + a_form.transpose()).eval();

  FormPair forms;
  forms.A = std::move(a_form);
  Eigen::VectorXd lambda(count);
  for (Eigen::Index j = 0; j < count; ++j) lambda[j] = modes[static_cast<std::size_t>(j)].lambda;
  forms.B = lambda.cwiseProduct(lambda).asDiagonal();
  forms.basis.manifold_dim = n;
  forms.basis.eigenvalues = lambda;
  forms.basis.provenance = "torus-fourier";
  return {std::move(forms), std::move(modes)};
}

LambdaSpectrum fourier_omega(const TorusField& field, int max_freq, int top) {
  if (top < 1) throw input_error("fourier_omega: top must be positive");
  auto [forms, modes] = fourier_forms(field, max_freq);
  LambdaSpectrum s = solve_lambda(forms);
  const auto trim = [top](std::vector<double>& values, Eigen::MatrixXd& vectors) {
    if (static_cast<int>(values.size()) > top) {
      values.resize(static_cast<std::size_t>(top));
      vectors = vectors.leftCols(top).eval();
    }
  };
  trim(s.positive, s.positive_vectors);
  trim(s.negative, s.negative_vectors);
  return s;
}

namespace {

struct PatchQuadrature {
  // Per-point precomputed scalars for the probe integrands.
  Eigen::VectorXd xi1;       // coordinate along the positive direction
  Eigen::VectorXd psi;       // bump value
  Eigen::VectorXd s_psipsi;  // S(grad psi, grad psi)
  Eigen::VectorXd s_psix;    // S(grad psi, X0)
  Eigen::VectorXd s_xx;      // S(X0, X0)
  Eigen::VectorXd lap_psi;   // -sum of second derivatives of psi
  Eigen::VectorXd dpsi_x;    // grad psi . X0
  double weight = 0.0;
};

PatchQuadrature build_patch(const TorusField& field, const ProbeFamily& family, int per_axis) {
  const int n = field.dim();
  const int big_n = family.patch_freq;
  long pts = 1;
  for (int a = 0; a < n; ++a) pts *= per_axis;
  if (pts > (1L << 26)) throw input_error("positivity_probe: quadrature grid too large");

  PatchQuadrature quad;
  quad.xi1.resize(pts);
  quad.psi.resize(pts);
  quad.s_psipsi.resize(pts);
  quad.s_psix.resize(pts);
  quad.s_xx.resize(pts);
  quad.lap_psi.resize(pts);
  quad.dpsi_x.resize(pts);
  const double half_width = 2.0 * kPi / big_n;
  const double cell = 2.0 * half_width / per_axis;
  quad.weight = std::pow(cell, n);

  Eigen::VectorXd xi(n), x(n), grad_psi(n);
  std::vector<double> b(static_cast<std::size_t>(n)), b1(static_cast<std::size_t>(n)), b2(static_cast<std::size_t>(n));
  for (long flat = 0; flat < pts; ++flat) {
    long rest = flat;
    for (int a = n - 1; a >= 0; --a) {
      const int ia = static_cast<int>(rest % per_axis);
      rest /= per_axis;
      xi[a] = -half_width + (ia + 0.5) * cell;  // midpoint rule
    }
    for (int a = 0; a < n; ++a) x[a] = wrap_into(family.center[a] + xi[a], field.periods[static_cast<std::size_t>(a)]);
    const Eigen::MatrixXd s = field.evaluate(x);

    const double scale = big_n / (2.0 * kPi);
    double psi = 1.0;
    for (int a = 0; a < n; ++a) {
      const double t = xi[a] * scale;
      b[static_cast<std::size_t>(a)] = bump(t);
      b1[static_cast<std::size_t>(a)] = bump_d1(t) * scale;
      b2[static_cast<std::size_t>(a)] = bump_d2(t) * scale * scale;
      psi *= b[static_cast<std::size_t>(a)];
    }
    double lap = 0.0;
    for (int a = 0; a < n; ++a) {
      double others = 1.0;
      for (int c = 0; c < n; ++c)
        if (c != a) others *= b[static_cast<std::size_t>(c)];
      grad_psi[a] = b1[static_cast<std::size_t>(a)] * others;
      lap -= b2[static_cast<std::size_t>(a)] * others;
    }
    quad.xi1[flat] = family.direction.dot(xi);
    quad.psi[flat] = psi;
    quad.s_psipsi[flat] = grad_psi.dot(s * grad_psi);
    quad.s_psix[flat] = grad_psi.dot(s * family.direction);
    quad.s_xx[flat] = family.direction.dot(s * family.direction);
    quad.lap_psi[flat] = lap;
    quad.dpsi_x[flat] = grad_psi.dot(family.direction);
  }
  return quad;
}

int patch_resolution(const ProbeFamily& family) {
  const int cycles = 2 * (family.K + family.k);
  int per_axis = 128;
  while (per_axis < 16 * cycles && per_axis < 8192) per_axis *= 2;
  return per_axis;
}

}  // namespace

Eigen::MatrixXd probe_gram(const TorusField& field, const ProbeFamily& family) {
  const PatchQuadrature quad = build_patch(field, family, patch_resolution(family));
  const int k = family.k;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(k, k);
  Eigen::VectorXd sin_a(k), cos_a(k), freq(k);
  for (int a = 0; a < k; ++a) freq[a] = static_cast<double>(family.K + 1 + a) * family.patch_freq;
  for (Eigen::Index p = 0; p < quad.xi1.size(); ++p) {
    for (int a = 0; a < k; ++a) {
      sin_a[a] = std::sin(freq[a] * quad.xi1[p]);
      cos_a[a] = std::cos(freq[a] * quad.xi1[p]);
    }
    const double psi = quad.psi[p];
    for (int a = 0; a < k; ++a) {
      for (int b = a; b < k; ++b) {
        // grad(psi u) = u grad psi + psi f cos(f xi1) X0
        const double term = sin_a[a] * sin_a[b] * quad.s_psipsi[p] +
                            (sin_a[a] * freq[b] * cos_a[b] + sin_a[b] * freq[a] * cos_a[a]) * psi * quad.s_psix[p] +
                            freq[a] * freq[b] * psi * psi * cos_a[a] * cos_a[b] * quad.s_xx[p];
        gram(a, b) += term * quad.weight;
      }
    }
  }
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) gram(b, a) = gram(a, b);
  return gram;
}

Eigen::MatrixXd probe_biharmonic_gram(const TorusField& field, const ProbeFamily& family) {
  const PatchQuadrature quad = build_patch(field, family, patch_resolution(family));
  const int k = family.k;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(k, k);
  Eigen::VectorXd lap_w(k), freq(k);
  for (int a = 0; a < k; ++a) freq[a] = static_cast<double>(family.K + 1 + a) * family.patch_freq;
  for (Eigen::Index p = 0; p < quad.xi1.size(); ++p) {
    for (int a = 0; a < k; ++a) {
      const double s = std::sin(freq[a] * quad.xi1[p]);
      const double c = std::cos(freq[a] * quad.xi1[p]);
      // Delta(psi u) with Delta = -sum d^2: u Delta psi - 2 f cos (grad psi . X0) + f^2 psi u
      lap_w[a] = s * quad.lap_psi[p] - 2.0 * freq[a] * c * quad.dpsi_x[p] + freq[a] * freq[a] * quad.psi[p] * s;
    }
    for (int a = 0; a < k; ++a)
      for (int b = a; b < k; ++b) gram(a, b) += lap_w[a] * lap_w[b] * quad.weight;
  }
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) gram(b, a) = gram(a, b);
  return gram;
}

ProbeResult positivity_probe(const TorusField& field, int k) {
  field.validate();
  if (k < 1) throw input_error("positivity_probe: k must be positive");
  const int n = field.dim();
  const int g = field.grid_size;

  // Scan the grid for the most positive direction of S.
  double best = -std::numeric_limits<double>::infinity();
  long best_flat = 0;
  Eigen::VectorXd best_dir;
  for (long flat = 0; flat < field.total_points(); ++flat) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(field.samples[static_cast<std::size_t>(flat)]);
    const double top = es.eigenvalues()[n - 1];
    if (top > best) {
      best = top;
      best_flat = flat;
      best_dir = es.eigenvectors().col(n - 1);
    }
  }
  if (!(best > 0.0))
    throw input_error("positivity_probe: S <= 0 everywhere on the grid (max pointwise eigenvalue " +
                      std::to_string(best) + ")");
  const double delta = best / 2.0;

  ProbeFamily family;
  family.k = k;
  family.center.resize(n);
  const std::vector<int> idx = unflatten(best_flat, n, g);
  for (int a = 0; a < n; ++a)
    family.center[a] = field.periods[static_cast<std::size_t>(a)] * idx[static_cast<std::size_t>(a)] / g;
  family.direction = best_dir;

  // Patch frequency: the support box must fit the torus and keep
  // S(X0, X0) >= delta across it.
  double min_period = field.periods[0];
  for (double p : field.periods) min_period = std::min(min_period, p);
  int big_n = static_cast<int>(std::ceil(4.0 * kPi / min_period));
  for (;; big_n *= 2) {
    if (big_n > (1 << 16)) throw solver_error("positivity_probe: cannot localize a positive patch");
    bool ok = true;
    for (long flat = 0; flat < field.total_points() && ok; ++flat) {
      const std::vector<int> gi = unflatten(flat, n, g);
      bool inside = true;
      for (int a = 0; a < n && inside; ++a) {
        const double xa = field.periods[static_cast<std::size_t>(a)] * gi[static_cast<std::size_t>(a)] / g;
        inside = std::abs(wrap_centered(xa - family.center[a], field.periods[static_cast<std::size_t>(a)])) <=
                 2.0 * kPi / big_n + 1e-12;
      }
      if (inside && best_dir.dot(field.samples[static_cast<std::size_t>(flat)] * best_dir) < delta) ok = false;
    }
    if (ok) break;
  }
  family.patch_freq = big_n;

  for (int big_k = 1; big_k <= (1 << 14); big_k *= 2) {
    family.K = big_k;
    const Eigen::MatrixXd gram = probe_gram(field, family);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues()[0];
    if (min_eig > 0.0) return {family, min_eig};
  }
  throw solver_error("positivity_probe: inconclusive at the K search cap 2^14");
}

}  // namespace omega
