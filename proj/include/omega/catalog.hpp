#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omega/forms.hpp"

namespace omega {

/// Closed Einstein manifold (Ric = a g) described by its Laplacian spectrum.
/// The spectrum lists distinct eigenvalues ascending with multiplicities and
/// always contains the zero eigenvalue of constants with multiplicity one.
struct EinsteinFactor {
  double einstein_const = 0.0;
  int dim = 0;
  std::vector<std::pair<double, long long>> spectrum;
  bool complete = false;  // true when the listed spectrum is the whole spectrum

  void validate() const;
  double max_listed_eigenvalue() const { return spectrum.empty() ? 0.0 : spectrum.back().first; }
};

/// Left-invariant metric on a compact Heisenberg quotient, in the normal form
/// with h-orthonormal horizontal frame constants d_1..d_n and vertical
/// coefficient g_{2n+1}. The uniform subgroup only affects multiplicities,
/// never the values computed here.
struct HeisenbergMetric {
  int n = 1;
  std::vector<double> d;
  double g_last = 1.0;

  void validate() const;
  // Power sums of the frame constants: p = sum d_i^2, q = sum d_i^4, r = sum d_i^6.
  double p() const;
  double q() const;
  double r() const;
};

/// One spectral value with its multiplicity (absent when the catalog entry
/// leaves it unresolved) and a description of the producing index.
struct OmegaValue {
  double value = 0.0;
  std::optional<long long> multiplicity;
  std::string witness;
};

/// Round sphere S^n(radius): eigenvalues k(k+n-1)/radius^2 with the classical
/// harmonic multiplicities, for k = 0..max_level. einstein_const = (n-1)/radius^2.
EinsteinFactor sphere_spectrum(int n, double radius, int max_level);

/// Flat torus with the given periods: eigenvalues sum_j (2 pi m_j / period_j)^2
/// over integer vectors with value <= max_norm, with lattice multiplicities.
EinsteinFactor torus_spectrum(const std::vector<double>& periods, double max_norm);

/// The one-point factor (complete spectrum {0}); products with it reduce to a
/// single manifold.
EinsteinFactor point_factor();

/// The `top` largest values of {(a1 l + a2 m)/(l + m)^2 : (l,m) != (0,0), > 0}
/// over the factor spectra, with multiplicities, sorted descending. Refuses to
/// answer when the truncated spectra cannot certify the prefix.
std::vector<OmegaValue> product_omega(const EinsteinFactor& f1, const EinsteinFactor& f2, int top);

/// Single-factor values a/lambda_k (empty when a <= 0, where every value is zero).
std::vector<OmegaValue> einstein_omega(const EinsteinFactor& f, int top);

/// Values 1/lambda_k descending with multiplicities (the S = g case).
std::vector<OmegaValue> catalog_lambda_of_g(const EinsteinFactor& f, int top);

/// The closed-form value Omega(c, k, g) for one lattice representation index.
double heisenberg_omega_ck(const HeisenbergMetric& metric, long long c, const std::vector<long long>& k);

/// Real maximizer x* of the profile F(x) whose integer points are Omega(c,0,g).
double heisenberg_critical_c(const HeisenbergMetric& metric);

/// sup over integer c > 0 of Omega(c, 0, g); 0 when no positive value exists.
double heisenberg_omega1(const HeisenbergMetric& metric);

/// sup over left-invariant metrics of Omega_1 for the Heisenberg quotient of
/// dimension 2n+1, from the closed forms.
double heisenberg_sup(int n);

/// Omega_1 of U(n) with the bi-invariant metric G_r.
double unitary_omega1(int n, double r);

/// Analytic Galerkin assemblies for cross-validation with solve_lambda.
/// Constants are dropped; `count` is the number of basis functions counted
/// with multiplicity.
FormPair lambda_g_forms(const EinsteinFactor& f, int count);   // S = g
FormPair einstein_forms(const EinsteinFactor& f, int count);   // S = Ric = a g

/// Tensor-sum assembly on the product eigenbasis {psi_i psi'_k} with
/// lambda_i + lambda'_k <= lambda_sum_cap, (i,k) != (0,0).
FormPair product_einstein_forms(const EinsteinFactor& f1, const EinsteinFactor& f2, double lambda_sum_cap);

}  // namespace omega
