#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "omega/catalog.hpp"
#include "omega/forms.hpp"

namespace omega {

struct VerifyFailure {
  std::string inputs;
  std::string relation;
  double expected = 0.0;
  double observed = 0.0;
};

struct VerifyReport {
  std::string suite;
  int cases = 0;
  std::vector<VerifyFailure> failures;
  std::map<std::string, double> tolerances;
  std::string skipped_reason;  // nonempty when preconditions rule the suite out
  double wall_ms = 0.0;        // excluded from the stable payload

  bool pass() const { return failures.empty(); }
};

/// Per-suite tolerances, kept in one block rather than scattered literals.
struct VerifyTolerances {
  double minmax_bound = 1e-10;
  double minmax_witness = 1e-9;
  double monotone = 1e-10;
  double product_law = 1e-10;
  double orthogonality = 1e-9;
  double decay_bound = 1e-10;
  double lichnerowicz_analytic = 1e-12;
  double lichnerowicz_mesh = 0.02;
};

/// Sampled subspace minima stay below Lambda_j, with equality witnessed on
/// the span of the first j associated vectors.
VerifyReport check_minmax(const FormPair& forms, int j, int samples, std::uint64_t seed);

/// Lambda_k(A + increment) >= Lambda_k(A) on both signed sides, for a
/// positive semidefinite increment.
VerifyReport check_monotone(const FormPair& base, const Eigen::MatrixXd& psd_increment, std::uint64_t seed);

/// Top value of the tensor-assembled product equals the larger factor top value.
VerifyReport check_product_law(const FormPair& f1, const FormPair& f2);

/// lambda_1 >= r / Omega_1 >= dim/(dim-1) r for a certified lower Ricci bound.
VerifyReport check_lichnerowicz(const EinsteinFactor& factor);
VerifyReport check_lichnerowicz_values(double lambda1, double ricci_lower, double omega1, int dim,
                                       double tolerance, const std::string& label);

/// Named randomized suites behind the CLI: minmax | monotone | product-law |
/// orthogonality | decay-bound | lichnerowicz.
VerifyReport run_suite(const std::string& name, int cases, std::uint64_t seed);

std::vector<std::string> suite_names();

}  // namespace omega
