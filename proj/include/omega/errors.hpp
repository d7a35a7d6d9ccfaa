#pragma once

#include <stdexcept>
#include <string>

namespace omega {

/// Invalid arguments or data that violates a documented precondition.
class input_error : public std::invalid_argument {
 public:
  explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A truncated spectrum is too short to certify the requested answer.
class insufficient_spectrum_error : public std::runtime_error {
 public:
  explicit insufficient_spectrum_error(const std::string& what) : std::runtime_error(what) {}
};

/// Mesh ingestion or validation failure; the message names the offending simplex.
class mesh_error : public std::runtime_error {
 public:
  explicit mesh_error(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative solver failed to meet its residual contract.
class solver_error : public std::runtime_error {
 public:
  explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace omega
