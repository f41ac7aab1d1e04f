#pragma once

#include <stdexcept>
#include <string>

namespace blochprop {

// A vector that must lie on the unit sphere does not.
class norm_violation : public std::domain_error {
public:
  explicit norm_violation(const std::string& what) : std::domain_error(what) {}
};

// A 2x2 matrix that must be a Hermitian traceless qubit matrix is not.
class not_hermitian : public std::domain_error {
public:
  explicit not_hermitian(const std::string& what) : std::domain_error(what) {}
};

// The rotation rates vanish (theta = 0 and phi + psi = 0): no finite period.
class degenerate_rotation : public std::domain_error {
public:
  explicit degenerate_rotation(const std::string& what) : std::domain_error(what) {}
};

class estimation_failure : public std::runtime_error {
public:
  explicit estimation_failure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace blochprop
