#pragma once

#include <stdexcept>
#include <string>

namespace gt {

/// Invalid parameters, grids, or configuration files.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A quantity is mathematically undefined for the given operand
/// (e.g. a divergent homogeneous Sobolev weight).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or incompatible snapshot/record files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gt
