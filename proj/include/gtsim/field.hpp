#pragma once

#include <span>
#include <vector>

#include "gtsim/grid.hpp"

namespace gt {

/// Complex samples of a function on a Grid (physical space, row-major).
class Field {
 public:
  Field() = default;
  explicit Field(Grid grid);
  /// Throws DomainError on a size mismatch or a non-finite entry.
  Field(Grid grid, std::vector<cplx> values);

  const Grid& grid() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  std::span<cplx> mutable_values() { return values_; }
  std::size_t size() const { return values_.size(); }
  const cplx& operator[](std::size_t i) const { return values_[i]; }

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(cplx a);

  bool all_finite() const;

 private:
  Grid grid_;
  std::vector<cplx> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx a, Field f);

}  // namespace gt
