#include "gtsim/field.hpp"

#include <cmath>

#include "gtsim/errors.hpp"

namespace gt {

Field::Field(Grid grid) : grid_(std::move(grid)), values_(grid_.size(), cplx{}) {}

Field::Field(Grid grid, std::vector<cplx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw DomainError("field: sample count does not match the grid");
  }
  if (!all_finite()) throw DomainError("field: non-finite sample");
}

bool Field::all_finite() const {
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

Field& Field::operator+=(const Field& other) {
  if (!(grid_ == other.grid_)) throw DomainError("field: grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  if (!(grid_ == other.grid_)) throw DomainError("field: grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(cplx a) {
  for (auto& v : values_) v *= a;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cplx a, Field f) { return f *= a; }

}  // namespace gt
