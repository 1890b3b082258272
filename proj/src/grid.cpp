#include "gtsim/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gtsim/errors.hpp"

namespace gt {

struct Grid::Tables {
  std::vector<double> xi2;
  std::array<std::vector<double>, kMaxDim> xi;
  std::array<std::vector<double>, kMaxDim> x;
  std::array<std::vector<long>, kMaxDim> mode;
};

namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

long signed_mode(std::size_t i, std::size_t n) {
  const auto half = static_cast<long>(n / 2);
  const auto k = static_cast<long>(i);
  return k < half ? k : k - static_cast<long>(n);
}

}  // namespace

Grid::Grid() { *this = Grid::line(8, 2.0 * std::numbers::pi); }

Grid Grid::make(int d, std::span<const std::size_t> n, std::span<const double> L) {
  if (d < 1 || d > kMaxDim) {
    throw ConfigError("grid dimension must be 1, 2 or 3");
  }
  if (n.size() != static_cast<std::size_t>(d) || L.size() != static_cast<std::size_t>(d)) {
    throw ConfigError("grid: expected one size and one period per axis");
  }
  Grid g{Raw{}};
  g.d_ = d;
  g.n_ = {1, 1, 1};
  g.L_ = {1.0, 1.0, 1.0};
  g.total_ = 1;
  for (int a = 0; a < d; ++a) {
    if (n[a] < 8 || !is_power_of_two(n[a])) {
      std::ostringstream os;
      os << "grid: n[" << a << "] = " << n[a] << " must be a power of two >= 8";
      throw ConfigError(os.str());
    }
    if (!(L[a] > 0.0) || !std::isfinite(L[a])) {
      std::ostringstream os;
      os << "grid: L[" << a << "] = " << L[a] << " must be positive";
      throw ConfigError(os.str());
    }
    g.n_[a] = n[a];
    g.L_[a] = L[a];
    g.total_ *= n[a];
  }

  auto t = std::make_shared<Tables>();
  t->xi2.assign(g.total_, 0.0);
  for (int a = 0; a < d; ++a) {
    t->xi[a].resize(g.total_);
    t->x[a].resize(g.total_);
    t->mode[a].resize(g.total_);
  }
  // stride of each axis in the flat row-major index
  std::array<std::size_t, kMaxDim> stride{1, 1, 1};
  for (int a = d - 2; a >= 0; --a) stride[a] = stride[a + 1] * g.n_[a + 1];
  for (std::size_t idx = 0; idx < g.total_; ++idx) {
    double sum = 0.0;
    for (int a = 0; a < d; ++a) {
      const std::size_t i = (idx / stride[a]) % g.n_[a];
      const long k = signed_mode(i, g.n_[a]);
      const double xi = 2.0 * std::numbers::pi * static_cast<double>(k) / g.L_[a];
      t->mode[a][idx] = k;
      t->xi[a][idx] = xi;
      t->x[a][idx] = -0.5 * g.L_[a] + static_cast<double>(i) * g.dx(a);
      sum += xi * xi;
    }
    t->xi2[idx] = sum;
  }
  g.tables_ = std::move(t);
  return g;
}

Grid Grid::line(std::size_t n, double L) {
  const std::array<std::size_t, 1> ns{n};
  const std::array<double, 1> Ls{L};
  return make(1, ns, Ls);
}

double Grid::dxi(int axis) const { return 2.0 * std::numbers::pi / L_[axis]; }

double Grid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < d_; ++a) v *= dx(a);
  return v;
}

double Grid::dual_cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < d_; ++a) v *= dxi(a);
  return v;
}

double Grid::xi_max_sq() const {
  double s = 0.0;
  for (int a = 0; a < d_; ++a) {
    const double k = std::numbers::pi * static_cast<double>(n_[a]) / L_[a];
    s += k * k;
  }
  return s;
}

double Grid::xi_max() const { return std::sqrt(xi_max_sq()); }

std::vector<double> Grid::coordinates(int axis) const {
  std::vector<double> x(n_[axis]);
  for (std::size_t i = 0; i < n_[axis]; ++i) x[i] = -0.5 * L_[axis] + static_cast<double>(i) * dx(axis);
  return x;
}

std::vector<double> Grid::wavenumbers(int axis) const {
  std::vector<double> k(n_[axis]);
  for (std::size_t i = 0; i < n_[axis]; ++i) {
    k[i] = dxi(axis) * static_cast<double>(signed_mode(i, n_[axis]));
  }
  return k;
}

std::vector<double> Grid::lattice(int axis) const {
  auto k = wavenumbers(axis);
  std::sort(k.begin(), k.end());
  return k;
}

std::span<const double> Grid::xi_squared() const { return tables_->xi2; }
std::span<const double> Grid::xi_component(int axis) const { return tables_->xi[axis]; }
std::span<const double> Grid::x_component(int axis) const { return tables_->x[axis]; }
std::span<const long> Grid::mode_component(int axis) const { return tables_->mode[axis]; }

bool Grid::operator==(const Grid& other) const {
  if (d_ != other.d_) return false;
  for (int a = 0; a < d_; ++a) {
    if (n_[a] != other.n_[a] || L_[a] != other.L_[a]) return false;
  }
  return true;
}

}  // namespace gt
