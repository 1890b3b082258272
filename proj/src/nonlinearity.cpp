#include "gtsim/nonlinearity.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "gtsim/errors.hpp"
#include "gtsim/fft.hpp"
#include "gtsim/spectral.hpp"

namespace gt {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::AveragedUnit: return "averaged-unit";
    case Variant::IntegratedInterval: return "integrated-interval";
    case Variant::AveragedInterval: return "averaged-interval";
  }
  return "?";
}

Variant variant_from_string(const std::string& name) {
  if (name == "averaged-unit") return Variant::AveragedUnit;
  if (name == "integrated-interval") return Variant::IntegratedInterval;
  if (name == "averaged-interval") return Variant::AveragedInterval;
  throw ConfigError("unknown nonlinearity variant '" + name +
                    "' (expected averaged-unit, integrated-interval or averaged-interval)");
}

void GTConfig::validate() const {
  if (d < 1 || d > kMaxDim) throw ConfigError("d must be 1, 2 or 3");
  if (p < 2 || p % 2 != 0) throw ConfigError("p must be even >= 2");
  if (!(gamma != 0.0) || !std::isfinite(gamma)) {
    throw ConfigError("gamma must be a finite nonzero net dispersion");
  }
  if (variant != Variant::AveragedUnit && !(upper > 0.0 && std::isfinite(upper))) {
    throw ConfigError("sigma interval endpoint must be positive");
  }
  if (points_per_panel < 1) throw ConfigError("points_per_panel must be >= 1");
  if (sigma_quad) {
    sigma_quad->validate();
    if (std::abs(sigma_quad->upper - sigma_upper()) > 1e-12 * std::max(1.0, sigma_upper())) {
      throw ConfigError("sigma quadrature endpoint does not match the variant's interval");
    }
  }
}

double GTConfig::measure_mass() const {
  return variant == Variant::IntegratedInterval ? upper : 1.0;
}

SigmaQuadrature GTConfig::quadrature_for(const Grid& grid) const {
  const double xi2 = grid.xi_max_sq();
  if (sigma_quad) {
    if (!sigma_quad->user_table && sigma_quad->resolved_xi_max_sq < xi2 * (1.0 - 1e-12)) {
      std::ostringstream os;
      os << "sigma quadrature under-resolves the grid bandwidth: " << sigma_quad->size()
         << " nodes given, "
         << SigmaQuadrature::required_nodes(sigma_upper(), xi2,
                                            std::max<std::size_t>(sigma_quad->points_per_panel, 1))
         << " required";
      throw ConfigError(os.str());
    }
    return *sigma_quad;
  }
  return SigmaQuadrature::for_bandwidth(sigma_upper(), xi2, measure_mass(), points_per_panel);
}

std::size_t worker_count() {
  if (const char* env = std::getenv("GTSIM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  return 1;
}

void run_chunks(std::size_t chunks, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(worker_count(), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = w; c < chunks; c += workers) body(c);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

SigmaEvaluator::SigmaEvaluator(const Grid& grid, const GTConfig& cfg) : grid_(grid), cfg_(cfg) {
  cfg_.validate();
  if (cfg_.d != grid.dim()) throw ConfigError("configuration dimension does not match the grid");
  quad_ = cfg_.quadrature_for(grid);
  pad_ = static_cast<std::size_t>((cfg_.p + 2) / 2);
  const int d = grid.dim();
  padded_total_ = 1;
  for (int a = 0; a < d; ++a) {
    padded_shape_[a] = grid.n(a) * pad_;
    padded_total_ *= padded_shape_[a];
  }
  padded_cell_volume_ = grid.cell_volume() / std::pow(static_cast<double>(pad_), d);
  pad_index_.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::size_t flat = 0;
    for (int a = 0; a < d; ++a) {
      const long k = grid.mode_component(a)[i];
      const long np = static_cast<long>(padded_shape_[a]);
      flat = flat * padded_shape_[a] + static_cast<std::size_t>((k % np + np) % np);
    }
    pad_index_[i] = flat;
  }
  constexpr std::size_t kPhaseCacheBytes = std::size_t{1} << 27;
  if (quad_.size() * grid.size() * sizeof(cplx) <= kPhaseCacheBytes) {
    const auto xi2 = grid.xi_squared();
    phases_.resize(quad_.size() * grid.size());
    for (std::size_t m = 0; m < quad_.size(); ++m) {
      for (std::size_t i = 0; i < grid.size(); ++i) {
        phases_[m * grid.size() + i] = std::polar(1.0, -quad_.nodes[m] * xi2[i]);
      }
    }
  }
}

const cplx* SigmaEvaluator::phase_row(double sigma) const {
  if (phases_.empty()) return nullptr;
  // nodes are strictly increasing
  const auto it = std::lower_bound(quad_.nodes.begin(), quad_.nodes.end(), sigma);
  if (it == quad_.nodes.end() || *it != sigma) return nullptr;
  return phases_.data() + static_cast<std::size_t>(it - quad_.nodes.begin()) * grid_.size();
}

void SigmaEvaluator::to_padded_physical(std::span<const cplx> coeffs, double sigma,
                                        std::span<cplx> padded) const {
  std::fill(padded.begin(), padded.end(), cplx{});
  const auto xi2 = grid_.xi_squared();
  if (const cplx* row = phase_row(sigma)) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) padded[pad_index_[i]] = coeffs[i] * row[i];
  } else {
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      padded[pad_index_[i]] = sigma == 0.0 ? coeffs[i] : coeffs[i] * std::polar(1.0, -sigma * xi2[i]);
    }
  }
  fft::backward(padded, padded_shape());
}

void SigmaEvaluator::accumulate_from_padded(std::span<cplx> padded, double sigma, cplx weight,
                                            std::span<cplx> out) const {
  fft::forward(padded, padded_shape());
  const auto xi2 = grid_.xi_squared();
  const cplx scale = weight / static_cast<double>(padded_total_);
  if (const cplx* row = phase_row(sigma)) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * std::conj(row[i]) * padded[pad_index_[i]];
    return;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const cplx ph = sigma == 0.0 ? cplx{1.0, 0.0} : std::polar(1.0, sigma * xi2[i]);
    out[i] += scale * ph * padded[pad_index_[i]];
  }
}

namespace {

inline double int_pow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

void SigmaEvaluator::nonlinearity(std::span<const cplx> coeffs, std::span<cplx> out) const {
  const std::size_t n = coeffs.size();
  const int half = cfg_.p / 2;
  for_each_node(
      std::vector<cplx>(n, cplx{}),
      [&](std::size_t m, std::vector<cplx>& buf, std::vector<cplx>& acc) {
        const double sigma = quad_.nodes[m];
        to_padded_physical(coeffs, sigma, buf);
        for (auto& v : buf) v *= int_pow(std::norm(v), half);
        accumulate_from_padded(buf, sigma, quad_.weights[m], acc);
      },
      [&](const std::vector<cplx>& acc) {
        for (std::size_t i = 0; i < n; ++i) out[i] += acc[i];
      });
}

SigmaEvaluator::PowerIntegrals SigmaEvaluator::power_integrals(std::span<const cplx> coeffs) const {
  const int half = (cfg_.p + 2) / 2;
  PowerIntegrals total;
  for_each_node(
      PowerIntegrals{},
      [&](std::size_t m, std::vector<cplx>& buf, PowerIntegrals& acc) {
        const double sigma = quad_.nodes[m];
        to_padded_physical(coeffs, sigma, buf);
        double s = 0.0;
        for (const auto& v : buf) s += int_pow(std::norm(v), half);
        s *= padded_cell_volume_;
        acc.plain += quad_.weights[m] * s;
        acc.weighted += quad_.weights[m] * sigma * s;
      },
      [&](const PowerIntegrals& acc) {
        total.plain += acc.plain;
        total.weighted += acc.weighted;
      });
  return total;
}

double SigmaEvaluator::endpoint_power_integral(std::span<const cplx> coeffs, double sigma) const {
  std::vector<cplx> buf(padded_total_);
  to_padded_physical(coeffs, sigma, buf);
  const int half = (cfg_.p + 2) / 2;
  double s = 0.0;
  for (const auto& v : buf) s += int_pow(std::norm(v), half);
  return s * padded_cell_volume_;
}

Field gt_nonlinearity(const Field& u, const GTConfig& cfg) {
  SigmaEvaluator ev(u.grid(), cfg);
  const auto c = fourier_coefficients(u);
  std::vector<cplx> out(c.size());
  ev.nonlinearity(c, out);
  return from_fourier_coefficients(u.grid(), std::move(out));
}

double potential_energy(const Field& u, const GTConfig& cfg) {
  SigmaEvaluator ev(u.grid(), cfg);
  return ev.power_integrals(fourier_coefficients(u)).plain / (cfg.p + 2);
}

double gradient_energy(const Field& u) {
  const double h = sobolev_norm(u, {1.0, true});
  return h * h;
}

double energy(const Field& u, const GTConfig& cfg) {
  return -0.5 * cfg.gamma * gradient_energy(u) + potential_energy(u, cfg);
}

}  // namespace gt
