#pragma once

#include <algorithm>
#include <numbers>
#include <vector>

#include "gtsim/field.hpp"
#include "gtsim/initial_data.hpp"
#include "gtsim/nonlinearity.hpp"
#include "gtsim/picard.hpp"
#include "gtsim/spectral.hpp"

namespace gt {

/// Continuous-spectrum samples of a 1D function on the lattice window
/// [kmin, kmin + size) (xi_k = k dxi) with a structural support mask.
struct LatticeSpectrum {
  double dxi = 1.0;
  long kmin = 0;
  std::vector<cplx> values;
  std::vector<unsigned char> support;

  long kmax() const { return kmin + static_cast<long>(values.size()) - 1; }
  cplx at(long k) const;
  /// (sum_k w(xi_k)^{2s} |f(xi_k)|^2 dxi)^{1/2}; the homogeneous form skips k = 0.
  double norm(SobolevIndex idx) const;
  /// Smallest |f(xi_k)| over |xi_k| <= radius.
  double min_abs(double radius) const;

  /// Drops entries with |f| <= rel * max |f| from the support (and zeroes them).
  void prune(double rel);

  static LatticeSpectrum zeros(double dxi, long kmin, long kmax);
  static LatticeSpectrum from_field(const Field& u);
  /// Embeds into a grid with matching dxi; throws ConfigError if it does not fit.
  std::vector<cplx> on_grid(const Grid& grid) const;
};

/// The two-box spectrum R (1_[N, N+A) + 1_[2N, 2N+A)) snapped as freq_box_data.
LatticeSpectrum box_spectrum(const InflationParams& params, double dxi);

/// (1 - e^{-i tau x}) / (i x), Taylor form for |tau x| < 1e-4.
cplx resonance_factor(double tau, double x);

/// Cubic (p = 2, d = 1) trilinear lattice kernel with an exact sigma integral.
class CubicLatticeKernel {
 public:
  CubicLatticeKernel(double dxi, const GTConfig& cfg);
  /// sum over the sigma measure of e^{i sigma Phi}.
  cplx sigma_weight(double phi) const;
  /// out(k) += (2 pi)^{-1} dxi^2 sum_{k1-k2+k3=k} F(m) a(k1) conj(b(k2)) c(k3),
  /// with Phi = 2 dxi^2 m, m = (k1-k2)(k3-k2), table[m - mmin] = F(m).
  template <class TableFn>
  void accumulate(const LatticeSpectrum& a, const LatticeSpectrum& b, const LatticeSpectrum& c,
                  TableFn table_fn, LatticeSpectrum& out) const;
  double dxi() const { return dxi_; }
  const GTConfig& config() const { return cfg_; }

 private:
  double dxi_;
  GTConfig cfg_;
};

/// Output window of the trilinear product a conj(b) c.
LatticeSpectrum product_window(const LatticeSpectrum& a, const LatticeSpectrum& b,
                               const LatticeSpectrum& c);

/// Exact-in-time first Picard iterate on box data, physical picture.
LatticeSpectrum xi1_closed_form(const LatticeSpectrum& phi, double t, const GTConfig& cfg);
/// Same on a grid: continuous spectrum samples in FFT order.
std::vector<cplx> xi1_closed_form(const InflationParams& params, double t, const Grid& grid,
                                  const GTConfig& cfg);

/// Picard iterates of box data on Chebyshev nodes with the exact sigma
/// integral; terms are stored in the interaction picture e^{i gamma t xi^2}.
struct LatticeSeries {
  LatticeSpectrum phi;
  GTConfig cfg;
  TimeNodes nodes;
  int J = 0;
  std::vector<std::vector<LatticeSpectrum>> interaction;  ///< [j][q]

  /// Xi_j(t) in the physical picture.
  LatticeSpectrum term(int j, double t) const;
};

LatticeSeries lattice_xi_series(const LatticeSpectrum& phi, double T, int J, std::size_t Q,
                                const GTConfig& cfg);

struct TermBoundRow {
  int j = 0;
  double norm = 0.0;      ///< ||Xi_j(t)||_{H^s}
  double envelope = 0.0;  ///< t^j R^{2j+1} (log A)^{2j}
  double C = 0.0;         ///< (norm / envelope)^{1/j}
};

struct TermBoundReport {
  double t = 0.0;
  double s = 0.0;
  std::vector<TermBoundRow> rows;  ///< j = 0..J
  double C_fit = 0.0;              ///< from the j = 1 row
  double C_spread = 0.0;           ///< max C_j / min C_j over j >= 1
  bool envelope_holds = false;     ///< norm_j <= (3 C_fit)^j envelope_j for j >= 2
  double higher_over_first = 0.0;  ///< (||Xi_2|| + ||Xi_3||) / ||Xi_1||
  bool dominance = false;          ///< higher_over_first <= 0.5
};

TermBoundReport series_term_bound_check(const LatticeSeries& series, const InflationParams& params,
                                        double A_eff, double s, double t);

// ---- implementation ---------------------------------------------------------

template <class TableFn>
void CubicLatticeKernel::accumulate(const LatticeSpectrum& a, const LatticeSpectrum& b,
                                    const LatticeSpectrum& c, TableFn table_fn,
                                    LatticeSpectrum& out) const {
  std::vector<long> sa, sb, sc;
  for (std::size_t i = 0; i < a.values.size(); ++i) if (a.support[i]) sa.push_back(a.kmin + static_cast<long>(i));
  for (std::size_t i = 0; i < b.values.size(); ++i) if (b.support[i]) sb.push_back(b.kmin + static_cast<long>(i));
  for (std::size_t i = 0; i < c.values.size(); ++i) if (c.support[i]) sc.push_back(c.kmin + static_cast<long>(i));
  if (sa.empty() || sb.empty() || sc.empty()) return;
  const long dlo = sa.front() - sb.back(), dhi = sa.back() - sb.front();
  const long elo = sc.front() - sb.back(), ehi = sc.back() - sb.front();
  const long corners[] = {dlo * elo, dlo * ehi, dhi * elo, dhi * ehi};
  const long mmin = std::min({corners[0], corners[1], corners[2], corners[3], 0L});
  const long mmax = std::max({corners[0], corners[1], corners[2], corners[3], 0L});
  std::vector<cplx> table(static_cast<std::size_t>(mmax - mmin + 1));
  for (long m = mmin; m <= mmax; ++m) table[static_cast<std::size_t>(m - mmin)] = table_fn(m);
  const double pref = dxi_ * dxi_ / (2.0 * std::numbers::pi);
  std::vector<cplx> cv(sc.size());
  for (std::size_t i = 0; i < sc.size(); ++i) cv[i] = c.values[static_cast<std::size_t>(sc[i] - c.kmin)];
  for (long k1 : sa) {
    const cplx av = a.values[static_cast<std::size_t>(k1 - a.kmin)];
    for (long k2 : sb) {
      const long d = k1 - k2;
      const cplx base = pref * av * std::conj(b.values[static_cast<std::size_t>(k2 - b.kmin)]);
      const long shift = d - out.kmin;
      for (std::size_t i = 0; i < sc.size(); ++i) {
        const long k3 = sc[i];
        const long m = d * (k3 - k2);
        const auto at = static_cast<std::size_t>(shift + k3);
        out.values[at] += table[static_cast<std::size_t>(m - mmin)] * base * cv[i];
        out.support[at] = 1;
      }
    }
  }
}

}  // namespace gt
