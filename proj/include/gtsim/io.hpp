#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtsim/diagnostics.hpp"
#include "gtsim/evolution.hpp"
#include "gtsim/experiments.hpp"
#include "gtsim/field.hpp"
#include "gtsim/nonlinearity.hpp"

namespace gt {

struct GridSpec {
  int d = 1;
  std::vector<std::size_t> n{256};  ///< one entry (all axes) or d entries
  std::vector<double> L{96.0};
  Grid make() const;
};

/// Initial data selector for `simulate`, `picard`, `norms` and `virial-check`.
struct InitialSpec {
  std::string kind = "gaussian";  ///< gaussian | plane-wave | box | annulus | snapshot
  double A = 0.5;
  double sigma = 2.0;
  std::vector<long> modes{1};  ///< plane-wave mode vector
  double N = 0.0;              ///< box / annulus frequency
  double delta = 0.2;
  double s = -2.5;
  double T = 1.0;              ///< annulus pre-propagation horizon
  std::string path;            ///< snapshot file

  Field build(const Grid& grid) const;
};

struct PicardSpec {
  int J = 4;
  std::size_t Q = 16;
  double T = 0.1;
  std::optional<double> norm_s;
};

struct Xi1Spec {
  long n_mode = 64;  ///< N / dxi
  double dxi = 16.0;
  double delta = 0.2;
  double s = -2.5;
  double t_frac = 0.1;  ///< t N^2
};

struct RunConfig {
  GTConfig equation;
  GridSpec grid;
  SolverParams solver;
  InitialSpec initial;
  PicardSpec picard;
  Xi1Spec xi1;
  InflationNegSpec inflate_neg;
  AnalyticIPSpec ipscale;
  EquipartitionSpec equipartition;
  InflationEnergySpec inflate_energy;
  SymmetrySpec symmetry;
  std::string output_dir = "out";
  std::uint64_t seed = 0;

  /// Throws ConfigError naming the violated invariant.
  void validate() const;
};

/// Parses TOML text; `overrides` are dotted `key=value` pairs (TOML values)
/// applied before validation. Unknown keys are rejected with their line.
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {},
                       const std::string& source = "<string>");
RunConfig load_config(const std::filesystem::path& path,
                      const std::vector<std::string>& overrides = {});
/// Canonical TOML; parse_config(to_toml(c)) reproduces c.
std::string to_toml(const RunConfig& cfg);

// ---- snapshots ------------------------------------------------------------------

struct Snapshot {
  Field field;
  double t = 0.0;
  double gamma = 0.0;
  int p = 0;
};

/// Binary "GTS1" snapshot, little-endian.
void write_snapshot(const Field& u, double t, const std::filesystem::path& path, double gamma = 0.0,
                    int p = 0);
/// Throws FormatError on a bad magic/version or a truncated file, and when
/// `expected` is given, on a grid mismatch.
Snapshot read_snapshot(const std::filesystem::path& path, const std::optional<Grid>& expected = {});

// ---- records and reports -------------------------------------------------------

/// Shortest round-trip decimal form.
std::string format_double(double v);

std::vector<std::string> record_columns(const std::vector<double>& s_list);
void write_records(const std::vector<DiagnosticsRecord>& records, const std::filesystem::path& path,
                   const std::vector<double>& s_list = {});
/// Reads the numeric columns back (header row excluded).
std::vector<std::vector<double>> read_records(const std::filesystem::path& path,
                                              std::vector<std::string>* header = nullptr);

/// Appends one compact JSON object per line.
void append_jsonl(const json& j, const std::filesystem::path& path);

}  // namespace gt
