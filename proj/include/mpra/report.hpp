// SPDX-License-Identifier: Apache-2.0
//
// CSV output and the figure-reproduction presets driven by the CLI.

#pragma once

#include "mpra/bounds.hpp"
#include "mpra/harness.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mpra {

inline constexpr const char* kVersion = "1.0.0";

/// Output file could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Empty cell, integer, real (written with 6 significant digits) or text.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct CsvTable {
  std::vector<std::string> metadata;  ///< written as "# " lines before the header
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string format_cell(const Cell& c);

void write_csv(const CsvTable& table, std::ostream& os);

/// Throws IoError when the file cannot be opened or written, InvalidParameter
/// when a row's width differs from the header's.
void emit_csv(const CsvTable& table, const std::string& path);

/// One "key=value ..." line describing every field of a configuration.
std::string describe(const ExperimentConfig& cfg);

/// Columns: N, single_exact, single_upper, single_lower, all_exact,
/// all_upper, all_lower.
CsvTable bounds_csv(int K, int L, int N_max);

/// One row per experiment, carrying the configuration, measured rates with
/// standard errors, NMSE and the matching analytic bounds.
CsvTable experiments_csv(const std::vector<ExperimentConfig>& cfgs, const std::vector<Metrics>& metrics);

std::vector<std::string> preset_names();

/// Flag values that override a preset's built-in grid settings.
struct PresetOverrides {
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<int> M;
  std::optional<double> snr_db;
  std::optional<double> th;
  std::optional<double> prune_th;
  std::optional<int> paths;
  std::optional<double> spacing;
  std::optional<double> angle_spread_deg;
};

/// Expands a named experiment preset to its configuration grid. Throws
/// InvalidParameter for an unknown name; "bounds-only" expands to nothing
/// because it runs no experiments.
std::vector<ExperimentConfig> expand_preset(const std::string& name, const PresetOverrides& over = {});

}  // namespace mpra
