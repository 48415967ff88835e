#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcom/sweep.hpp"

namespace mcom {

// Version of the CSV / matrix file layout written below.
inline constexpr int kFormatVersion = 1;

enum OutputFormat : unsigned {
  kCsv = 1u << 0,
  kMatrix = 1u << 1,
};

std::optional<unsigned> parse_formats(std::string_view comma_list);

// Columns of the per-cell CSV, in order.
inline constexpr std::string_view kCsvHeader =
    "axis1,axis2,bipartition,stable,E_n,steer_12,steer_21,discord_12,"
    "discord_21,nu_minus_pt,residual";

/// Shortest round-trippable decimal form (17 significant digits).
std::string format_double(double x);

/// "# "-prefixed lines recording the preset, resolved parameters, axes,
/// tolerances and code version.
std::string provenance_header(const SweepResult& r);

/// One row per (cell, bipartition). Measures outside the requested set and
/// every measure of unstable or failed cells are left empty.
void write_csv(const SweepResult& r, std::ostream& out);

struct CsvRow {
  double axis1 = 0.0;
  std::optional<double> axis2;
  std::string bipartition;
  bool stable = false;
  std::optional<double> e_n, steer_12, steer_21, discord_12, discord_21,
      nu_minus_pt, residual;
};

/// Parses what write_csv produced, skipping comment lines. Throws
/// ConfigParse on malformed input.
std::vector<CsvRow> read_csv(std::istream& in);

// Per-cell scalar fields that can be written as heatmap matrices.
enum class Field { EN, Steer12, Steer21, Discord12, Discord21, NuMinusPT };

std::string_view to_string(Field f);
std::vector<Field> fields_for(unsigned measures);
std::optional<double> field_value(const CorrelationReport& r, Field f);

/// rows x cols whitespace-separated matrix; unstable or failed cells are
/// written as nan.
void write_matrix(const SweepResult& r, std::size_t bipartition_slot, Field f,
                  std::ostream& out);

/// File stem, e.g. "fig2a_E_ca" for presets or the sweep name otherwise.
std::string output_stem(const SweepResult& r);

/// Writes the requested formats into `dir` (created if missing) and returns
/// the files written. Throws Io.
std::vector<std::filesystem::path> write_outputs(const SweepResult& r,
                                                 const std::filesystem::path& dir,
                                                 unsigned formats);

struct SweepStats {
  std::size_t cells = 0;
  std::size_t stable = 0;
  std::size_t failed = 0;  // numerical or domain errors recorded in cells
};

SweepStats sweep_stats(const SweepResult& r);

/// Per-bipartition summary: stable fraction and min/max of each requested
/// measure.
std::string summarize(const SweepResult& r);

}  // namespace mcom
