#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "mcom/io.hpp"
#include "mcom/sweep.hpp"

namespace mcom {

// Version accepted in the [run] section's `format_version` key.
inline constexpr int kConfigVersion = 1;

enum class RunMode { Preset, Custom };

struct RunConfig {
  RunMode mode = RunMode::Preset;
  std::optional<std::string> preset_name;  // set iff mode == Preset
  SweepSpec spec;                          // fully resolved sweep
  std::filesystem::path output_path = "results";
  unsigned output_formats = kCsv | kMatrix;
  unsigned workers = 1;

  void validate() const;  // throws ConfigParse
};

/// Reads an INI-style run file. Throws ConfigParse (or Io when the file
/// cannot be opened).
RunConfig load_config(const std::filesystem::path& file);
RunConfig parse_config(std::istream& in, std::string_view source = "<input>");

RunConfig preset_config(std::string_view preset_name);

/// Parses "101x51" (or "101" for one-dimensional sweeps).
std::optional<std::pair<std::size_t, std::size_t>> parse_grid(std::string_view s);

/// Worker count from MCOM_WORKERS, else the hardware concurrency, else 1.
unsigned default_workers();

/// Every preset with its resolved parameters. `machine` switches to
/// "key=value" lines, one block per preset separated by blank lines.
std::string preset_listing(bool machine);

}  // namespace mcom
