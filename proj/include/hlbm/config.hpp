// Flat sectioned key-value run configuration: parsing with full error
// reporting (every problem, with line numbers), canonical lossless
// serialization, and run provenance.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hlbm/lattice.hpp"

namespace hlbm::config {

inline constexpr const char* kToolVersion = "hlbm 0.1.0";

struct Issue {
  int line;  // 0 when not tied to a specific line
  std::string message;
};

struct OutputOptions {
  std::string prefix = "run";
  std::string out_dir = ".";
  bool csv = true;
  bool vtk = false;
};

struct Provenance {
  std::string tool_version;
  std::string timestamp;      // informational; never written to output files
  std::string original_text;
};

struct ResolvedConfig {
  lattice::SimulationConfig sim;
  std::string walls = "none";  // none | x | y | xy
  double disk_cx = 0.5;
  double disk_cy = 0.5;
  double disk_diameter = 0.0;  // fraction of the domain; 0 disables
  OutputOptions output;
  Provenance provenance;

  // Canonical text form; parse(serialize(*this)) resolves to the same config.
  std::string serialize() const;
};

struct ParseResult {
  std::optional<ResolvedConfig> config;
  std::vector<Issue> errors;
  bool ok() const { return errors.empty() && config.has_value(); }
  std::string error_text() const;
};

// Parse a config text; `overrides` are section.key=value pairs applied on
// top of the file content before validation (CLI --set).
ParseResult parse_config(const std::string& text, const std::vector<std::string>& overrides = {});
ParseResult parse_config_file(const std::string& path, const std::vector<std::string>& overrides = {});

// Centered-disk obstacle mask in domain-fraction coordinates.
std::vector<std::uint8_t> disk_mask(int nx, int ny, double cx, double cy, double diameter);

std::string format_g17(double v);

}  // namespace hlbm::config
