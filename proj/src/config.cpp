#include "hlbm/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace hlbm::config {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};
using KeyMap = std::map<std::string, Entry>;  // "section.key" -> value

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "grid.nx", "grid.ny",
      "physics.tau", "physics.force_x", "physics.force_y",
      "physics.rho0", "physics.ux0", "physics.uy0", "physics.steps", "physics.threads",
      "porosity.K",
      "boundary.walls", "boundary.disk_cx", "boundary.disk_cy", "boundary.disk_diameter",
      "output.prefix", "output.out_dir", "output.cadence", "output.format",
  };
  return keys;
}

bool key_known(const std::string& k) {
  for (const auto& s : known_keys())
    if (s == k) return true;
  return false;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  if (s == "inf" || s == "+inf") {
    out = std::numeric_limits<double>::infinity();
    return true;
  }
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end && *end == '\0' && !s.empty();
}

bool parse_long(const std::string& s, long& out) {
  char* end = nullptr;
  out = std::strtol(s.c_str(), &end, 10);
  return end && *end == '\0' && !s.empty();
}

class Resolver {
 public:
  Resolver(const KeyMap& kv, std::vector<Issue>& errors) : kv_(kv), errors_(errors) {}

  double number(const std::string& key, double fallback) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    double v;
    if (!parse_double(it->second.value, v)) {
      errors_.push_back({it->second.line, key + ": not a number: '" + it->second.value + "'"});
      return fallback;
    }
    return v;
  }

  long integer(const std::string& key, long fallback) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    long v;
    if (!parse_long(it->second.value, v)) {
      errors_.push_back({it->second.line, key + ": not an integer: '" + it->second.value + "'"});
      return fallback;
    }
    return v;
  }

  std::string text(const std::string& key, const std::string& fallback) {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second.value;
  }

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  int line_of(const std::string& key) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? 0 : it->second.line;
  }

  void require(const std::string& key) {
    if (!has(key)) errors_.push_back({0, "missing required key " + key});
  }

 private:
  const KeyMap& kv_;
  std::vector<Issue>& errors_;
};

std::string iso_timestamp() {
  char buf[32];
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string format_g17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::uint8_t> disk_mask(int nx, int ny, double cx, double cy, double diameter) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(nx) * ny, 0);
  if (diameter <= 0.0) return mask;
  const double r2 = 0.25 * diameter * diameter;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double x = (i + 0.5) / nx - cx;
      const double y = (j + 0.5) / ny - cy;
      if (x * x + y * y <= r2) mask[static_cast<std::size_t>(j) * nx + i] = 1;
    }
  return mask;
}

std::string ParseResult::error_text() const {
  std::ostringstream os;
  for (const auto& e : errors) {
    if (e.line > 0)
      os << "line " << e.line << ": " << e.message << "\n";
    else
      os << e.message << "\n";
  }
  return os.str();
}

ParseResult parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  ParseResult result;
  KeyMap kv;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        result.errors.push_back({lineno, "malformed section header: " + raw});
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) result.errors.push_back({lineno, "empty section name"});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      result.errors.push_back({lineno, "expected key = value, got: " + trim(raw)});
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      result.errors.push_back({lineno, "key '" + key + "' appears before any [section]"});
      continue;
    }
    const std::string full = section + "." + key;
    if (!key_known(full)) {
      result.errors.push_back({lineno, "unknown key " + full});
      continue;
    }
    if (kv.count(full)) {
      result.errors.push_back({lineno, "duplicate key " + full + " (first on line " +
                                           std::to_string(kv[full].line) + ")"});
      continue;
    }
    kv[full] = {value, lineno};
  }

  for (const auto& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos || ov.find('.') == std::string::npos || ov.find('.') > eq) {
      result.errors.push_back({0, "override must be section.key=value, got: " + ov});
      continue;
    }
    const std::string full = trim(ov.substr(0, eq));
    if (!key_known(full)) {
      result.errors.push_back({0, "unknown override key " + full});
      continue;
    }
    kv[full] = {trim(ov.substr(eq + 1)), 0};
  }

  Resolver r(kv, result.errors);
  r.require("grid.nx");
  r.require("grid.ny");
  r.require("physics.tau");

  ResolvedConfig cfg;
  cfg.sim.nx = static_cast<int>(r.integer("grid.nx", 0));
  cfg.sim.ny = static_cast<int>(r.integer("grid.ny", 0));
  cfg.sim.tau = r.number("physics.tau", 1.0);
  cfg.sim.ax = r.number("physics.force_x", 0.0);
  cfg.sim.ay = r.number("physics.force_y", 0.0);
  cfg.sim.rho0 = r.number("physics.rho0", 1.0);
  cfg.sim.ux0 = r.number("physics.ux0", 0.0);
  cfg.sim.uy0 = r.number("physics.uy0", 0.0);
  cfg.sim.steps = r.integer("physics.steps", 0);
  cfg.sim.threads = static_cast<int>(r.integer("physics.threads", 1));
  cfg.sim.K = r.number("porosity.K", std::numeric_limits<double>::infinity());
  cfg.walls = r.text("boundary.walls", "none");
  cfg.disk_cx = r.number("boundary.disk_cx", 0.5);
  cfg.disk_cy = r.number("boundary.disk_cy", 0.5);
  cfg.disk_diameter = r.number("boundary.disk_diameter", 0.0);
  cfg.output.prefix = r.text("output.prefix", "run");
  cfg.output.out_dir = r.text("output.out_dir", ".");
  cfg.sim.cadence = r.integer("output.cadence", 0);
  const std::string fmt = r.text("output.format", "csv");

  if (fmt == "csv") {
    cfg.output.csv = true;
    cfg.output.vtk = false;
  } else if (fmt == "vtk") {
    cfg.output.csv = false;
    cfg.output.vtk = true;
  } else if (fmt == "csv,vtk" || fmt == "vtk,csv") {
    cfg.output.csv = cfg.output.vtk = true;
  } else {
    result.errors.push_back({r.line_of("output.format"), "output.format must be csv, vtk or csv,vtk"});
  }

  if (cfg.walls != "none" && cfg.walls != "x" && cfg.walls != "y" && cfg.walls != "xy")
    result.errors.push_back({r.line_of("boundary.walls"), "boundary.walls must be none, x, y or xy"});
  cfg.sim.wall_x = cfg.walls == "x" || cfg.walls == "xy";
  cfg.sim.wall_y = cfg.walls == "y" || cfg.walls == "xy";

  if (!result.errors.empty()) return result;

  if (cfg.disk_diameter > 0.0)
    cfg.sim.solid = disk_mask(cfg.sim.nx, cfg.sim.ny, cfg.disk_cx, cfg.disk_cy, cfg.disk_diameter);

  // Range validation, reported with the line that set the value.
  try {
    cfg.sim.validate();
  } catch (const std::exception& ex) {
    const std::string msg = ex.what();
    int line = 0;
    if (msg.find("relaxation") != std::string::npos) line = r.line_of("physics.tau");
    if (msg.find("permeability") != std::string::npos || msg.find("porosity control") != std::string::npos)
      line = r.line_of("porosity.K");
    if (msg.find("grid") != std::string::npos) line = r.line_of("grid.nx");
    result.errors.push_back({line, msg});
    return result;
  }

  cfg.provenance.tool_version = kToolVersion;
  cfg.provenance.timestamp = iso_timestamp();
  cfg.provenance.original_text = text;
  result.config = std::move(cfg);
  return result;
}

ParseResult parse_config_file(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) {
    ParseResult r;
    r.errors.push_back({0, "cannot open config file: " + path});
    return r;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

std::string ResolvedConfig::serialize() const {
  std::ostringstream os;
  os << "[grid]\n";
  os << "nx = " << sim.nx << "\n";
  os << "ny = " << sim.ny << "\n";
  os << "[physics]\n";
  os << "tau = " << format_g17(sim.tau) << "\n";
  os << "force_x = " << format_g17(sim.ax) << "\n";
  os << "force_y = " << format_g17(sim.ay) << "\n";
  os << "rho0 = " << format_g17(sim.rho0) << "\n";
  os << "ux0 = " << format_g17(sim.ux0) << "\n";
  os << "uy0 = " << format_g17(sim.uy0) << "\n";
  os << "steps = " << sim.steps << "\n";
  os << "threads = " << sim.threads << "\n";
  os << "[porosity]\n";
  os << "K = " << format_g17(sim.K) << "\n";
  os << "[boundary]\n";
  os << "walls = " << walls << "\n";
  os << "disk_cx = " << format_g17(disk_cx) << "\n";
  os << "disk_cy = " << format_g17(disk_cy) << "\n";
  os << "disk_diameter = " << format_g17(disk_diameter) << "\n";
  os << "[output]\n";
  os << "prefix = " << output.prefix << "\n";
  os << "out_dir = " << output.out_dir << "\n";
  os << "cadence = " << sim.cadence << "\n";
  os << "format = " << (output.csv && output.vtk ? "csv,vtk" : (output.vtk ? "vtk" : "csv")) << "\n";
  return os.str();
}

}  // namespace hlbm::config
