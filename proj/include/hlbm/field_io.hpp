// Field writers: CSV (x, y, rho, ux, uy, p at 17 significant digits with the
// resolved config echoed as comments) and legacy ASCII VTK structured points.
#pragma once

#include <string>
#include <vector>

#include "hlbm/lattice.hpp"

namespace hlbm::io {

void write_csv(const std::string& path, const lattice::MacroFields& fields, double dx,
               const std::vector<std::string>& header_lines);

void write_vtk(const std::string& path, const lattice::MacroFields& fields, double dx,
               const std::string& title);

std::string csv_text(const lattice::MacroFields& fields, double dx,
                     const std::vector<std::string>& header_lines);
std::string vtk_text(const lattice::MacroFields& fields, double dx, const std::string& title);

struct CsvContents {
  lattice::MacroFields fields;
  double dx = 1.0;
  std::vector<std::string> header;
};

// Reads files produced by write_csv (round-trip support).
CsvContents read_csv(const std::string& path);

}  // namespace hlbm::io
