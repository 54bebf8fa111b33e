#include "hlbm/field_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hlbm/config.hpp"

namespace hlbm::io {

namespace {

using config::format_g17;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

std::string csv_text(const lattice::MacroFields& f, double dx,
                     const std::vector<std::string>& header_lines) {
  std::ostringstream os;
  for (const auto& line : header_lines) os << "# " << line << "\n";
  os << "# grid " << f.nx << " " << f.ny << " step " << f.step << " rho_ref "
     << format_g17(f.rho_ref) << " dx " << format_g17(dx) << "\n";
  os << "x,y,rho,ux,uy,p\n";
  for (int j = 0; j < f.ny; ++j)
    for (int i = 0; i < f.nx; ++i) {
      const std::size_t c = f.index(i, j);
      os << format_g17((i + 0.5) * dx) << ',' << format_g17((j + 0.5) * dx) << ','
         << format_g17(f.rho[c]) << ',' << format_g17(f.ux[c]) << ',' << format_g17(f.uy[c])
         << ',' << format_g17(f.p[c]) << "\n";
    }
  return os.str();
}

void write_csv(const std::string& path, const lattice::MacroFields& fields, double dx,
               const std::vector<std::string>& header_lines) {
  write_file(path, csv_text(fields, dx, header_lines));
}

std::string vtk_text(const lattice::MacroFields& f, double dx, const std::string& title) {
  std::ostringstream os;
  os << "# vtk DataFile Version 3.0\n";
  os << (title.empty() ? "hlbm fields" : title.substr(0, 255)) << "\n";
  os << "ASCII\n";
  os << "DATASET STRUCTURED_POINTS\n";
  os << "DIMENSIONS " << f.nx << " " << f.ny << " 1\n";
  os << "ORIGIN " << format_g17(0.5 * dx) << " " << format_g17(0.5 * dx) << " 0\n";
  os << "SPACING " << format_g17(dx) << " " << format_g17(dx) << " 1\n";
  os << "POINT_DATA " << static_cast<long>(f.nx) * f.ny << "\n";
  os << "SCALARS rho double 1\nLOOKUP_TABLE default\n";
  for (std::size_t c = 0; c < f.size(); ++c) os << format_g17(f.rho[c]) << "\n";
  os << "VECTORS velocity double\n";
  for (std::size_t c = 0; c < f.size(); ++c)
    os << format_g17(f.ux[c]) << " " << format_g17(f.uy[c]) << " 0\n";
  os << "SCALARS p double 1\nLOOKUP_TABLE default\n";
  for (std::size_t c = 0; c < f.size(); ++c) os << format_g17(f.p[c]) << "\n";
  return os.str();
}

void write_vtk(const std::string& path, const lattice::MacroFields& fields, double dx,
               const std::string& title) {
  write_file(path, vtk_text(fields, dx, title));
}

CsvContents read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  CsvContents out;
  std::string line;
  long expected = -1;
  bool have_grid = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line);
      std::string hash, word;
      ls >> hash >> word;
      if (word == "grid") {
        std::string tag;
        ls >> out.fields.nx >> out.fields.ny >> tag >> out.fields.step >> tag >>
            out.fields.rho_ref >> tag >> out.dx;
        have_grid = true;
      } else {
        out.header.push_back(line.size() > 2 ? line.substr(2) : "");
      }
      continue;
    }
    if (line.rfind("x,y,", 0) == 0) continue;
    if (!have_grid) throw std::runtime_error("csv missing '# grid' line: " + path);
    if (expected < 0) {
      expected = static_cast<long>(out.fields.nx) * out.fields.ny;
      out.fields.rho.reserve(expected);
    }
    std::istringstream ls(line);
    double x, y, rho, ux, uy, p;
    char comma;
    ls >> x >> comma >> y >> comma >> rho >> comma >> ux >> comma >> uy >> comma >> p;
    if (!ls) throw std::runtime_error("malformed csv row in " + path + ": " + line);
    out.fields.rho.push_back(rho);
    out.fields.ux.push_back(ux);
    out.fields.uy.push_back(uy);
    out.fields.p.push_back(p);
  }
  if (expected != static_cast<long>(out.fields.rho.size()))
    throw std::runtime_error("csv row count does not match grid in " + path);
  return out;
}

}  // namespace hlbm::io
