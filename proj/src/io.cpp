#include "darboux/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace darboux {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_field_csv(const std::string& path, const ComplexField& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "x,re,im\n";
  for (int i = 0; i < f.size(); ++i)
    out << format_double(f.grid.x(i)) << ',' << format_double(f.values[i].real()) << ','
        << format_double(f.values[i].imag()) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

ComplexField read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
  std::vector<double> xs;
  std::vector<Complex> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    double col[3];
    for (int c = 0; c < 3; ++c) {
      if (!std::getline(row, cell, ',')) throw std::runtime_error("bad csv row: " + line);
      col[c] = std::stod(cell);
    }
    xs.push_back(col[0]);
    vals.emplace_back(col[1], col[2]);
  }
  if (xs.size() < 3) throw std::runtime_error("csv has fewer than 3 rows: " + path);
  GridSpec g = make_grid(xs.front(), xs.back(), static_cast<int>(xs.size()));
  Eigen::ArrayXcd v(g.n_points);
  for (int i = 0; i < g.n_points; ++i) v[i] = vals[i];
  return ComplexField(g, std::move(v));
}

}  // namespace darboux
