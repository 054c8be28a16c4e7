#include "extrapkit/grid.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace extrapkit {

void Grid::validate() const {
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("grid half-width must be positive");
  if (N < 2 || (N & (N - 1)) != 0) throw DomainError("grid size must be a power of two, got " + std::to_string(N));
}

Eigen::VectorXd grid_points(const Grid& grid) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(grid.N));
  for (std::size_t j = 0; j < grid.N; ++j) x[static_cast<Eigen::Index>(j)] = grid.x(j);
  return x;
}

GridWeight::GridWeight(const Grid& g, Eigen::VectorXd v) : grid(g), values(std::move(v)) {
  if (values.size() != static_cast<Eigen::Index>(g.N)) throw GridMismatch("sample count differs from grid size");
  for (Eigen::Index j = 0; j < values.size(); ++j)
    if (!(values[j] > 0.0) || !std::isfinite(values[j]))
      throw DomainError("weight sample " + std::to_string(j) + " is not positive and finite");
}

GridWeight GridWeight::unit(const Grid& g) { return {g, Eigen::VectorXd::Ones(static_cast<Eigen::Index>(g.N))}; }

GridWeight GridWeight::power(const Grid& g, double alpha) {
  Eigen::VectorXd v = grid_points(g).cwiseAbs().array().pow(alpha).matrix();
  return {g, std::move(v)};
}

GridWeight GridWeight::pow(double e) const { return {grid, values.array().pow(e).matrix()}; }

Grid infer_grid(const Eigen::VectorXd& x) {
  const auto n = static_cast<std::size_t>(x.size());
  if (n < 2) throw GridMismatch("need at least two samples");
  const double h = (x[x.size() - 1] - x[0]) / static_cast<double>(n - 1);
  if (!(h > 0.0)) throw GridMismatch("abscissae must increase");
  for (Eigen::Index j = 1; j < x.size(); ++j)
    if (std::abs((x[j] - x[j - 1]) - h) > 1e-6 * h) throw GridMismatch("non-uniform spacing at row " + std::to_string(j));
  Grid g{h * static_cast<double>(n) / 2.0, n};
  if (std::abs(x[0] - g.x(0)) > 1e-6 * h) throw GridMismatch("abscissae are not cell midpoints of a centred grid");
  g.validate();
  return g;
}

namespace {

std::vector<std::vector<double>> read_rows(const std::string& path, std::size_t min_cols, std::size_t max_cols) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw Error(path + ": non-numeric row '" + line + "'");
    }
    first = false;
    if (row.size() < min_cols || row.size() > max_cols) throw Error(path + ": unexpected column count in '" + line + "'");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ComplexFunction read_function_csv(const std::string& path, bool* had_imaginary) {
  auto rows = read_rows(path, 2, 3);
  Eigen::VectorXd x(static_cast<Eigen::Index>(rows.size()));
  ComplexFunction::Vector v(static_cast<Eigen::Index>(rows.size()));
  bool imag = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    x[static_cast<Eigen::Index>(i)] = rows[i][0];
    double im = rows[i].size() == 3 ? rows[i][2] : 0.0;
    imag = imag || rows[i].size() == 3;
    v[static_cast<Eigen::Index>(i)] = {rows[i][1], im};
  }
  if (had_imaginary) *had_imaginary = imag;
  return {infer_grid(x), std::move(v)};
}

void write_function_csv(const std::string& path, const ComplexFunction& f, bool with_imaginary) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << std::setprecision(17);
  out << (with_imaginary ? "x,re,im\n" : "x,re\n");
  for (std::size_t j = 0; j < f.grid.N; ++j) {
    const auto& z = f.values[static_cast<Eigen::Index>(j)];
    out << f.grid.x(j) << ',' << z.real();
    if (with_imaginary) out << ',' << z.imag();
    out << '\n';
  }
}

GridWeight read_weight_csv(const std::string& path) {
  auto rows = read_rows(path, 2, 2);
  Eigen::VectorXd x(static_cast<Eigen::Index>(rows.size()));
  Eigen::VectorXd v(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    x[static_cast<Eigen::Index>(i)] = rows[i][0];
    v[static_cast<Eigen::Index>(i)] = rows[i][1];
  }
  return {infer_grid(x), std::move(v)};
}

void write_weight_csv(const std::string& path, const GridWeight& w) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << std::setprecision(17) << "x,value\n";
  for (std::size_t j = 0; j < w.grid.N; ++j) out << w.grid.x(j) << ',' << w.values[static_cast<Eigen::Index>(j)] << '\n';
}

}  // namespace extrapkit
