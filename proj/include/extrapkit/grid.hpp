#pragma once

// Uniform cell-midpoint grids on [-L, L]. Sample j sits at
// x_j = -L + (j + 1/2) h with h = 2L/N, so x = 0 is never sampled.

#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "extrapkit/errors.hpp"
#include "extrapkit/exponent.hpp"

namespace extrapkit {

struct Grid {
  double L = 8.0;
  std::size_t N = 4096;

  double h() const { return 2.0 * L / static_cast<double>(N); }
  double x(std::size_t j) const { return -L + (static_cast<double>(j) + 0.5) * h(); }

  /// Throws DomainError unless N is a power of two and L > 0.
  void validate() const;

  friend bool operator==(const Grid&, const Grid&) = default;
};

Eigen::VectorXd grid_points(const Grid& grid);

template <typename Scalar>
struct GridFunction {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Grid grid;
  Vector values;

  GridFunction() = default;
  explicit GridFunction(const Grid& g) : grid(g), values(Vector::Zero(static_cast<Eigen::Index>(g.N))) {}
  GridFunction(const Grid& g, Vector v) : grid(g), values(std::move(v)) {
    if (values.size() != static_cast<Eigen::Index>(g.N)) throw GridMismatch("sample count differs from grid size");
  }

  Eigen::Index size() const { return values.size(); }
  Scalar& operator[](Eigen::Index j) { return values[j]; }
  const Scalar& operator[](Eigen::Index j) const { return values[j]; }
};

using RealFunction = GridFunction<double>;
using ComplexFunction = GridFunction<std::complex<double>>;

/// Strictly positive, finite samples.
struct GridWeight {
  Grid grid;
  Eigen::VectorXd values;

  GridWeight() = default;
  GridWeight(const Grid& g, Eigen::VectorXd v);

  static GridWeight unit(const Grid& g);
  static GridWeight power(const Grid& g, double alpha);

  /// Pointwise w^e.
  GridWeight pow(double e) const;
};

template <typename A, typename B>
void require_same_grid(const A& a, const B& b) {
  if (!(a.grid == b.grid)) throw GridMismatch("grids differ");
}

template <typename Scalar, typename F>
GridFunction<Scalar> sample(const Grid& grid, F&& f) {
  GridFunction<Scalar> out(grid);
  for (std::size_t j = 0; j < grid.N; ++j) out[static_cast<Eigen::Index>(j)] = f(grid.x(j));
  return out;
}

inline RealFunction real_part(const ComplexFunction& f) { return {f.grid, f.values.real()}; }
inline ComplexFunction to_complex(const RealFunction& f) { return {f.grid, f.values.cast<std::complex<double>>()}; }

/// Recovers (L, N) from midpoint abscissae; throws GridMismatch if the
/// spacing is not uniform or not centred.
Grid infer_grid(const Eigen::VectorXd& x);

/// CSV with rows `x,re[,im]`. Lines starting with '#' and a non-numeric
/// header line are skipped.
ComplexFunction read_function_csv(const std::string& path, bool* had_imaginary = nullptr);
void write_function_csv(const std::string& path, const ComplexFunction& f, bool with_imaginary);

/// CSV with rows `x,value`.
GridWeight read_weight_csv(const std::string& path);
void write_weight_csv(const std::string& path, const GridWeight& w);

}  // namespace extrapkit
