#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "extrapkit/exponent.hpp"
#include "extrapkit/grid.hpp"
#include "extrapkit/parallel.hpp"

namespace extrapkit {

/// (sum |f|^p w^p h)^{1/p}; p = inf gives max |f w|.
template <typename Scalar>
double weighted_norm(const GridFunction<Scalar>& f, const GridWeight& w, const ExtendedExponent& p) {
  require_same_grid(f, w);
  if (p.is_zero()) throw DomainError("weighted_norm needs p > 0");
  const Eigen::ArrayXd fw = f.values.array().abs() * w.values.array();
  if (p.is_infinite()) return fw.maxCoeff();
  const double e = p.to_double();
  return std::pow(fw.pow(e).sum() * f.grid.h(), 1.0 / e);
}

/// (sum |f|^p v h)^{1/p}: norm in L^p(v dx) for a measure weight v.
template <typename Scalar>
double measure_norm(const GridFunction<Scalar>& f, const GridWeight& v, const ExtendedExponent& p) {
  require_same_grid(f, v);
  if (p.is_zero()) throw DomainError("measure_norm needs p > 0");
  const Eigen::ArrayXd a = f.values.array().abs();
  if (p.is_infinite()) return a.maxCoeff();
  const double e = p.to_double();
  return std::pow((a.pow(e) * v.values.array()).sum() * f.grid.h(), 1.0 / e);
}

enum class MaximalMode { Reference, Fast };

struct MaximalOptions {
  MaximalMode mode = MaximalMode::Fast;
  /// Fast mode relative resolution of window lengths; the result satisfies
  /// reference / (1 + rho) <= fast <= reference.
  double rho = 1.0 / 128.0;
};

/// Sup of |f|-averages over grid-aligned intervals containing each point.
RealFunction maximal(const RealFunction& f, const MaximalOptions& opt = {});
RealFunction maximal(const ComplexFunction& f, const MaximalOptions& opt = {});

/// (1/pi) sum_{j != i} f_j / (i - j): midpoint principal value with the
/// singular cell omitted.
template <typename Scalar>
GridFunction<Scalar> hilbert(const GridFunction<Scalar>& f) {
  const auto n = static_cast<std::ptrdiff_t>(f.grid.N);
  GridFunction<Scalar> out(f.grid);
  Eigen::VectorXd inv(n);
  inv[0] = 0.0;
  for (std::ptrdiff_t k = 1; k < n; ++k) inv[k] = 1.0 / static_cast<double>(k);
  parallel_for(f.grid.N, [&](std::size_t b, std::size_t e) {
    for (auto i = static_cast<std::ptrdiff_t>(b); i < static_cast<std::ptrdiff_t>(e); ++i) {
      Scalar acc{};
      for (std::ptrdiff_t k = 1; k <= i; ++k) acc += f.values[i - k] * inv[k];
      for (std::ptrdiff_t k = 1; i + k < n; ++k) acc -= f.values[i + k] * inv[k];
      out.values[i] = acc / std::numbers::pi;
    }
  });
  return out;
}

struct Truncation {
  double t_min = 0.0;  // 0 selects h
  double t_max = 0.0;  // 0 selects L/2
};

/// sum over k_min <= k <= k_max of (f_{i-k} g_{i+k} - f_{i+k} g_{i-k}) / k,
/// the ±t paired quadrature of p.v. int f(x-t) g(x+t) dt/t with t = k h.
template <typename Scalar>
GridFunction<Scalar> bht(const GridFunction<Scalar>& f, const GridFunction<Scalar>& g, Truncation tr = {}) {
  require_same_grid(f, g);
  const double h = f.grid.h();
  const double L = f.grid.L;
  if (tr.t_min == 0.0) tr.t_min = h;
  if (tr.t_max == 0.0) tr.t_max = L / 2.0;
  const double slack = 1e-9 * h;
  if (!(tr.t_min > 0.0) || tr.t_min > h + slack || h > tr.t_max + slack || tr.t_max > L + slack)
    throw TruncationInvalid("need 0 < t_min <= h <= t_max <= L");
  const auto n = static_cast<std::ptrdiff_t>(f.grid.N);
  const std::ptrdiff_t kmin = std::max<std::ptrdiff_t>(1, static_cast<std::ptrdiff_t>(std::ceil(tr.t_min / h - 1e-9)));
  const std::ptrdiff_t kmax = static_cast<std::ptrdiff_t>(std::floor(tr.t_max / h + 1e-9));
  GridFunction<Scalar> out(f.grid);
  parallel_for(f.grid.N, [&](std::size_t b, std::size_t e) {
    for (auto i = static_cast<std::ptrdiff_t>(b); i < static_cast<std::ptrdiff_t>(e); ++i) {
      Scalar acc{};
      const std::ptrdiff_t kend = std::min({kmax, i, n - 1 - i});
      for (std::ptrdiff_t k = kmin; k <= kend; ++k)
        acc += (f.values[i - k] * g.values[i + k] - f.values[i + k] * g.values[i - k]) / static_cast<double>(k);
      out.values[i] = acc;
    }
  });
  return out;
}

/// Zero where |x| >= ncut or |f| > ncut.
template <typename Scalar>
GridFunction<Scalar> truncate(const GridFunction<Scalar>& f, double ncut) {
  if (!(ncut > 0.0)) throw DomainError("truncation level must be positive");
  GridFunction<Scalar> out = f;
  for (std::size_t j = 0; j < f.grid.N; ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    if (std::abs(f.grid.x(j)) >= ncut || std::abs(f.values[i]) > ncut) out.values[i] = Scalar{};
  }
  return out;
}

}  // namespace extrapkit
