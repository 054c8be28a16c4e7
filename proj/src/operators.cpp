#include "extrapkit/operators.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <vector>

namespace extrapkit {

namespace {

RealFunction maximal_reference(const Eigen::VectorXd& a, const Grid& grid) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
  for (std::ptrdiff_t i = 0; i < n; ++i) prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] + a[i];
  // For start s, the running max over e >= i of avg(s..e) covers exactly the
  // intervals [s, e] containing i >= s. Chunks of starts
  // keep private maxima, merged afterwards (max is order independent).
  std::vector<Eigen::VectorXd> partial;
  std::mutex guard;
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t b0, std::size_t e0) {
    Eigen::VectorXd mine = a;
    for (auto s = static_cast<std::ptrdiff_t>(b0); s < static_cast<std::ptrdiff_t>(e0); ++s) {
      double run = 0.0;
      for (std::ptrdiff_t e = n - 1; e >= s; --e) {
        const double avg = (prefix[static_cast<std::size_t>(e) + 1] - prefix[static_cast<std::size_t>(s)]) /
                           static_cast<double>(e - s + 1);
        run = std::max(run, avg);
        mine[e] = std::max(mine[e], run);
      }
    }
    std::lock_guard<std::mutex> lock(guard);
    partial.push_back(std::move(mine));
  });
  RealFunction out(grid);
  out.values = a;
  for (const auto& m : partial) out.values = out.values.cwiseMax(m);
  return out;
}

std::vector<std::size_t> window_ladder(std::size_t n, double rho) {
  std::vector<std::size_t> lengths;
  const auto dense = static_cast<std::size_t>(std::ceil(1.0 / rho));
  std::size_t len = 1;
  while (len < n) {
    lengths.push_back(len);
    const auto grown = static_cast<std::size_t>(std::floor(static_cast<double>(len) * (1.0 + rho)));
    len = len < dense ? len + 1 : std::max(len + 1, grown);
  }
  lengths.push_back(n);
  return lengths;
}

RealFunction maximal_fast(const Eigen::VectorXd& a, const Grid& grid, double rho) {
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  const std::size_t n = static_cast<std::size_t>(a.size());
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + a[static_cast<Eigen::Index>(i)];
  const auto lengths = window_ladder(n, rho);
  RealFunction out(grid);
  out.values = a;
  std::vector<double> avg(n);
  std::deque<std::size_t> dq;
  for (std::size_t len : lengths) {
    const std::size_t starts = n - len + 1;
    for (std::size_t s = 0; s < starts; ++s) avg[s] = (prefix[s + len] - prefix[s]) / static_cast<double>(len);
    // Point i is covered by windows starting in [i - len + 1, i] ∩ [0, starts).
    dq.clear();
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
      while (next < starts && next <= i) {
        while (!dq.empty() && avg[dq.back()] <= avg[next]) dq.pop_back();
        dq.push_back(next++);
      }
      while (!dq.empty() && dq.front() + len <= i) dq.pop_front();
      if (!dq.empty()) {
        double& o = out.values[static_cast<Eigen::Index>(i)];
        o = std::max(o, avg[dq.front()]);
      }
    }
  }
  return out;
}

}  // namespace

RealFunction maximal(const RealFunction& f, const MaximalOptions& opt) {
  const Eigen::VectorXd a = f.values.cwiseAbs();
  return opt.mode == MaximalMode::Reference ? maximal_reference(a, f.grid) : maximal_fast(a, f.grid, opt.rho);
}

RealFunction maximal(const ComplexFunction& f, const MaximalOptions& opt) {
  const Eigen::VectorXd a = f.values.cwiseAbs();
  return opt.mode == MaximalMode::Reference ? maximal_reference(a, f.grid) : maximal_fast(a, f.grid, opt.rho);
}

}  // namespace extrapkit
