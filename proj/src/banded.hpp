#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "hjcrit/fields.hpp"

namespace hjcrit::detail {

// Cholesky factorization of a symmetric positive definite band matrix,
// stored by lower diagonals: band_[i * (bw + 1) + d] = A(i, i - d).
class BandedCholesky {
 public:
  BandedCholesky(std::size_t size, std::size_t half_bandwidth)
      : n_(size), bw_(half_bandwidth), band_(size * (half_bandwidth + 1), 0.0) {}

  double& at(std::size_t row, std::size_t offset) { return band_[row * (bw_ + 1) + offset]; }
  double at(std::size_t row, std::size_t offset) const { return band_[row * (bw_ + 1) + offset]; }

  void factor() {
    for (std::size_t j = 0; j < n_; ++j) {
      double diag = at(j, 0);
      const std::size_t kmin = j > bw_ ? j - bw_ : 0;
      for (std::size_t k = kmin; k < j; ++k) diag -= at(j, j - k) * at(j, j - k);
      if (!(diag > 0.0)) throw std::runtime_error("banded Cholesky: matrix not positive definite");
      const double ljj = std::sqrt(diag);
      at(j, 0) = ljj;
      const std::size_t imax = std::min(n_ - 1, j + bw_);
      for (std::size_t i = j + 1; i <= imax; ++i) {
        double s = at(i, i - j);
        const std::size_t kmin2 = i > bw_ ? i - bw_ : 0;
        for (std::size_t k = std::max(kmin, kmin2); k < j; ++k) s -= at(i, i - k) * at(j, j - k);
        at(i, i - j) = s / ljj;
      }
    }
  }

  // Overwrites rhs with the solution of L L^T x = rhs.
  void solve(std::span<double> rhs) const {
    for (std::size_t i = 0; i < n_; ++i) {
      double s = rhs[i];
      const std::size_t kmin = i > bw_ ? i - bw_ : 0;
      for (std::size_t k = kmin; k < i; ++k) s -= at(i, i - k) * rhs[k];
      rhs[i] = s / at(i, 0);
    }
    for (std::size_t ii = n_; ii-- > 0;) {
      double s = rhs[ii];
      const std::size_t kmax = std::min(n_ - 1, ii + bw_);
      for (std::size_t k = ii + 1; k <= kmax; ++k) s -= at(k, k - ii) * rhs[k];
      rhs[ii] = s / at(ii, 0);
    }
  }

 private:
  std::size_t n_;
  std::size_t bw_;
  std::vector<double> band_;
};


// Backward-Euler diffusion solve (I - h Δ_h) u = b on interior samples with
// homogeneous Dirichlet boundary values.
class ImplicitDiffusion {
 public:
  ImplicitDiffusion(const Grid& grid, double h) : grid_(grid), h_(h) {
    const std::size_t ni = static_cast<std::size_t>(grid.points_per_axis() - 2);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (!grid.on_boundary(k)) interior_.push_back(k);
    }
    const std::size_t m = interior_.size();
    const std::size_t bw = grid.dim() == 1 ? 1 : ni;
    const double r = h / (grid.spacing() * grid.spacing());
    factor_ = BandedCholesky(m, bw);
    for (std::size_t u = 0; u < m; ++u) {
      factor_.at(u, 0) = 1.0 + 2.0 * grid.dim() * r;
      if (grid.dim() == 1) {
        if (u >= 1) factor_.at(u, 1) = -r;
      } else {
        if (u % ni != 0) factor_.at(u, 1) = -r;
        if (u >= ni) factor_.at(u, ni) = -r;
      }
    }
    factor_.factor();
  }

  double step() const { return h_; }

  ScalarField solve(const ScalarField& b) const {
    std::vector<double> x(interior_.size());
    for (std::size_t u = 0; u < x.size(); ++u) x[u] = b[interior_[u]];
    factor_.solve(x);
    ScalarField out(grid_);
    for (std::size_t u = 0; u < x.size(); ++u) out[interior_[u]] = x[u];
    return out;
  }

 private:
  Grid grid_;
  double h_;
  std::vector<std::size_t> interior_;
  BandedCholesky factor_{0, 0};
};

}  // namespace hjcrit::detail
