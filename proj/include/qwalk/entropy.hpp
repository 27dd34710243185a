// Von Neumann entropies (in bits), partial traces over the coin and walker
// factors, coin-walker mutual information, and the trace norm.
#pragma once

#include "qwalk/evolution_direct.hpp"
#include "qwalk/walk_core.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <string>

namespace qwalk {

inline constexpr double kEntropyInputTolerance = 1e-9;
inline constexpr double kNegativeClip = 1e-10;
inline constexpr double kZeroEigenvalue = 1e-14;

/// -sum lambda log2 lambda over the spectrum of a Hermitian, PSD, unit-trace
/// matrix. Eigenvalues in [-1e-10, 1e-14) count as zero; anything more
/// negative is rejected.
template <typename Derived>
double von_neumann_entropy(const Eigen::MatrixBase<Derived>& rho) {
  using Matrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Matrix m = rho;
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("entropy of a non-square matrix");
  }
  const double asym = (m - m.adjoint()).norm();
  if (asym > kEntropyInputTolerance) {
    throw std::invalid_argument("entropy input is not Hermitian (residual " + std::to_string(asym) +
                                ")");
  }
  const double trace_err = std::abs(m.trace() - typename Derived::Scalar(1.0));
  if (trace_err > kEntropyInputTolerance) {
    throw std::invalid_argument("entropy input does not have unit trace (deviation " +
                                std::to_string(trace_err) + ")");
  }
  const Matrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (lambda < -kNegativeClip) {
      throw std::invalid_argument("entropy input has negative eigenvalue " + std::to_string(lambda));
    }
    if (lambda > kZeroEigenvalue) {
      s -= lambda * std::log2(lambda);
    }
  }
  return s;
}

inline double von_neumann_entropy(const DensityMatrix& rho) {
  return von_neumann_entropy(rho.matrix());
}

/// rho_c[j,l] = sum_x rho[2x+j, 2x+l]
inline CoinBlock partial_trace_walker(const DensityMatrix& rho) {
  CoinBlock out = CoinBlock::Zero();
  for (int x = 0; x < rho.n_sites(); ++x) {
    out += rho.matrix().block<2, 2>(2 * x, 2 * x);
  }
  return out;
}

/// rho_w[x,y] = sum_j rho[2x+j, 2y+j]
inline DenseMatrix partial_trace_coin(const DensityMatrix& rho) {
  const int n = rho.n_sites();
  DenseMatrix out(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      out(x, y) = rho(2 * x, 2 * y) + rho(2 * x + 1, 2 * y + 1);
    }
  }
  return out;
}

struct EntropyRecord {
  int time = 0;
  double s_total = 0.0;
  double s_coin = 0.0;
  double s_walker = 0.0;
  double mutual_info = 0.0;
};

/// S(c:w) = S(c) + S(w) - S(c,w), all in bits.
inline EntropyRecord mutual_information(const DensityMatrix& rho, int time = 0) {
  EntropyRecord rec;
  rec.time = time;
  rec.s_total = von_neumann_entropy(rho);
  rec.s_coin = von_neumann_entropy(partial_trace_walker(rho));
  rec.s_walker = von_neumann_entropy(partial_trace_coin(rho));
  rec.mutual_info = rec.s_coin + rec.s_walker - rec.s_total;
  return rec;
}

/// Sum of singular values.
template <typename Derived>
double trace_norm(const Eigen::MatrixBase<Derived>& m) {
  using Matrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("trace_norm expects a square matrix");
  }
  const Matrix dense = m;
  Eigen::BDCSVD<Matrix> svd(dense);
  return svd.singularValues().sum();
}

/// ||a - b||_tr for two states of the same dimension.
inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("trace_distance of states with different dimensions");
  }
  return trace_norm(a.matrix() - b.matrix());
}

}  // namespace qwalk
