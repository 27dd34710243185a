// Dense 2N x 2N density-matrix evolution. This backend is deliberately
// brute force; it is the reference the Fourier backend is checked against.
//
// Basis ordering: |x> (x) |j> maps to row/column 2x + (j-1).
#pragma once

#include "qwalk/walk_core.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qwalk {

using DenseMatrix = Eigen::MatrixXcd;

inline constexpr int basis_index(int x, int coin) { return 2 * x + coin; }

class DensityMatrix {
 public:
  DensityMatrix() = default;

  explicit DensityMatrix(DenseMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 4 || entries_.rows() % 2 != 0) {
      throw std::invalid_argument("density matrix must be square with even dimension >= 4");
    }
  }

  int dim() const { return static_cast<int>(entries_.rows()); }
  int n_sites() const { return dim() / 2; }

  const DenseMatrix& matrix() const { return entries_; }

  Complex operator()(int row, int col) const { return entries_(row, col); }

  Complex trace() const { return entries_.trace(); }

  double purity() const { return (entries_ * entries_).trace().real(); }

  double hermiticity_residual() const { return (entries_ - entries_.adjoint()).norm(); }

  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(hermitized(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
  }

  DenseMatrix hermitized() const { return 0.5 * (entries_ + entries_.adjoint()); }

  /// Hermitian, unit trace, PSD within the stated tolerances.
  bool is_valid(double herm_tol = 1e-12, double trace_tol = 1e-12, double psd_tol = 1e-10) const {
    return hermiticity_residual() < herm_tol && std::abs(trace() - 1.0) < trace_tol &&
           min_eigenvalue() >= -psd_tol;
  }

 private:
  DenseMatrix entries_;
};

/// Full evolution operator U = S (I_N (x) U_c) or one of its factors.
using EvolutionOperator = DenseMatrix;

/// Conditional shift: coin |1> moves x -> x+1, coin |2> moves x -> x-1 (mod N).
inline EvolutionOperator shift_operator(int n_sites) {
  if (n_sites < 2) {
    throw std::domain_error("n_sites must be >= 2");
  }
  EvolutionOperator s = EvolutionOperator::Zero(2 * n_sites, 2 * n_sites);
  for (int x = 0; x < n_sites; ++x) {
    s(basis_index((x + 1) % n_sites, 0), basis_index(x, 0)) = 1.0;
    s(basis_index((x + n_sites - 1) % n_sites, 1), basis_index(x, 1)) = 1.0;
  }
  return s;
}

/// Lifts a coin block to I_N (x) block.
inline DenseMatrix lift_coin(const CoinBlock& block, int n_sites) {
  DenseMatrix out = DenseMatrix::Zero(2 * n_sites, 2 * n_sites);
  for (int x = 0; x < n_sites; ++x) {
    out.block<2, 2>(2 * x, 2 * x) = block;
  }
  return out;
}

inline EvolutionOperator evolution_operator(const WalkParams& params) {
  params.validate();
  return shift_operator(params.n_sites) * lift_coin(coin_operator(params.coin_angle), params.n_sites);
}

/// rho -> sum_n U (I (x) A_n) rho (I (x) A_n)^dag U^dag
inline DensityMatrix step(const DensityMatrix& rho, const EvolutionOperator& u,
                          const KrausFamily& kraus) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim()) {
    throw std::invalid_argument("evolution operator dimension " + std::to_string(u.rows()) +
                                " does not match density matrix dimension " +
                                std::to_string(rho.dim()));
  }
  const int n = rho.n_sites();
  DenseMatrix out = DenseMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& a : kraus) {
    if (a.isZero(0.0)) {
      continue;
    }
    const DenseMatrix k = u * lift_coin(a, n);
    out.noalias() += k * rho.matrix() * k.adjoint();
  }
  return DensityMatrix(std::move(out));
}

/// rho(0) = |0><0| (x) |psi0><psi0|
inline DensityMatrix initial_density(const WalkParams& params) {
  params.validate();
  DenseMatrix rho = DenseMatrix::Zero(2 * params.n_sites, 2 * params.n_sites);
  rho.block<2, 2>(0, 0) = projector(params.initial_coin);
  return DensityMatrix(std::move(rho));
}

/// Steps the dense density matrix one time unit at a time.
class DirectEvolver {
 public:
  explicit DirectEvolver(const WalkParams& params)
      : u_(evolution_operator(params)),
        kraus_(kraus_operators(params.decoherence_rate)),
        rho_(initial_density(params)) {}

  const DensityMatrix& state() const { return rho_; }
  int time() const { return time_; }

  void advance() {
    rho_ = step(rho_, u_, kraus_);
    ++time_;
  }

 private:
  EvolutionOperator u_;
  KrausFamily kraus_;
  DensityMatrix rho_;
  int time_ = 0;
};

inline DensityMatrix evolve(const WalkParams& params, int t) {
  if (t < 0) {
    throw std::domain_error("time must be nonnegative");
  }
  DirectEvolver evolver(params);
  for (int i = 0; i < t; ++i) {
    evolver.advance();
  }
  return evolver.state();
}

/// P(x) = rho[2x,2x] + rho[2x+1,2x+1]
inline std::vector<double> position_distribution(const DensityMatrix& rho) {
  std::vector<double> probs(rho.n_sites());
  for (int x = 0; x < rho.n_sites(); ++x) {
    probs[x] = rho(2 * x, 2 * x).real() + rho(2 * x + 1, 2 * x + 1).real();
  }
  return probs;
}

}  // namespace qwalk
