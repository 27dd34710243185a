// Independent reference computations used only by the tests. Nothing here
// calls into the library routines these oracles are meant to check.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using M2 = Eigen::Matrix2cd;
using M4 = Eigen::Matrix4cd;
using MX = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;

inline std::vector<M2> pauli_basis() {
  M2 s0, sx, sy, sz;
  s0 << 1, 0, 0, 1;
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  return {s0, sx, sy, sz};
}

/// Momentum coin written out entrywise.
inline M2 fourier_coin(double beta, int k, int n) {
  const Complex em = std::exp(Complex(0, -2.0 * kPi * k / n));
  const Complex ep = std::exp(Complex(0, 2.0 * kPi * k / n));
  M2 u;
  u << em * std::cos(beta), em * std::sin(beta), ep * std::sin(beta), -ep * std::cos(beta);
  return u;
}

inline std::vector<M2> kraus(double p) {
  M2 a0 = M2::Identity() * std::sqrt(1 - p);
  M2 a1 = M2::Zero();
  M2 a2 = M2::Zero();
  a1(0, 0) = std::sqrt(p);
  a2(1, 1) = std::sqrt(p);
  return {a0, a1, a2};
}

/// Superoperator columns from its action on each Pauli matrix, with
/// coefficients read off via tr(sigma_i B)/2.
inline M4 superop_from_action(int k, int kp, int n, double p, double beta) {
  const auto basis = pauli_basis();
  const M2 u1 = fourier_coin(beta, k, n);
  const M2 u2 = fourier_coin(beta, kp, n);
  M4 m;
  for (int col = 0; col < 4; ++col) {
    M2 out = M2::Zero();
    for (const auto& a : kraus(p)) out += u1 * a * basis[col] * a.adjoint() * u2.adjoint();
    for (int row = 0; row < 4; ++row) m(row, col) = (basis[row] * out).trace() / 2.0;
  }
  return m;
}

/// det(lambda I - M) by LU.
inline Complex char_poly_at(const M4& m, Complex lambda) {
  return (lambda * M4::Identity() - m).determinant();
}

/// Classical symmetric random walk on the N-cycle started at 0.
inline std::vector<std::vector<double>> classical_walk(int n, int t_max) {
  std::vector<std::vector<double>> out;
  std::vector<double> p(n, 0.0);
  p[0] = 1.0;
  out.push_back(p);
  for (int t = 1; t <= t_max; ++t) {
    std::vector<double> next(n, 0.0);
    for (int x = 0; x < n; ++x) {
      next[(x + 1) % n] += 0.5 * p[x];
      next[(x + n - 1) % n] += 0.5 * p[x];
    }
    p = next;
    out.push_back(p);
  }
  return out;
}

/// Random density matrix G G^dag / tr(G G^dag) of the given dimension and rank.
inline MX random_density(int dim, std::mt19937_64& rng, int rank = -1) {
  if (rank < 0) rank = dim;
  std::normal_distribution<double> g(0.0, 1.0);
  MX gm(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < rank; ++j) gm(i, j) = Complex(g(rng), g(rng));
  MX rho = gm * gm.adjoint();
  rho /= rho.trace();
  return 0.5 * (rho + rho.adjoint());
}

inline M2 random_block(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  M2 b;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) b(i, j) = Complex(g(rng), g(rng));
  return b;
}

inline Eigen::Vector2cd random_unit_coin(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Vector2cd v(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
  return v / v.norm();
}

/// Shannon entropy in bits of a probability vector.
inline double shannon_bits(const std::vector<double>& probs) {
  double s = 0.0;
  for (double q : probs)
    if (q > 0) s -= q * std::log2(q);
  return s;
}

}  // namespace oracle
