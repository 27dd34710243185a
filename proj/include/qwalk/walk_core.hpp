// Core domain types for the decoherent quantum walk on the N-cycle: walk
// parameters, the parametric coin and its momentum-space form, the
// coin-measurement Kraus family, and Pauli-basis conversions.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qwalk {

using Complex = std::complex<double>;

/// 2x2 complex block acting on the coin space.
using CoinBlock = Eigen::Matrix2cd;

/// Coefficients (a1, a2, a3, a4) of a 2x2 matrix in the basis
/// (sigma_0, sigma_x, sigma_y, sigma_z).
using BlochVec = Eigen::Vector4cd;

using CoinState = Eigen::Vector2cd;

using KrausFamily = std::array<CoinBlock, 3>;

inline constexpr double kPi = std::numbers::pi;

struct WalkParams {
  int n_sites = 3;
  double decoherence_rate = 0.0;
  double coin_angle = kPi / 4.0;
  CoinState initial_coin = CoinState(1.0, 0.0);

  void validate() const {
    if (n_sites < 2) {
      throw std::domain_error("n_sites must be >= 2, got " + std::to_string(n_sites));
    }
    if (!(decoherence_rate >= 0.0 && decoherence_rate <= 1.0)) {
      throw std::domain_error("decoherence_rate must lie in [0, 1], got " +
                              std::to_string(decoherence_rate));
    }
    if (!(coin_angle > 0.0 && coin_angle < kPi / 2.0)) {
      throw std::domain_error("coin_angle must lie in the open interval (0, pi/2), got " +
                              std::to_string(coin_angle));
    }
    if (!initial_coin.allFinite() || std::abs(initial_coin.norm() - 1.0) > 1e-12) {
      throw std::domain_error("initial_coin must be a unit vector");
    }
  }
};

namespace pauli {

inline CoinBlock identity() { return CoinBlock::Identity(); }

inline CoinBlock x() {
  CoinBlock m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline CoinBlock y() {
  CoinBlock m;
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

inline CoinBlock z() {
  CoinBlock m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

inline std::array<CoinBlock, 4> basis() { return {identity(), x(), y(), z()}; }

}  // namespace pauli

/// Real coin U_c(beta) = [[cos b, sin b], [sin b, -cos b]]. Hadamard at b = pi/4.
inline CoinBlock coin_operator(double coin_angle) {
  if (!(coin_angle > 0.0 && coin_angle < kPi / 2.0)) {
    throw std::domain_error("coin_angle must lie in the open interval (0, pi/2)");
  }
  const double c = std::cos(coin_angle);
  const double s = std::sin(coin_angle);
  CoinBlock u;
  u << c, s, s, -c;
  return u;
}

/// Phase factor exp(2 pi i m / N), reducing m mod N first so that
/// the argument stays in [0, 2 pi).
inline Complex root_of_unity(long long m, int n_sites) {
  const long long r = ((m % n_sites) + n_sites) % n_sites;
  const double angle = 2.0 * kPi * static_cast<double>(r) / n_sites;
  return {std::cos(angle), std::sin(angle)};
}

/// Momentum-space coin diag(e^{-2 pi i k/N}, e^{+2 pi i k/N}) * U_c(beta).
inline CoinBlock coin_operator_fourier(double coin_angle, int k, int n_sites) {
  if (n_sites < 2) {
    throw std::domain_error("n_sites must be >= 2");
  }
  if (k < 0 || k >= n_sites) {
    throw std::domain_error("momentum index k out of range [0, N)");
  }
  CoinBlock phase = CoinBlock::Zero();
  phase(0, 0) = root_of_unity(-k, n_sites);
  phase(1, 1) = root_of_unity(k, n_sites);
  return phase * coin_operator(coin_angle);
}

/// With probability p the coin is measured in the computational basis:
/// A0 = sqrt(1-p) I, A1 = sqrt(p)/2 (I + Z), A2 = sqrt(p)/2 (I - Z).
inline KrausFamily kraus_operators(double decoherence_rate) {
  if (!(decoherence_rate >= 0.0 && decoherence_rate <= 1.0)) {
    throw std::domain_error("decoherence_rate must lie in [0, 1]");
  }
  const double keep = std::sqrt(1.0 - decoherence_rate);
  const double half_meas = std::sqrt(decoherence_rate) / 2.0;
  return {keep * pauli::identity(), half_meas * (pauli::identity() + pauli::z()),
          half_meas * (pauli::identity() - pauli::z())};
}

struct UnitalCheck {
  bool unital = false;
  double residual = 0.0;  // operator 2-norm of sum A^dag A - I
};

inline UnitalCheck check_unital(const KrausFamily& kraus) {
  CoinBlock sum = CoinBlock::Zero();
  for (const auto& a : kraus) {
    sum += a.adjoint() * a;
  }
  const CoinBlock diff = sum - CoinBlock::Identity();
  Eigen::JacobiSVD<CoinBlock> svd(diff);
  const double residual = svd.singularValues()(0);
  return {residual < 1e-12, residual};
}

// B = a1 s0 + a2 sx + a3 sy + a4 sz, so
//   B11 = a1 + a4, B22 = a1 - a4, B12 = a2 - i a3, B21 = a2 + i a3.
inline BlochVec to_pauli(const CoinBlock& block) {
  const Complex i(0.0, 1.0);
  BlochVec v;
  v(0) = 0.5 * (block(0, 0) + block(1, 1));
  v(1) = 0.5 * (block(0, 1) + block(1, 0));
  v(2) = 0.5 * i * (block(0, 1) - block(1, 0));
  v(3) = 0.5 * (block(0, 0) - block(1, 1));
  return v;
}

inline CoinBlock from_pauli(const BlochVec& v) {
  const Complex i(0.0, 1.0);
  CoinBlock b;
  b(0, 0) = v(0) + v(3);
  b(1, 1) = v(0) - v(3);
  b(0, 1) = v(1) - i * v(2);
  b(1, 0) = v(1) + i * v(2);
  return b;
}

inline CoinBlock projector(const CoinState& psi) { return psi * psi.adjoint(); }

}  // namespace qwalk
