// Momentum-space backend. In the basis |k> = N^{-1/2} sum_x e^{2 pi i x k/N} |x>
// the density operator splits into N^2 coin blocks
//
//   rho(t) = (1/N) sum_{k,k'} |k><k'| (x) A(t,k,k'),   A(t) = L_{kk'}^t |psi0><psi0|,
//
// and each block evolves independently under a 4x4 superoperator acting on
// its Pauli coefficients.
#pragma once

#include "qwalk/evolution_direct.hpp"
#include "qwalk/walk_core.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace qwalk {

struct SuperOp {
  int k = 0;
  int k_prime = 0;
  Eigen::Matrix4cd matrix = Eigen::Matrix4cd::Identity();
};

/// cos/sin of 2 pi m / N with m reduced mod N.
struct Trig {
  double c;
  double s;
};

inline Trig cycle_trig(long long m, int n_sites) {
  const Complex z = root_of_unity(m, n_sites);
  return {z.real(), z.imag()};
}

inline void check_momentum(int k, int n_sites) {
  if (k < 0 || k >= n_sites) {
    throw std::out_of_range("momentum index " + std::to_string(k) + " out of range [0, " +
                            std::to_string(n_sites) + ")");
  }
}

/// Closed-form 4x4 matrix of L_{kk'} in the (s0, sx, sy, sz) basis with
/// c+- = cos 2 pi (k' +- k)/N, s+- = sin 2 pi (k' +- k)/N and q = 1 - p.
inline SuperOp superoperator_matrix(int k, int k_prime, const WalkParams& params) {
  params.validate();
  check_momentum(k, params.n_sites);
  check_momentum(k_prime, params.n_sites);

  const auto [cp, sp] = cycle_trig(static_cast<long long>(k_prime) + k, params.n_sites);
  const auto [cm, sm] = cycle_trig(static_cast<long long>(k_prime) - k, params.n_sites);
  const double q = 1.0 - params.decoherence_rate;
  const double c2 = std::cos(2.0 * params.coin_angle);
  const double s2 = std::sin(2.0 * params.coin_angle);
  const Complex i(0.0, 1.0);

  SuperOp op{k, k_prime, Eigen::Matrix4cd::Zero()};
  auto& m = op.matrix;
  m(0, 0) = cm;
  m(0, 1) = i * q * sm * s2;
  m(0, 3) = i * sm * c2;

  m(1, 1) = -q * cp * c2;
  m(1, 2) = q * sp;
  m(1, 3) = cp * s2;

  m(2, 1) = -q * sp * c2;
  m(2, 2) = -q * cp;
  m(2, 3) = sp * s2;

  m(3, 0) = i * sm;
  m(3, 1) = q * cm * s2;
  m(3, 3) = cm * c2;
  return op;
}

/// Applies the superoperator to a coin block through its Pauli coefficients.
inline CoinBlock apply(const SuperOp& op, const CoinBlock& block) {
  return from_pauli(op.matrix * to_pauli(block));
}

/// N x N grid of coin blocks A(t,k,k'), row-major in (k, k').
class BlockField {
 public:
  BlockField(int n_sites, int time)
      : n_sites_(n_sites), time_(time), blocks_(static_cast<std::size_t>(n_sites) * n_sites) {}

  int n_sites() const { return n_sites_; }
  int time() const { return time_; }

  CoinBlock& at(int k, int k_prime) { return blocks_[index(k, k_prime)]; }
  const CoinBlock& at(int k, int k_prime) const { return blocks_[index(k, k_prime)]; }

  /// max over pairs of |A(k,k') - A(k',k)^dag|
  double hermitian_pairing_residual() const {
    double worst = 0.0;
    for (int k = 0; k < n_sites_; ++k) {
      for (int kp = 0; kp < n_sites_; ++kp) {
        worst = std::max(worst, (at(k, kp) - at(kp, k).adjoint()).cwiseAbs().maxCoeff());
      }
    }
    return worst;
  }

  /// (1/N) sum_k Tr A(k,k); equals 1 for a normalised state.
  Complex total_probability() const {
    Complex sum = 0.0;
    for (int k = 0; k < n_sites_; ++k) {
      sum += at(k, k).trace();
    }
    return sum / static_cast<double>(n_sites_);
  }

 private:
  std::size_t index(int k, int k_prime) const {
    return static_cast<std::size_t>(k) * n_sites_ + k_prime;
  }

  int n_sites_;
  int time_;
  std::vector<CoinBlock> blocks_;
};

/// Evolves the Pauli coefficients of every (k, k') block by sequential
/// 4x4 matrix-vector products, one time step per advance().
class FourierEvolver {
 public:
  explicit FourierEvolver(const WalkParams& params) : n_(params.n_sites) {
    params.validate();
    const BlochVec initial = to_pauli(projector(params.initial_coin));
    ops_.reserve(static_cast<std::size_t>(n_) * n_);
    state_.assign(static_cast<std::size_t>(n_) * n_, initial);
    for (int k = 0; k < n_; ++k) {
      for (int kp = 0; kp < n_; ++kp) {
        ops_.push_back(superoperator_matrix(k, kp, params).matrix);
      }
    }
  }

  int time() const { return time_; }
  int n_sites() const { return n_; }

  void advance() {
    for (std::size_t i = 0; i < state_.size(); ++i) {
      state_[i] = (ops_[i] * state_[i]).eval();
    }
    ++time_;
  }

  void advance_to(int t) {
    if (t < time_) {
      throw std::invalid_argument("cannot evolve backwards in time");
    }
    while (time_ < t) {
      advance();
    }
  }

  BlockField field() const {
    BlockField f(n_, time_);
    for (int k = 0; k < n_; ++k) {
      for (int kp = 0; kp < n_; ++kp) {
        f.at(k, kp) = from_pauli(state_[static_cast<std::size_t>(k) * n_ + kp]);
      }
    }
    return f;
  }

 private:
  int n_;
  int time_ = 0;
  std::vector<Eigen::Matrix4cd> ops_;
  std::vector<BlochVec> state_;
};

inline BlockField evolve_blocks(const WalkParams& params, int t) {
  if (t < 0) {
    throw std::domain_error("time must be nonnegative");
  }
  FourierEvolver evolver(params);
  evolver.advance_to(t);
  return evolver.field();
}

namespace detail {

/// W(x, k) = e^{2 pi i x k / N}
inline DenseMatrix fourier_kernel(int n_sites) {
  DenseMatrix w(n_sites, n_sites);
  for (int x = 0; x < n_sites; ++x) {
    for (int k = 0; k < n_sites; ++k) {
      w(x, k) = root_of_unity(static_cast<long long>(x) * k, n_sites);
    }
  }
  return w;
}

}  // namespace detail

/// P_{xyjl} = (1/N^2) sum_{k,k'} e^{2 pi i (x k - y k')/N} A_jl(k,k'),
/// followed by rho <- (rho + rho^dag)/2.
inline DensityMatrix reconstruct_density(const BlockField& field) {
  const int n = field.n_sites();
  const DenseMatrix w = detail::fourier_kernel(n);
  const double norm = 1.0 / (static_cast<double>(n) * n);
  DenseMatrix rho(2 * n, 2 * n);
  DenseMatrix coeffs(n, n);
  for (int j = 0; j < 2; ++j) {
    for (int l = 0; l < 2; ++l) {
      for (int k = 0; k < n; ++k) {
        for (int kp = 0; kp < n; ++kp) {
          coeffs(k, kp) = field.at(k, kp)(j, l);
        }
      }
      const DenseMatrix p = norm * (w * coeffs * w.adjoint());
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          rho(basis_index(x, j), basis_index(y, l)) = p(x, y);
        }
      }
    }
  }
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

/// P(x) = (1/N^2) sum_{k,k'} e^{2 pi i x (k - k')/N} [A11 + A22](k,k')
inline std::vector<double> position_distribution_fourier(const BlockField& field) {
  const int n = field.n_sites();
  const double norm = 1.0 / (static_cast<double>(n) * n);
  std::vector<double> probs(n);
  for (int x = 0; x < n; ++x) {
    Complex sum = 0.0;
    for (int k = 0; k < n; ++k) {
      for (int kp = 0; kp < n; ++kp) {
        sum += root_of_unity(static_cast<long long>(x) * (k - kp), n) * field.at(k, kp).trace();
      }
    }
    probs[x] = norm * sum.real();
  }
  return probs;
}

/// Largest imaginary part left over in the Fourier position sum; zero up to
/// rounding for a Hermitian-paired field.
inline double position_distribution_imag_residual(const BlockField& field) {
  const int n = field.n_sites();
  const double norm = 1.0 / (static_cast<double>(n) * n);
  double worst = 0.0;
  for (int x = 0; x < n; ++x) {
    Complex sum = 0.0;
    for (int k = 0; k < n; ++k) {
      for (int kp = 0; kp < n; ++kp) {
        sum += root_of_unity(static_cast<long long>(x) * (k - kp), n) * field.at(k, kp).trace();
      }
    }
    worst = std::max(worst, std::abs(norm * sum.imag()));
  }
  return worst;
}

struct ContractionReport {
  int trials = 0;
  int skipped = 0;  // zero-norm inputs
  double max_ratio = 1.0;
  double min_ratio = 1.0;
  bool contractive = true;  // every ratio <= 1 + 1e-12
};

/// <SB,SB> / <B,B>; defined as 1 for B = 0.
inline double contraction_ratio(const SuperOp& op, const CoinBlock& b) {
  const double in = (b.adjoint() * b).trace().real();
  if (in == 0.0) {
    return 1.0;
  }
  const CoinBlock out = apply(op, b);
  return (out.adjoint() * out).trace().real() / in;
}

/// Hilbert-Schmidt ratio <SB,SB>/<B,B> over random complex 2x2 inputs,
/// with <M1,M2> = tr(M1^dag M2).
inline ContractionReport contraction_check(const SuperOp& op, int trials, std::uint64_t seed = 1) {
  if (trials < 1) {
    throw std::invalid_argument("contraction_check needs at least one trial");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ContractionReport report;
  report.trials = trials;
  bool first = true;
  for (int i = 0; i < trials; ++i) {
    CoinBlock b;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        b(r, c) = Complex(gauss(rng), gauss(rng));
      }
    }
    if (b.isZero(0.0)) {
      ++report.skipped;
      continue;
    }
    const double ratio = contraction_ratio(op, b);
    if (first) {
      report.max_ratio = report.min_ratio = ratio;
      first = false;
    } else {
      report.max_ratio = std::max(report.max_ratio, ratio);
      report.min_ratio = std::min(report.min_ratio, ratio);
    }
  }
  report.contractive = report.max_ratio <= 1.0 + 1e-12;
  return report;
}

}  // namespace qwalk
