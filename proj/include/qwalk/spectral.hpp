// Spectrum of the coin superoperator L_{kk'}: closed-form characteristic
// polynomial, dense eigensolve with polynomial residuals, the unit-eigenvalue
// structure, the 3x3 blocks left after splitting off +-1, and the limiting
// diagonal density operator.
#pragma once

#include "qwalk/evolution_direct.hpp"
#include "qwalk/evolution_fourier.hpp"
#include "qwalk/walk_core.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qwalk {

/// f(lambda) = c4 lambda^4 + c3 lambda^3 + c2 lambda^2 + c1 lambda + c0
struct QuarticCoeffs {
  Complex c4 = 1.0;
  Complex c3 = 0.0;
  Complex c2 = 0.0;
  Complex c1 = 0.0;
  Complex c0 = 0.0;

  Complex operator()(Complex lambda) const {
    return (((c4 * lambda + c3) * lambda + c2) * lambda + c1) * lambda + c0;
  }
};

inline QuarticCoeffs characteristic_coeffs(int k, int k_prime, const WalkParams& params) {
  params.validate();
  check_momentum(k, params.n_sites);
  check_momentum(k_prime, params.n_sites);
  const double cp = cycle_trig(static_cast<long long>(k_prime) + k, params.n_sites).c;
  const double cm = cycle_trig(static_cast<long long>(k_prime) - k, params.n_sites).c;
  const double q = 1.0 - params.decoherence_rate;
  const double c2b = std::cos(2.0 * params.coin_angle);

  QuarticCoeffs f;
  f.c4 = 1.0;
  f.c3 = (1.0 + c2b) * (q * cp - cm);
  f.c2 = (1.0 + q * q) * c2b - 2.0 * q * cp * cm * (1.0 + c2b);
  f.c1 = q * (1.0 + c2b) * (cp - q * cm);
  f.c0 = q * q;
  return f;
}

struct UnitEigenvalue {
  double value;  // +1 or -1
  int multiplicity;
};

struct SpectrumReport {
  int k = 0;
  int k_prime = 0;
  std::array<Complex, 4> eigenvalues{};  // descending modulus, ties by ascending phase
  double max_modulus = 0.0;
  std::vector<UnitEigenvalue> unit_eigenvalues;
  double spectral_gap = 0.0;  // 1 - second-largest modulus
  double max_residual = 0.0;  // max |f(lambda)| over the four eigenvalues
  /// Set only for 0 < p < 1: whether +1 appears exactly when k = k' and -1
  /// exactly when |k - k'| = N/2, each simple.
  std::optional<bool> unit_structure_ok;

  int multiplicity_of(double value) const {
    for (const auto& u : unit_eigenvalues) {
      if (u.value == value) {
        return u.multiplicity;
      }
    }
    return 0;
  }
};

inline constexpr double kUnitEigenTolerance = 1e-7;

inline bool is_antipodal_pair(int k, int k_prime, int n_sites) {
  return n_sites % 2 == 0 && std::abs(k - k_prime) == n_sites / 2;
}

inline SpectrumReport spectrum(int k, int k_prime, const WalkParams& params) {
  const SuperOp op = superoperator_matrix(k, k_prime, params);
  const QuarticCoeffs f = characteristic_coeffs(k, k_prime, params);

  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(op.matrix, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed to converge");
  }

  SpectrumReport report;
  report.k = k;
  report.k_prime = k_prime;
  for (int i = 0; i < 4; ++i) {
    report.eigenvalues[i] = solver.eigenvalues()(i);
  }
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
            [](const Complex& a, const Complex& b) {
              const double ma = std::abs(a);
              const double mb = std::abs(b);
              if (std::abs(ma - mb) > 1e-12) {
                return ma > mb;
              }
              return std::arg(a) < std::arg(b);
            });

  report.max_modulus = std::abs(report.eigenvalues[0]);
  report.spectral_gap = 1.0 - std::abs(report.eigenvalues[1]);
  for (const auto& lambda : report.eigenvalues) {
    report.max_residual = std::max(report.max_residual, std::abs(f(lambda)));
  }
  for (const double target : {1.0, -1.0}) {
    const auto count = std::count_if(
        report.eigenvalues.begin(), report.eigenvalues.end(),
        [target](const Complex& lambda) { return std::abs(lambda - target) < kUnitEigenTolerance; });
    if (count > 0) {
      report.unit_eigenvalues.push_back({target, static_cast<int>(count)});
    }
  }

  const double p = params.decoherence_rate;
  if (p > 0.0 && p < 1.0) {
    const int plus = report.multiplicity_of(1.0);
    const int minus = report.multiplicity_of(-1.0);
    const bool expect_plus = k == k_prime;
    const bool expect_minus = is_antipodal_pair(k, k_prime, params.n_sites);
    report.unit_structure_ok = plus == (expect_plus ? 1 : 0) && minus == (expect_minus ? 1 : 0);
  }
  return report;
}

/// Lower-right 3x3 block of L_{kk}, i.e. L_{kk} = [[1, 0], [0, Q0]], with
/// c~ = cos 4 pi k/N, s~ = sin 4 pi k/N.
inline Eigen::Matrix3d block_q0(int k, const WalkParams& params) {
  params.validate();
  check_momentum(k, params.n_sites);
  const auto [ct, st] = cycle_trig(2LL * k, params.n_sites);
  const double q = 1.0 - params.decoherence_rate;
  const double c2 = std::cos(2.0 * params.coin_angle);
  const double s2 = std::sin(2.0 * params.coin_angle);
  Eigen::Matrix3d m;
  m << -q * ct * c2, q * st, ct * s2,
       -q * st * c2, -q * ct, st * s2,
        q * s2, 0.0, c2;
  return m;
}

/// Lower-right 3x3 block of L_{kk'} for |k - k'| = N/2, where the leading
/// entry is c- = -1 and the first row and column vanish off the diagonal.
inline Eigen::Matrix3d block_q1(int k, int k_prime, const WalkParams& params) {
  params.validate();
  check_momentum(k, params.n_sites);
  check_momentum(k_prime, params.n_sites);
  if (!is_antipodal_pair(k, k_prime, params.n_sites)) {
    throw std::domain_error("block_q1 requires |k - k'| = N/2");
  }
  const auto [cp, sp] = cycle_trig(static_cast<long long>(k_prime) + k, params.n_sites);
  const double q = 1.0 - params.decoherence_rate;
  const double c2 = std::cos(2.0 * params.coin_angle);
  const double s2 = std::sin(2.0 * params.coin_angle);
  const double cm = -1.0;
  Eigen::Matrix3d m;
  m << -q * cp * c2, q * sp, cp * s2,
       -q * sp * c2, -q * cp, sp * s2,
        q * cm * s2, 0.0, cm * c2;
  return m;
}

template <int Rows>
double spectral_radius(const Eigen::Matrix<double, Rows, Rows>& m) {
  Eigen::EigenSolver<Eigen::Matrix<double, Rows, Rows>> solver(m, false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

/// Limit of rho(t) for p > 0. Odd N: I/(2N). Even N: 1/N on both coin
/// slots of every x with x = t_parity (mod 2), zero elsewhere.
inline DensityMatrix stationary_density(int n_sites, int t_parity = 0) {
  if (n_sites < 2) {
    throw std::domain_error("n_sites must be >= 2");
  }
  if (t_parity != 0 && t_parity != 1) {
    throw std::domain_error("t_parity must be 0 or 1");
  }
  DenseMatrix rho = DenseMatrix::Zero(2 * n_sites, 2 * n_sites);
  for (int x = 0; x < n_sites; ++x) {
    double weight = 1.0 / (2.0 * n_sites);
    if (n_sites % 2 == 0) {
      weight = (x % 2 == t_parity) ? 1.0 / n_sites : 0.0;
    }
    rho(2 * x, 2 * x) = weight;
    rho(2 * x + 1, 2 * x + 1) = weight;
  }
  return DensityMatrix(std::move(rho));
}

/// Stationary operator matched to time t (parity only matters for even N).
inline DensityMatrix stationary_density_at(int n_sites, int t) {
  return stationary_density(n_sites, n_sites % 2 == 0 ? t % 2 : 0);
}

/// Smallest spectral gap over all (k, k') pairs.
inline double min_spectral_gap(const WalkParams& params) {
  double gap = 1.0;
  bool first = true;
  for (int k = 0; k < params.n_sites; ++k) {
    for (int kp = 0; kp < params.n_sites; ++kp) {
      const double g = spectrum(k, kp, params).spectral_gap;
      gap = first ? g : std::min(gap, g);
      first = false;
    }
  }
  return gap;
}

}  // namespace qwalk
