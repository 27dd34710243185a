#include "oracles.hpp"
#include "qwalk/evolution_direct.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using qwalk::Complex;
using qwalk::DenseMatrix;
using qwalk::DensityMatrix;
using qwalk::kPi;

namespace {

qwalk::WalkParams make(int n, double p, double beta = kPi / 4,
                       qwalk::CoinState psi = qwalk::CoinState(1.0, 0.0)) {
  qwalk::WalkParams wp;
  wp.n_sites = n;
  wp.decoherence_rate = p;
  wp.coin_angle = beta;
  wp.initial_coin = psi;
  return wp;
}

}  // namespace

TEST(Shift, TwoCycleSwapsPositionsAndSquaresToIdentity) {
  const DenseMatrix s = qwalk::shift_operator(2);
  DenseMatrix expected = DenseMatrix::Zero(4, 4);
  expected(2, 0) = expected(3, 1) = expected(0, 2) = expected(1, 3) = 1.0;
  EXPECT_EQ((s - expected).norm(), 0.0);
  EXPECT_EQ((s * s - DenseMatrix::Identity(4, 4)).norm(), 0.0);
}

TEST(Shift, IsPermutationAndUnitary) {
  for (int n = 2; n <= 9; ++n) {
    const DenseMatrix s = qwalk::shift_operator(n);
    EXPECT_EQ((s * s.adjoint() - DenseMatrix::Identity(2 * n, 2 * n)).norm(), 0.0);
    for (int c = 0; c < 2 * n; ++c) {
      EXPECT_EQ(s.col(c).cwiseAbs().sum(), 1.0);
    }
  }
}

TEST(Shift, CoinOneMovesRightCoinTwoMovesLeft) {
  const DenseMatrix s = qwalk::shift_operator(4);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(8);
  e(qwalk::basis_index(0, 0)) = 1.0;
  const Eigen::VectorXcd out = s * e;
  EXPECT_EQ(out(qwalk::basis_index(1, 0)), Complex(1.0));
  e.setZero();
  e(qwalk::basis_index(0, 1)) = 1.0;
  EXPECT_EQ((s * e)(qwalk::basis_index(3, 1)), Complex(1.0));
}

TEST(Shift, RejectsTinyCycle) { EXPECT_THROW(qwalk::shift_operator(1), std::domain_error); }

TEST(EvolutionOperator, HandMultipliedTwoCycleHadamard) {
  const DenseMatrix u = qwalk::evolution_operator(make(2, 0.0));
  const double h = 1.0 / std::sqrt(2.0);
  DenseMatrix expected(4, 4);
  expected << 0, 0, h, h,
              0, 0, h, -h,
              h, h, 0, 0,
              h, -h, 0, 0;
  EXPECT_LT((u - expected).norm(), 1e-15);
}

TEST(EvolutionOperator, UnitaryAndIndependentOfRate) {
  for (int n = 2; n <= 8; ++n) {
    for (double beta : {kPi / 6, kPi / 4, 1.3}) {
      const DenseMatrix u = qwalk::evolution_operator(make(n, 0.0, beta));
      EXPECT_LT((u * u.adjoint() - DenseMatrix::Identity(2 * n, 2 * n)).norm(), 1e-13);
      EXPECT_EQ((u - qwalk::evolution_operator(make(n, 0.7, beta))).norm(), 0.0);
    }
  }
}

// rho(1) for N = 3, p = 0.5, beta = pi/4, psi0 = (1, i)/sqrt(2), expanded by
// hand: the three Kraus branches give (1+i, 1-i)/(2 sqrt 2), (1, 1)/(2 sqrt 2)
// and (i, -i)/(2 sqrt 2) on (|1>|1>, |2>|2>), so
//   rho[2,2] = rho[5,5] = 1/2, rho[2,5] = i/4, rho[5,2] = -i/4.
TEST(Step, OneStepMatchesHandExpansion) {
  const auto params = make(3, 0.5, kPi / 4, qwalk::CoinState(1.0, Complex(0, 1)) / std::sqrt(2.0));
  const DensityMatrix rho = qwalk::evolve(params, 1);
  DenseMatrix expected = DenseMatrix::Zero(6, 6);
  expected(2, 2) = 0.5;
  expected(5, 5) = 0.5;
  expected(2, 5) = Complex(0, 0.25);
  expected(5, 2) = Complex(0, -0.25);
  EXPECT_LT((rho.matrix() - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(rho.purity(), 0.625, 1e-15);
}

TEST(Step, CoherentStepIsConjugationByU) {
  const auto params = make(5, 0.0, 0.7);
  const DenseMatrix u = qwalk::evolution_operator(params);
  std::mt19937_64 rng(3);
  const DensityMatrix rho(oracle::random_density(10, rng));
  const DensityMatrix out = qwalk::step(rho, u, qwalk::kraus_operators(0.0));
  EXPECT_LT((out.matrix() - u * rho.matrix() * u.adjoint()).norm(), 1e-14);
}

TEST(Step, PreservesTraceHermiticityAndPositivity) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> n_dist(2, 7);
  std::uniform_real_distribution<double> p_dist(0.0, 1.0);
  std::uniform_real_distribution<double> b_dist(0.05, kPi / 2 - 0.05);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = n_dist(rng);
    const auto params = make(n, p_dist(rng), b_dist(rng));
    const DensityMatrix rho(oracle::random_density(2 * n, rng, 1 + trial % (2 * n)));
    const DensityMatrix out =
        qwalk::step(rho, qwalk::evolution_operator(params), qwalk::kraus_operators(params.decoherence_rate));
    EXPECT_LT(std::abs(out.trace() - rho.trace()), 1e-13);
    EXPECT_TRUE(out.is_valid()) << "trial " << trial;
  }
}

TEST(Step, RejectsDimensionMismatch) {
  const DensityMatrix rho = qwalk::initial_density(make(3, 0.2));
  EXPECT_THROW(qwalk::step(rho, qwalk::evolution_operator(make(4, 0.2)), qwalk::kraus_operators(0.2)),
               std::invalid_argument);
}

TEST(Evolve, InitialStateIsPureProduct) {
  const auto params = make(4, 0.3, 0.5, qwalk::CoinState(0.6, Complex(0, 0.8)));
  const DensityMatrix rho = qwalk::evolve(params, 0);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-15);
  EXPECT_LT((rho.matrix().block<2, 2>(0, 0) - qwalk::projector(params.initial_coin)).norm(), 1e-15);
  const double corner = rho.matrix().block<2, 2>(0, 0).cwiseAbs().sum();
  EXPECT_NEAR(rho.matrix().cwiseAbs().sum(), corner, 1e-15);
}

TEST(Evolve, CoherentEvolutionStaysPure) {
  for (int n : {3, 4, 7}) {
    qwalk::DirectEvolver ev(make(n, 0.0, 0.9, qwalk::CoinState(1.0, Complex(0, 1)) / std::sqrt(2.0)));
    for (int t = 1; t <= 60; ++t) {
      ev.advance();
      EXPECT_NEAR(ev.state().purity(), 1.0, 1e-10);
    }
  }
}

// A measurement-basis initial coin survives the first step intact, so purity
// is only non-increasing step by step; it must still drop over a few steps.
TEST(Evolve, PurityDecaysUnderDecoherence) {
  for (int n : {3, 4, 5, 8}) {
    for (double p : {0.1, 0.5, 0.9}) {
      qwalk::DirectEvolver ev(make(n, p, kPi / 4));
      double prev = ev.state().purity();
      for (int t = 1; t <= 10; ++t) {
        ev.advance();
        const double cur = ev.state().purity();
        EXPECT_LE(cur, prev + 1e-12) << "n=" << n << " p=" << p << " t=" << t;
        prev = cur;
      }
      EXPECT_LT(prev, 0.9);
    }
  }
}

TEST(Evolve, ClassicalLimitMatchesMarkovChain) {
  for (int n = 3; n <= 8; ++n) {
    const auto expected = oracle::classical_walk(n, 50);
    qwalk::DirectEvolver ev(make(n, 1.0, kPi / 4, qwalk::CoinState(0.6, 0.8)));
    for (int t = 0; t <= 50; ++t) {
      if (t > 0) ev.advance();
      const auto probs = qwalk::position_distribution(ev.state());
      for (int x = 0; x < n; ++x) {
        EXPECT_NEAR(probs[x], expected[t][x], 1e-12) << "n=" << n << " t=" << t << " x=" << x;
      }
    }
  }
}

TEST(PositionDistribution, OriginAtTimeZero) {
  const auto probs = qwalk::position_distribution(qwalk::initial_density(make(6, 0.2)));
  EXPECT_EQ(probs[0], 1.0);
  for (int x = 1; x < 6; ++x) EXPECT_EQ(probs[x], 0.0);
}

TEST(PositionDistribution, OneStepSupportIsNeighbours) {
  for (int n = 3; n <= 8; ++n) {
    for (double p : {0.0, 0.4, 1.0}) {
      for (double beta : {0.3, kPi / 4, 1.2}) {
        const auto probs = qwalk::position_distribution(qwalk::evolve(make(n, p, beta), 1));
        double total = 0.0;
        for (int x = 0; x < n; ++x) {
          total += probs[x];
          if (x != 1 && x != n - 1) {
            EXPECT_NEAR(probs[x], 0.0, 1e-15);
          }
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
      }
    }
  }
}

TEST(PositionDistribution, EvenCycleParityConservation) {
  for (int n : {4, 6, 8}) {
    for (double p : {0.0, 0.3, 1.0}) {
      qwalk::DirectEvolver ev(make(n, p, 0.6));
      for (int t = 0; t <= 40; ++t) {
        if (t > 0) ev.advance();
        const auto probs = qwalk::position_distribution(ev.state());
        for (int x = 0; x < n; ++x) {
          EXPECT_GE(probs[x], -1e-12);
          if ((t - x) % 2 != 0) {
            EXPECT_NEAR(probs[x], 0.0, 1e-14);
          }
        }
      }
    }
  }
}
