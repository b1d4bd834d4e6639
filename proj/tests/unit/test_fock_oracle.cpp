#include <gtest/gtest.h>

#include <cmath>

#include "exact_rational.hpp"
#include "fockstat/errors.hpp"
#include "fockstat/fock_oracle.hpp"
#include "fockstat/states.hpp"

namespace fockstat {
namespace {

using oracle::Rational;

TEST(TruncatedFockSpace, MatrixStructure) {
  const TruncatedFockSpace space(12);
  const auto& a = space.annihilation();
  for (Eigen::Index i = 0; i < 12; ++i) {
    for (Eigen::Index j = 0; j < 12; ++j) {
      EXPECT_EQ(a(i, j), j == i + 1 ? std::sqrt(double(j)) : 0.0);
    }
  }
  EXPECT_TRUE(space.creation() == a.transpose());
  const Eigen::MatrixXd commutator = a * space.creation() - space.creation() * a;
  const Eigen::MatrixXd lead = commutator.topLeftCorner(11, 11);
  EXPECT_LE((lead - Eigen::MatrixXd::Identity(11, 11)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_GT(std::abs(commutator(11, 11) - 1.0), 1.0);  // truncation artifact lives in the corner
  EXPECT_THROW(TruncatedFockSpace(0), DomainError);
}

TEST(Expectation, Examples) {
  const TruncatedFockSpace space(8);
  EXPECT_DOUBLE_EQ(space.expectation(space.embed(fock_state(0)), {Ladder::a, Ladder::adag}), 1.0);
  EXPECT_DOUBLE_EQ(space.expectation(space.embed(fock_state(2)), {Ladder::adag, Ladder::a}), 2.0);

  const auto bs = bs_coefficients({Family::bs, 0, 0.6, 2});
  const TruncatedFockSpace big(safe_dimension(bs, 4));
  const double b = big.expectation(big.embed(bs), {Ladder::a, Ladder::a, Ladder::adag, Ladder::adag});
  EXPECT_NEAR(b, normalization_ebs(2, 0.6, 2, NormalizationRoute::direct_sum).value, 1e-12 * b);
}

TEST(ApplyWord, Examples) {
  const TruncatedFockSpace space(6);
  const auto one = space.apply_word(space.embed(fock_state(0)), {Ladder::adag});
  EXPECT_EQ(one[1], 1.0);
  EXPECT_EQ(one.squaredNorm(), 1.0);
  const auto zero = space.apply_word(space.embed(fock_state(1)), {Ladder::a});
  EXPECT_EQ(zero[0], 1.0);
  EXPECT_EQ(zero.squaredNorm(), 1.0);

  const auto nbs = nbs_coefficients({Family::nbs, 0, 0.5, 1}, 1e-30);
  const auto target = nbs_coefficients({Family::nbs, 0, 0.5, 2}, 1e-30);
  const TruncatedFockSpace s(safe_dimension(nbs, 1));
  const auto image = s.apply_word(s.embed(nbs), {Ladder::a});
  for (std::size_t n = 0; n < nbs.top(); ++n) {
    EXPECT_NEAR(image[static_cast<Eigen::Index>(n)], target.amplitude(n) / std::sqrt(3.0), 1e-15);
  }
}

TEST(ApplyWord, Guards) {
  const TruncatedFockSpace space(5);
  const auto psi = space.embed(fock_state(2));
  // top occupied 2 + length 1 + 2 = 5 fits; length 2 would need 6.
  EXPECT_NO_THROW((void)space.apply_word(psi, {Ladder::adag}));
  EXPECT_THROW((void)space.apply_word(psi, {Ladder::adag, Ladder::adag}), TruncationRiskError);
  EXPECT_THROW((void)space.embed(fock_state(5)), TruncationRiskError);
  Eigen::VectorXd unnormalized = psi * 2.0;
  EXPECT_THROW((void)space.apply_word(unnormalized, {Ladder::a}), DomainError);
  const TruncatedFockSpace wide(20);
  const OperatorWord seven(7, Ladder::a);
  EXPECT_THROW((void)wide.apply_word(wide.embed(fock_state(0)), seven), DomainError);
  EXPECT_EQ(safe_dimension(fock_state(2), 1), 5u);
}

TEST(OracleMoments, AgreeWithFormulasOnGrid) {
  for (const Family family : {Family::ebs, Family::enbs}) {
    for (const unsigned M : {1u, 2u, 5u, 10u}) {
      for (unsigned k = 0; k <= 3; ++k) {
        for (int i = 1; i <= 9; ++i) {
          const auto e = state_expansion({family, k, 0.1 * i, M}, 1e-20);
          if (safe_dimension(e, 4) > 300) continue;
          const auto f = moments(e);
          const auto o = oracle_moments(e);
          for (const auto& [x, y] : {std::pair{f.mean_a, o.mean_a}, std::pair{f.mean_a2, o.mean_a2},
                                     std::pair{f.mean_n, o.mean_n}, std::pair{f.mean_n2, o.mean_n2}}) {
            const double tol = std::max(1e-12, 1e-10 * std::max(std::abs(x), std::abs(y)));
            EXPECT_NEAR(x, y, tol) << to_string(family) << " k=" << k << " eta=" << 0.1 * i << " M=" << M;
          }
        }
      }
    }
  }
}

TEST(ExactRationalSum, Examples) {
  EXPECT_EQ(oracle::enbs_finite_sum(1, oracle::parse_rational("1/4"), 1), Rational(4, 3));
  for (const char* e2 : {"0", "1/7", "1/2", "5/6", "1"}) {
    for (unsigned M = 1; M <= 20; ++M) {
      EXPECT_EQ(oracle::ebs_normalization(0, oracle::parse_rational(e2), M), Rational(1)) << e2 << " " << M;
    }
  }
  EXPECT_EQ(oracle::hyp2f1(-1, -1, Rational(2), Rational(4)), Rational(3));
  EXPECT_EQ(oracle::exact_rational_sum([](unsigned j) { return Rational(1, j + 1); }, 3), Rational(11, 6));
}

TEST(ExactRationalSum, RejectsBadInput) {
  EXPECT_THROW((void)oracle::exact_rational_sum([](unsigned) { return Rational(1); }, 201), DomainError);
  EXPECT_THROW((void)oracle::parse_rational("0.25"), DomainError);
  EXPECT_THROW((void)oracle::parse_rational("1/0"), DomainError);
  EXPECT_THROW((void)oracle::parse_rational("pi"), DomainError);
  EXPECT_THROW((void)oracle::from_double(NAN), DomainError);
  EXPECT_EQ(oracle::from_double(0.375), Rational(3, 8));
}

TEST(OracleExcitationNorm, MatchesBothNormalizations) {
  for (const double eta : {0.25, 0.75}) {
    for (unsigned k = 0; k <= 4; ++k) {
      const auto bs = bs_coefficients({Family::bs, 0, eta, 5});
      const double b = normalization_ebs(k, eta, 5, NormalizationRoute::hypergeometric).value;
      EXPECT_NEAR(oracle_excitation_norm(bs, k), b, 1e-11 * b);
      const auto nbs = nbs_coefficients({Family::nbs, 0, eta, 3}, 1e-30);
      const double bm = normalization_enbs(k, eta, 3, NormalizationRoute::finite_sum).value;
      EXPECT_NEAR(oracle_excitation_norm(nbs, k), bm, 1e-11 * bm);
    }
  }
}

}  // namespace
}  // namespace fockstat
