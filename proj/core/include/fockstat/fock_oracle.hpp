#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fockstat/fock_expansion.hpp"
#include "fockstat/observables.hpp"

namespace fockstat {

/// Brute-force reference: dense ladder-operator matrices on span{|0>..|D-1>}.
/// Deliberately shares no code with the closed-form paths it checks.

enum class Ladder { a, adag };

using OperatorWord = std::vector<Ladder>;

inline constexpr std::size_t kMaxWordLength = 6;
inline constexpr double kOracleNormTolerance = 1e-10;

/// a^p followed on the right by a^{dagger q}, i.e. the word for a^p a^{dagger q}.
OperatorWord antinormal_word(std::size_t p, std::size_t q);

class TruncatedFockSpace {
 public:
  explicit TruncatedFockSpace(std::size_t dimension);

  std::size_t dimension() const { return dimension_; }
  const Eigen::MatrixXd& annihilation() const { return annihilation_; }
  const Eigen::MatrixXd& creation() const { return creation_; }

  /// Product of the word's matrices, leftmost operator first. No margin
  /// check: entries near the cutoff carry truncation artifacts.
  Eigen::MatrixXd word_matrix(std::span<const Ladder> word) const;

  Eigen::VectorXd embed(const FockExpansion& expansion) const;

  /// Image of the state under the word (rightmost operator acts first).
  /// Throws TruncationRiskError unless dimension >= top occupied index +
  /// word length + 2, and DomainError for non-unit states or words longer
  /// than kMaxWordLength.
  Eigen::VectorXd apply_word(const Eigen::VectorXd& state, std::span<const Ladder> word) const;
  Eigen::VectorXd apply_word(const Eigen::VectorXd& state, std::initializer_list<Ladder> word) const {
    return apply_word(state, std::span<const Ladder>(word.begin(), word.size()));
  }

  /// <psi| word |psi>.
  double expectation(const Eigen::VectorXd& state, std::span<const Ladder> word) const;
  double expectation(const Eigen::VectorXd& state, std::initializer_list<Ladder> word) const {
    return expectation(state, std::span<const Ladder>(word.begin(), word.size()));
  }

 private:
  void check(const Eigen::VectorXd& state, std::size_t word_length) const;

  std::size_t dimension_;
  Eigen::MatrixXd annihilation_;
  Eigen::MatrixXd creation_;
};

/// Smallest dimension the oracle accepts for a state and word length.
std::size_t safe_dimension(const FockExpansion& expansion, std::size_t word_length);

/// <a>, <a^2>, <a^dagger a>, <(a^dagger a)^2> evaluated by matrix products.
MomentSet oracle_moments(const FockExpansion& expansion);

/// ||a^{dagger k} psi||^2 = <psi| a^k a^{dagger k} |psi> by repeated matrix application.
double oracle_excitation_norm(const FockExpansion& expansion, unsigned k);

}  // namespace fockstat
