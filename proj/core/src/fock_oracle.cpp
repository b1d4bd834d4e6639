#include "fockstat/fock_oracle.hpp"

#include <cmath>

#include <fmt/core.h>

#include "fockstat/errors.hpp"

namespace fockstat {

OperatorWord antinormal_word(std::size_t p, std::size_t q) {
  OperatorWord word(p, Ladder::a);
  word.insert(word.end(), q, Ladder::adag);
  return word;
}

TruncatedFockSpace::TruncatedFockSpace(std::size_t dimension)
    : dimension_(dimension), annihilation_(Eigen::MatrixXd::Zero(dimension, dimension)) {
  if (dimension == 0) throw DomainError("Fock space dimension must be positive");
  for (std::size_t n = 1; n < dimension; ++n) {
    annihilation_(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  creation_ = annihilation_.transpose();
}

Eigen::MatrixXd TruncatedFockSpace::word_matrix(std::span<const Ladder> word) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(dimension_, dimension_);
  for (const Ladder op : word) {
    out = out * (op == Ladder::a ? annihilation_ : creation_);
  }
  return out;
}

Eigen::VectorXd TruncatedFockSpace::embed(const FockExpansion& expansion) const {
  if (expansion.top_occupied() >= dimension_) {
    throw TruncationRiskError(fmt::format("state occupies index {} beyond dimension {}",
                                          expansion.top_occupied(), dimension_));
  }
  const auto dense = expansion.dense(dimension_);
  return Eigen::Map<const Eigen::VectorXd>(dense.data(), static_cast<Eigen::Index>(dense.size()));
}

void TruncatedFockSpace::check(const Eigen::VectorXd& state, std::size_t word_length) const {
  if (static_cast<std::size_t>(state.size()) != dimension_) {
    throw DomainError(fmt::format("state has length {} but the space has dimension {}", state.size(), dimension_));
  }
  if (word_length > kMaxWordLength) {
    throw DomainError(fmt::format("operator word length {} exceeds {}", word_length, kMaxWordLength));
  }
  if (std::abs(state.norm() - 1.0) > kOracleNormTolerance) {
    throw DomainError(fmt::format("oracle state must be normalized (|psi| = {:.17g})", state.norm()));
  }
  std::size_t top = 0;
  for (Eigen::Index i = state.size(); i-- > 0;) {
    if (state[i] != 0.0) {
      top = static_cast<std::size_t>(i);
      break;
    }
  }
  if (dimension_ < top + word_length + 2) {
    throw TruncationRiskError(fmt::format("dimension {} too small for top index {} and word length {} (need {})",
                                          dimension_, top, word_length, top + word_length + 2));
  }
}

Eigen::VectorXd TruncatedFockSpace::apply_word(const Eigen::VectorXd& state, std::span<const Ladder> word) const {
  check(state, word.size());
  Eigen::VectorXd v = state;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    v = (*it == Ladder::a ? annihilation_ : creation_) * v;
  }
  return v;
}

double TruncatedFockSpace::expectation(const Eigen::VectorXd& state, std::span<const Ladder> word) const {
  return state.dot(apply_word(state, word));
}

std::size_t safe_dimension(const FockExpansion& expansion, std::size_t word_length) {
  return expansion.top_occupied() + word_length + 2;
}

MomentSet oracle_moments(const FockExpansion& expansion) {
  const TruncatedFockSpace space(safe_dimension(expansion, 4));
  const Eigen::VectorXd psi = space.embed(expansion);
  using enum Ladder;
  return {space.expectation(psi, {a}), space.expectation(psi, {a, a}), space.expectation(psi, {adag, a}),
          space.expectation(psi, {adag, a, adag, a})};
}

double oracle_excitation_norm(const FockExpansion& expansion, unsigned k) {
  const TruncatedFockSpace space(safe_dimension(expansion, k));
  const Eigen::VectorXd psi = space.embed(expansion);
  return space.apply_word(psi, antinormal_word(0, k)).squaredNorm();
}

}  // namespace fockstat
