#include "fockstat/fock_expansion.hpp"

#include "fockstat/summation.hpp"

namespace fockstat {

double FockExpansion::amplitude(std::size_t n) const {
  if (n < offset || n > top()) return 0.0;
  return coefficients[n - offset];
}

std::size_t FockExpansion::top_occupied() const {
  for (std::size_t i = coefficients.size(); i-- > 0;) {
    if (coefficients[i] != 0.0) return offset + i;
  }
  return offset;
}

double FockExpansion::norm_squared() const {
  CompensatedSum acc;
  for (const double c : coefficients) acc += c * c;
  return acc.value();
}

std::vector<double> FockExpansion::dense(std::size_t dimension) const {
  std::vector<double> out(dimension, 0.0);
  for (std::size_t i = 0; i < coefficients.size() && offset + i < dimension; ++i) {
    out[offset + i] = coefficients[i];
  }
  return out;
}

FockExpansion fock_state(std::size_t n) { return FockExpansion{n, {1.0}, 0.0}; }

}  // namespace fockstat
