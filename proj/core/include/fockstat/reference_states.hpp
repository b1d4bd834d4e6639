#pragma once

#include "fockstat/fock_expansion.hpp"
#include "fockstat/states.hpp"

namespace fockstat {

/// Coherent state |alpha> for real alpha >= 0, cut with a Poisson-tail bound.
FockExpansion coherent_expansion(double alpha, double tail_tolerance = kDefaultTailTolerance);

/// Excited coherent state a^{dagger k}|alpha>, normalized by the directly
/// summed norm of the retained amplitudes.
FockExpansion ecs_expansion(unsigned k, double alpha, double tail_tolerance = kDefaultTailTolerance);

/// max_n |a_n - b_n| over the union of retained indices.
double limit_distance(const FockExpansion& a, const FockExpansion& b);

}  // namespace fockstat
