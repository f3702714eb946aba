#pragma once

#include <random>

#include "graftlab/lie_symmetric.hpp"

namespace graftlab {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
Vec random_trace_free(int d, Rng& rng, double amplitude);
// k1 diag(e^s, e^-s) k2 with s uniform in [0, spread]
Mat2 random_sl2(Rng& rng, double spread);
// products of positive diagonals and elementary Jacobi matrices
ScaledMatrix random_tnn(int d, Rng& rng);
// a'_t exp(z) a'_s with t, s in [0.1, 1]
ScaledMatrix random_tp(int d, Rng& rng);

}  // namespace graftlab
