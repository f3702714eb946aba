#pragma once

#include "graftlab/scaled_matrix.hpp"

namespace graftlab {

struct QpResult {
    Vec x;
    int iterations = 0;
    std::vector<int> active;
};

// argmin 0.5*|x - target|^2 subject to A x <= b (dual active-set method of
// Goldfarb and Idnani specialised to the identity Hessian).
QpResult project_onto_polytope(const Mat& A, const Vec& b, const Vec& target, int maxIterations = 10000);

}  // namespace graftlab
