#pragma once

#include <Eigen/Dense>
#include <vector>

#include "graftlab/errors.hpp"
#include "graftlab/tolerances.hpp"

namespace graftlab {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Represents exp(logScale) * entries. After normalize() the largest entry
// modulus lies in [1/2, 1) and the scaling is exact (powers of two).
struct ScaledMatrix {
    Mat entries;
    double logScale = 0.0;

    ScaledMatrix() = default;
    ScaledMatrix(Mat m, double ls = 0.0);

    int dim() const { return static_cast<int>(entries.rows()); }
    void normalize();
    // entries * exp(logScale); overflows for far-from-identity elements
    Mat represented() const;
    // log|det| of the represented matrix
    double log_abs_det() const;
    int det_sign() const;

    static ScaledMatrix identity(int d);
    static ScaledMatrix diagonal_exp(const Vec& v);
};

ScaledMatrix scaled_mul(const ScaledMatrix& a, const ScaledMatrix& b);
ScaledMatrix scaled_inverse(const ScaledMatrix& a);
ScaledMatrix scaled_power(const ScaledMatrix& a, int n);

struct SpectralLog {
    Vec values;             // descending, recentred to sum zero
    double residual = 0.0;  // mean that was subtracted
};

SpectralLog svd_log(const ScaledMatrix& m);
SpectralLog eig_log_moduli(const ScaledMatrix& m);

// Parlett-Reinsch diagonal balancing; returns the balanced copy
Mat balance(const Mat& a);

ScaledMatrix exterior_power(const ScaledMatrix& m, int k);
// k-subsets of {0..d-1} in lexicographic order, indexing rows/cols of exterior_power
std::vector<std::vector<int>> k_subsets(int d, int k);
double minor_det(const Mat& m, const std::vector<int>& rows, const std::vector<int>& cols);

// equality in PSL_d after dividing out scale and sign
bool psl_equal(const ScaledMatrix& a, const ScaledMatrix& b, double tol);

}  // namespace graftlab
