#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "graftlab/scaled_matrix.hpp"
#include "graftlab/wedge_tower.hpp"

namespace graftlab {

using Mat2 = Eigen::Matrix2d;

struct FinslerFunctional {
    Vec weights;  // strictly decreasing, w_i = -w_{d+1-i}
    double scale = 1.0;

    int dim() const { return static_cast<int>(weights.size()); }
    static FinslerFunctional standard(int d);
    static FinslerFunctional custom(Vec weights, double scale);
};

// the principal direction (d-1, d-3, ..., 1-d)
Vec principal_direction(int d);
Vec sorted_desc(const Vec& v);
double finsler_norm(const Vec& v, const FinslerFunctional& f);
// unsorted evaluation of the linear functional
double alpha0(const Vec& v, const FinslerFunctional& f);

// irreducible representation SL_2 -> SL_d on homogeneous polynomials of
// degree d-1 in an orthonormal monomial basis
template <class T>
Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> tau_matrix_of(const Eigen::Matrix<T, 2, 2>& m, int d);
Mat tau_matrix(const Mat2& m, int d);
ScaledMatrix tau_embed(const Mat2& m, int d);
// tau(U) tau(S) tau(V^T) from the SVD of m; minors stay accurate for large m
WedgeTower tau_tower(const Mat2& m, int d);

Mat2 sl2_hyperbolic(double t);   // diag(e^t, e^-t)
Mat2 sl2_rotation(double theta); // rotation by theta/2
Mat2 sl2_positive(double t);     // [[cosh t, sinh t],[sinh t, cosh t]]

struct Sl2Generators {
    ScaledMatrix a;       // tau(diag(e^t, e^-t))
    ScaledMatrix r;       // tau(rotation)
    ScaledMatrix aPrime;  // r_{pi/2} a r_{pi/2}^{-1}
};
Sl2Generators sl2_generators(int d, double t, double theta);

template <class T>
Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> tau_matrix_of(const Eigen::Matrix<T, 2, 2>& m, int d) {
    if (d < 2) throw DimensionError("tau: d >= 2 required");
    const int n = d - 1;
    auto binom = [](int n, int k) {
        T r = 1;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> out(d, d);
    for (int k = 0; k <= n; ++k) {
        // (aX + cY)^{n-k} (bX + eY)^k, coefficient of X^{n-j} Y^j at index j
        std::vector<T> p{T(1)};
        auto times = [&p](T x, T y) {
            std::vector<T> q(p.size() + 1, T(0));
            for (size_t i = 0; i < p.size(); ++i) {
                q[i] += x * p[i];
                q[i + 1] += y * p[i];
            }
            p = std::move(q);
        };
        for (int i = 0; i < n - k; ++i) times(m(0, 0), m(1, 0));
        for (int i = 0; i < k; ++i) times(m(0, 1), m(1, 1));
        for (int j = 0; j <= n; ++j) out(j, k) = p[j] * std::sqrt(binom(n, k) / binom(n, j));
    }
    return out;
}

// distance in the upper half plane from i to m.i
double hyperbolic_displacement(const Mat2& m);

// points of SL_d/SO_d, stored as a factor a with p = a a^T (up to a positive
// scalar); g acts by a -> g a
struct SymPoint {
    ScaledMatrix factor;
    int dim() const { return factor.dim(); }
    // unit-determinant positive definite matrix
    Mat matrix() const;
    static SymPoint origin(int d);
    static SymPoint from_matrix(const Mat& spd);
    static SymPoint orbit(const ScaledMatrix& g);
};
SymPoint act(const ScaledMatrix& g, const SymPoint& x);

// vector Cartan projection: log singular values of a_x^{-1} a_y
SpectralLog cartan_between(const SymPoint& x, const SymPoint& y);
double finsler_distance(const SymPoint& x, const SymPoint& y, const FinslerFunctional& f);
double finsler_displacement(const ScaledMatrix& g, const FinslerFunctional& f);
double finsler_displacement(const WedgeTower& g, const FinslerFunctional& f);
double finsler_translation_length(const ScaledMatrix& g, const FinslerFunctional& f);
double finsler_translation_length(const WedgeTower& g, const FinslerFunctional& f);

// complete flag given by an adapted basis: V_k = span of the first k columns
struct Flag {
    Mat basis;
    int dim() const { return static_cast<int>(basis.rows()); }
    static Flag standard(int d);
    static Flag opposite(int d);
};
Flag act(const ScaledMatrix& g, const Flag& f);

// partial sums of the result are log(|w_k|_x / |w_k|_y) with w_k spanning V_k
Vec busemann_vector(const Flag& xi, const SymPoint& x, const SymPoint& y);
// smallest normalised pairing det[xi_1..xi_k | eta_1..eta_{d-k}] over k
double flag_pairing(const Flag& xi, const Flag& eta);
bool flag_transverse(const Flag& xi, const Flag& eta, double tol = 1e-10);

struct FlatChart {
    SymPoint base;
    Mat frame;   // chart(v) has factor frame * diag(e^v)
    Vec lambda;  // coordinates of the second point
    SymPoint point(const Vec& v) const;
};
FlatChart flat_through(const SymPoint& x, const SymPoint& y);

struct DiamondDistance {
    double bound = 0.0;
    int level = 0;
};
// upper bound for the distance from z to the diamond of x,y, using the
// diamond inside a maximal flat through x and y
DiamondDistance distance_to_diamond(const SymPoint& x, const SymPoint& y, const SymPoint& z,
                                    const FinslerFunctional& f, int budget);

}  // namespace graftlab
