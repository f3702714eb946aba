#include "graftlab/lie_symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace graftlab {

Vec principal_direction(int d) {
    Vec u(d);
    for (int i = 0; i < d; ++i) u(i) = d - 1 - 2 * i;
    return u;
}

FinslerFunctional FinslerFunctional::standard(int d) {
    if (d < 2) throw DimensionError("FinslerFunctional: d >= 2 required");
    Vec w = principal_direction(d);
    return FinslerFunctional{w, 2.0 / w.squaredNorm()};
}

FinslerFunctional FinslerFunctional::custom(Vec weights, double scale) {
    const int d = static_cast<int>(weights.size());
    if (d < 2) throw DimensionError("FinslerFunctional: d >= 2 required");
    if (!(scale > 0.0)) throw DomainError("FinslerFunctional: scale must be positive");
    for (int i = 0; i + 1 < d; ++i)
        if (!(weights(i) > weights(i + 1))) throw DomainError("FinslerFunctional: weights must strictly decrease");
    for (int i = 0; i < d; ++i)
        if (std::abs(weights(i) + weights(d - 1 - i)) > 1e-12 * weights.cwiseAbs().maxCoeff())
            throw DomainError("FinslerFunctional: weights must be antisymmetric");
    return FinslerFunctional{std::move(weights), scale};
}

Vec sorted_desc(const Vec& v) {
    Vec s = v;
    std::sort(s.data(), s.data() + s.size(), std::greater<>());
    return s;
}

double finsler_norm(const Vec& v, const FinslerFunctional& f) {
    if (v.size() != f.weights.size()) throw DimensionError("finsler_norm: dimension mismatch");
    return f.scale * f.weights.dot(sorted_desc(v));
}

double alpha0(const Vec& v, const FinslerFunctional& f) {
    if (v.size() != f.weights.size()) throw DimensionError("alpha0: dimension mismatch");
    return f.scale * f.weights.dot(v);
}

Mat tau_matrix(const Mat2& m, int d) { return tau_matrix_of<double>(m, d); }

static void require_sl2(const Mat2& m) {
    if (std::abs(m.determinant() - 1.0) > default_tolerances().determinant * std::max(1.0, m.squaredNorm()))
        throw DomainError("tau_embed: input must lie in SL_2");
}

ScaledMatrix tau_embed(const Mat2& m, int d) {
    require_sl2(m);
    return ScaledMatrix(tau_matrix(m, d));
}

WedgeTower tau_tower(const Mat2& m, int d) {
    require_sl2(m);
    Eigen::JacobiSVD<Mat2> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    double s = std::log(svd.singularValues()(0));
    return WedgeTower(ScaledMatrix(tau_matrix(svd.matrixU(), d))) * WedgeTower::diagonal_exp(s * principal_direction(d)) *
           WedgeTower(ScaledMatrix(tau_matrix(svd.matrixV().transpose(), d)));
}

Mat2 sl2_hyperbolic(double t) {
    Mat2 m;
    m << std::exp(t), 0.0, 0.0, std::exp(-t);
    return m;
}

Mat2 sl2_rotation(double theta) {
    Mat2 m;
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    m << c, -s, s, c;
    return m;
}

Mat2 sl2_positive(double t) {
    Mat2 m;
    m << std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t);
    return m;
}

Sl2Generators sl2_generators(int d, double t, double theta) {
    Mat2 r = sl2_rotation(M_PI / 2);
    return Sl2Generators{tau_embed(sl2_hyperbolic(t), d), tau_embed(sl2_rotation(theta), d),
                         tau_embed(r * sl2_hyperbolic(t) * r.inverse(), d)};
}

double hyperbolic_displacement(const Mat2& m) {
    double c = 0.5 * m.squaredNorm();
    return std::acosh(std::max(1.0, c));
}

Mat SymPoint::matrix() const {
    const Mat& a = factor.entries;
    Mat p = a * a.transpose();
    p *= std::exp(-2.0 * (factor.log_abs_det() / dim() - factor.logScale));
    return 0.5 * (p + p.transpose());
}

SymPoint SymPoint::origin(int d) { return SymPoint{ScaledMatrix::identity(d)}; }

SymPoint SymPoint::from_matrix(const Mat& spd) {
    if (spd.rows() != spd.cols()) throw DimensionError("SymPoint: square matrix required");
    if ((spd - spd.transpose()).cwiseAbs().maxCoeff() > 1e-9 * spd.cwiseAbs().maxCoeff())
        throw DomainError("SymPoint: matrix is not symmetric");
    Eigen::LLT<Mat> llt(0.5 * (spd + spd.transpose()));
    if (llt.info() != Eigen::Success) throw DomainError("SymPoint: matrix is not positive definite");
    return SymPoint{ScaledMatrix(Mat(llt.matrixL()))};
}

SymPoint SymPoint::orbit(const ScaledMatrix& g) {
    if (g.det_sign() == 0) throw DomainError("SymPoint: singular matrix");
    return SymPoint{g};
}

SymPoint act(const ScaledMatrix& g, const SymPoint& x) {
    if (g.dim() != x.dim()) throw DimensionError("act: dimension mismatch");
    return SymPoint{scaled_mul(g, x.factor)};
}

SpectralLog cartan_between(const SymPoint& x, const SymPoint& y) {
    if (x.dim() != y.dim()) throw DimensionError("cartan_between: dimension mismatch");
    if (x.dim() == 1) return SpectralLog{Vec::Zero(1), 0.0};
    return svd_log(WedgeTower(x.factor).inverse() * WedgeTower(y.factor));
}

double finsler_distance(const SymPoint& x, const SymPoint& y, const FinslerFunctional& f) {
    return finsler_norm(cartan_between(x, y).values, f);
}

double finsler_displacement(const ScaledMatrix& g, const FinslerFunctional& f) {
    return finsler_norm(svd_log(g).values, f);
}

double finsler_displacement(const WedgeTower& g, const FinslerFunctional& f) {
    return finsler_norm(svd_log(g).values, f);
}

double finsler_translation_length(const ScaledMatrix& g, const FinslerFunctional& f) {
    return finsler_norm(eig_log_moduli(g).values, f);
}

double finsler_translation_length(const WedgeTower& g, const FinslerFunctional& f) {
    return finsler_norm(eig_log_moduli(g).values, f);
}

Flag Flag::standard(int d) { return Flag{Mat::Identity(d, d)}; }

Flag Flag::opposite(int d) { return Flag{Mat::Identity(d, d).rowwise().reverse()}; }

Flag act(const ScaledMatrix& g, const Flag& f) {
    Mat b = g.entries * f.basis;
    for (int j = 0; j < b.cols(); ++j) b.col(j).normalize();
    return Flag{b};
}

Vec busemann_vector(const Flag& xi, const SymPoint& x, const SymPoint& y) {
    const int d = xi.dim();
    if (x.dim() != d || y.dim() != d) throw DimensionError("busemann_vector: dimension mismatch");
    // log of the k-volume of a^{-1} xi_1..xi_k, increments read off the R factor
    auto diag_logs = [&](const SymPoint& p) {
        Eigen::PartialPivLU<Mat> lu(p.factor.entries);
        Mat r = Eigen::HouseholderQR<Mat>(lu.solve(xi.basis)).matrixQR();
        Vec v(d);
        double shift = p.factor.log_abs_det() / d;
        for (int i = 0; i < d; ++i) {
            if (!(std::abs(r(i, i)) > 0.0)) throw NumericalError("busemann_vector: degenerate flag");
            v(i) = std::log(std::abs(r(i, i))) - p.factor.logScale + shift;
        }
        return v;
    };
    return diag_logs(x) - diag_logs(y);
}

double flag_pairing(const Flag& xi, const Flag& eta) {
    const int d = xi.dim();
    if (eta.dim() != d) throw DimensionError("flag_pairing: dimension mismatch");
    Mat qx = Eigen::HouseholderQR<Mat>(xi.basis).householderQ();
    Mat qy = Eigen::HouseholderQR<Mat>(eta.basis).householderQ();
    double worst = 1.0;
    for (int k = 1; k < d; ++k) {
        Mat m(d, d);
        m << qx.leftCols(k), qy.leftCols(d - k);
        worst = std::min(worst, std::abs(m.determinant()));
    }
    return worst;
}

bool flag_transverse(const Flag& xi, const Flag& eta, double tol) { return flag_pairing(xi, eta) > tol; }

SymPoint FlatChart::point(const Vec& v) const {
    return SymPoint{ScaledMatrix(frame * v.array().exp().matrix().asDiagonal())};
}

FlatChart flat_through(const SymPoint& x, const SymPoint& y) {
    const int d = x.dim();
    if (y.dim() != d) throw DimensionError("flat_through: dimension mismatch");
    // a_x^{-1} a_y = U S V^T gives y = (a_x U) S^2 (a_x U)^T
    Mat m = Eigen::PartialPivLU<Mat>(x.factor.entries).solve(y.factor.entries);
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU);
    Vec lam = svd.singularValues().array().log().matrix();
    if (!lam.allFinite()) throw NumericalError("flat_through: singular factor");
    lam.array() -= lam.mean();
    if (lam.cwiseAbs().maxCoeff() < 1e-12) throw DomainError("flat_through: points coincide");
    Mat frame = x.factor.entries * svd.matrixU();
    frame *= std::exp(-x.factor.log_abs_det() / d + x.factor.logScale);
    return FlatChart{x, frame, lam};
}

}  // namespace graftlab
