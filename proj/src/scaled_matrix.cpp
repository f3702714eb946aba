#include "graftlab/scaled_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace graftlab {

const Tolerances& default_tolerances() {
    static const Tolerances t{};
    return t;
}

ScaledMatrix::ScaledMatrix(Mat m, double ls) : entries(std::move(m)), logScale(ls) {
    if (entries.rows() != entries.cols() || entries.rows() == 0)
        throw DimensionError("ScaledMatrix needs a non-empty square matrix");
    normalize();
}

void ScaledMatrix::normalize() {
    double m = entries.cwiseAbs().maxCoeff();
    if (!std::isfinite(m) || m <= 0.0) throw NumericalError("ScaledMatrix: zero or non-finite entries");
    int e = 0;
    std::frexp(m, &e);
    if (e != 0) {
        entries = entries.unaryExpr([e](double x) { return std::ldexp(x, -e); });
        logScale += e * std::log(2.0);
    }
}

Mat ScaledMatrix::represented() const { return entries * std::exp(logScale); }

double ScaledMatrix::log_abs_det() const {
    Eigen::PartialPivLU<Mat> lu(entries);
    double s = 0.0;
    const Mat& u = lu.matrixLU();
    for (int i = 0; i < u.rows(); ++i) s += std::log(std::abs(u(i, i)));
    return s + dim() * logScale;
}

int ScaledMatrix::det_sign() const {
    Eigen::PartialPivLU<Mat> lu(entries);
    int s = lu.permutationP().determinant();
    const Mat& u = lu.matrixLU();
    for (int i = 0; i < u.rows(); ++i) {
        if (u(i, i) == 0.0) return 0;
        if (u(i, i) < 0.0) s = -s;
    }
    return s;
}

ScaledMatrix ScaledMatrix::identity(int d) { return ScaledMatrix(Mat::Identity(d, d)); }

ScaledMatrix ScaledMatrix::diagonal_exp(const Vec& v) {
    double top = v.maxCoeff();
    Mat m = Mat::Zero(v.size(), v.size());
    for (int i = 0; i < v.size(); ++i) m(i, i) = std::exp(v(i) - top);
    return ScaledMatrix(m, top);
}

ScaledMatrix scaled_mul(const ScaledMatrix& a, const ScaledMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionError("scaled_mul: dimension mismatch");
    return ScaledMatrix(a.entries * b.entries, a.logScale + b.logScale);
}

ScaledMatrix scaled_inverse(const ScaledMatrix& a) {
    Eigen::PartialPivLU<Mat> lu(a.entries);
    return ScaledMatrix(lu.inverse(), -a.logScale);
}

ScaledMatrix scaled_power(const ScaledMatrix& a, int n) {
    if (n < 0) return scaled_power(scaled_inverse(a), -n);
    ScaledMatrix result = ScaledMatrix::identity(a.dim());
    ScaledMatrix base = a;
    while (n > 0) {
        if (n & 1) result = scaled_mul(result, base);
        n >>= 1;
        if (n) base = scaled_mul(base, base);
    }
    return result;
}

static SpectralLog recentre(std::vector<double> logs) {
    for (double x : logs)
        if (!std::isfinite(x)) throw NumericalError("spectral log: non-finite value (singular input?)");
    std::sort(logs.begin(), logs.end(), std::greater<>());
    double mean = std::accumulate(logs.begin(), logs.end(), 0.0) / logs.size();
    SpectralLog out;
    out.values.resize(logs.size());
    for (size_t i = 0; i < logs.size(); ++i) out.values(i) = logs[i] - mean;
    out.residual = mean;
    return out;
}

SpectralLog svd_log(const ScaledMatrix& m) {
    Eigen::JacobiSVD<Mat> svd(m.entries);
    const Vec& s = svd.singularValues();
    std::vector<double> logs(s.size());
    for (int i = 0; i < s.size(); ++i) logs[i] = std::log(s(i)) + m.logScale;
    return recentre(logs);
}

Mat balance(const Mat& in) {
    Mat a = in;
    const int n = static_cast<int>(a.rows());
    const double radix = 2.0, sqrdx = 4.0;
    bool done = false;
    for (int pass = 0; pass < 2000 && !done; ++pass) {
        done = true;
        for (int i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix, f = 1.0, s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
    return a;
}

SpectralLog eig_log_moduli(const ScaledMatrix& m) {
    Eigen::EigenSolver<Mat> es(balance(m.entries), false);
    if (es.info() != Eigen::Success) throw NumericalError("eig_log_moduli: eigensolver failed");
    const auto& ev = es.eigenvalues();
    std::vector<double> logs(ev.size());
    for (int i = 0; i < ev.size(); ++i) logs[i] = std::log(std::abs(ev(i))) + m.logScale;
    return recentre(logs);
}

std::vector<std::vector<int>> k_subsets(int d, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k);
    std::iota(cur.begin(), cur.end(), 0);
    if (k <= 0 || k > d) return out;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == d - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

double minor_det(const Mat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    const int k = static_cast<int>(rows.size());
    if (k == 1) return m(rows[0], cols[0]);
    if (k == 2) return m(rows[0], cols[0]) * m(rows[1], cols[1]) - m(rows[0], cols[1]) * m(rows[1], cols[0]);
    Mat sub(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
    return sub.partialPivLu().determinant();
}

ScaledMatrix exterior_power(const ScaledMatrix& m, int k) {
    const int d = m.dim();
    if (k < 1 || k > d) throw DimensionError("exterior_power: k out of range");
    auto subs = k_subsets(d, k);
    const int n = static_cast<int>(subs.size());
    Mat out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = minor_det(m.entries, subs[i], subs[j]);
    return ScaledMatrix(out, k * m.logScale);
}

bool psl_equal(const ScaledMatrix& a, const ScaledMatrix& b, double tol) {
    if (a.dim() != b.dim()) return false;
    Mat x = a.entries / a.entries.cwiseAbs().maxCoeff();
    Mat y = b.entries / b.entries.cwiseAbs().maxCoeff();
    double plus = (x - y).cwiseAbs().maxCoeff();
    double minus = (x + y).cwiseAbs().maxCoeff();
    return std::min(plus, minus) <= tol;
}

}  // namespace graftlab
