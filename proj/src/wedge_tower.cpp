#include "graftlab/wedge_tower.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace graftlab {

WedgeTower::WedgeTower(const ScaledMatrix& m) : d_(m.dim()) {
    if (d_ < 2) throw DimensionError("WedgeTower needs d >= 2");
    levels_.reserve(d_ - 1);
    levels_.push_back(m);
    for (int k = 2; k < d_; ++k) levels_.push_back(exterior_power(m, k));
    logDet_ = m.log_abs_det();
    detSign_ = m.det_sign();
    if (detSign_ == 0) throw DomainError("WedgeTower: singular matrix");
}

WedgeTower WedgeTower::identity(int d) { return WedgeTower::diagonal_exp(Vec::Zero(d)); }

WedgeTower WedgeTower::diagonal_exp(const Vec& v) {
    WedgeTower t;
    t.d_ = static_cast<int>(v.size());
    if (t.d_ < 2) throw DimensionError("WedgeTower needs d >= 2");
    for (int k = 1; k < t.d_; ++k) {
        auto subs = k_subsets(t.d_, k);
        Vec sums(subs.size());
        for (size_t i = 0; i < subs.size(); ++i) {
            double s = 0.0;
            for (int j : subs[i]) s += v(j);
            sums(i) = s;
        }
        t.levels_.push_back(ScaledMatrix::diagonal_exp(sums));
    }
    t.logDet_ = v.sum();
    return t;
}

WedgeTower WedgeTower::operator*(const WedgeTower& other) const {
    WedgeTower out = *this;
    out *= other;
    return out;
}

WedgeTower& WedgeTower::operator*=(const WedgeTower& other) {
    if (d_ != other.d_) throw DimensionError("WedgeTower: dimension mismatch");
    for (size_t i = 0; i < levels_.size(); ++i) levels_[i] = scaled_mul(levels_[i], other.levels_[i]);
    logDet_ += other.logDet_;
    detSign_ *= other.detSign_;
    return *this;
}

WedgeTower WedgeTower::power(int n) const {
    if (n < 0) throw DomainError("WedgeTower::power: negative exponent");
    WedgeTower result = identity(d_);
    WedgeTower base = *this;
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

WedgeTower WedgeTower::inverse() const {
    // minor(A^-1)[I,J] = (-1)^{|I|+|J|} minor(A)[J^c, I^c] / det A
    WedgeTower out;
    out.d_ = d_;
    out.logDet_ = -logDet_;
    out.detSign_ = detSign_;
    for (int k = 1; k < d_; ++k) {
        const ScaledMatrix& comp = levels_[d_ - k - 1];
        auto subs = k_subsets(d_, k);
        auto csubs = k_subsets(d_, d_ - k);
        std::vector<int> compIndex(subs.size()), parity(subs.size());
        for (size_t i = 0; i < subs.size(); ++i) {
            std::vector<int> c;
            int sum = 0;
            for (int j = 0, pos = 0; j < d_; ++j) {
                if (pos < k && subs[i][pos] == j) {
                    ++pos;
                    sum += j;
                } else {
                    c.push_back(j);
                }
            }
            compIndex[i] = static_cast<int>(std::lower_bound(csubs.begin(), csubs.end(), c) - csubs.begin());
            parity[i] = sum % 2;
        }
        const int n = static_cast<int>(subs.size());
        Mat e(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = comp.entries(compIndex[j], compIndex[i]);
                e(i, j) = ((parity[i] + parity[j]) % 2 == 0 ? v : -v) * detSign_;
            }
        ScaledMatrix lv;
        lv.entries = e;
        lv.logScale = comp.logScale - logDet_;
        out.levels_.push_back(lv);
    }
    return out;
}

double log_top_singular(const ScaledMatrix& m) {
    Eigen::JacobiSVD<Mat> svd(m.entries);
    double s = svd.singularValues()(0);
    if (!(s > 0.0)) throw NumericalError("log_top_singular: zero matrix");
    return std::log(s) + m.logScale;
}

double log_spectral_radius(const ScaledMatrix& m) {
    if (m.dim() == 1) return std::log(std::abs(m.entries(0, 0))) + m.logScale;
    Eigen::EigenSolver<Mat> es(balance(m.entries), false);
    if (es.info() != Eigen::Success) throw NumericalError("log_spectral_radius: eigensolver failed");
    double r = es.eigenvalues().cwiseAbs().maxCoeff();
    if (!(r > 0.0)) throw NumericalError("log_spectral_radius: nilpotent input");
    return std::log(r) + m.logScale;
}

static SpectralLog from_partial_sums(const std::vector<double>& s, double logDet) {
    const int d = static_cast<int>(s.size()) + 1;
    std::vector<double> v(d);
    double prev = 0.0;
    for (int k = 0; k < d - 1; ++k) {
        v[k] = s[k] - prev;
        prev = s[k];
    }
    v[d - 1] = logDet - prev;
    std::sort(v.begin(), v.end(), std::greater<>());
    SpectralLog out;
    out.residual = logDet / d;
    out.values.resize(d);
    for (int i = 0; i < d; ++i) out.values(i) = v[i] - out.residual;
    return out;
}

SpectralLog svd_log(const WedgeTower& t) {
    std::vector<double> s;
    for (int k = 1; k < t.dim(); ++k) s.push_back(log_top_singular(t.level(k)));
    return from_partial_sums(s, t.log_det());
}

SpectralLog eig_log_moduli(const WedgeTower& t) {
    std::vector<double> s;
    for (int k = 1; k < t.dim(); ++k) s.push_back(log_spectral_radius(t.level(k)));
    return from_partial_sums(s, t.log_det());
}

}  // namespace graftlab
