#pragma once

#include "graftlab/scaled_matrix.hpp"

namespace graftlab {

// All exterior powers 1..d-1 of one SL_d element, multiplied level by level.
// Products of many factors keep the small end of the spectrum, which plain
// entries lose once the singular value spread exceeds double precision.
class WedgeTower {
public:
    WedgeTower() = default;
    explicit WedgeTower(const ScaledMatrix& m);

    static WedgeTower identity(int d);
    static WedgeTower diagonal_exp(const Vec& v);

    int dim() const { return d_; }
    const ScaledMatrix& level(int k) const { return levels_.at(k - 1); }
    const ScaledMatrix& matrix() const { return levels_.at(0); }
    double log_det() const { return logDet_; }
    int det_sign() const { return detSign_; }

    WedgeTower operator*(const WedgeTower& other) const;
    WedgeTower& operator*=(const WedgeTower& other);
    WedgeTower power(int n) const;
    // levels of the inverse from complementary minors
    WedgeTower inverse() const;

private:
    int d_ = 0;
    std::vector<ScaledMatrix> levels_;
    double logDet_ = 0.0;
    int detSign_ = 1;
};

SpectralLog svd_log(const WedgeTower& t);
SpectralLog eig_log_moduli(const WedgeTower& t);

double log_top_singular(const ScaledMatrix& m);
double log_spectral_radius(const ScaledMatrix& m);

}  // namespace graftlab
