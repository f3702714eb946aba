#include <doctest.h>

#include <cmath>
#include <random>

#include "graftlab/random.hpp"
#include "graftlab/wedge_tower.hpp"

using namespace graftlab;

namespace {

Mat random_matrix(int d, Rng& rng) {
    Mat m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = uniform(rng, -1.0, 1.0);
    return m;
}

// half log-eigenvalues of m^T m, independent of the SVD path
Vec gram_log_singular(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m.transpose() * m);
    Vec ev = es.eigenvalues();
    Vec out(ev.size());
    for (int i = 0; i < ev.size(); ++i) out(i) = 0.5 * std::log(ev(ev.size() - 1 - i));
    return out;
}

}  // namespace

TEST_CASE("normalize keeps the represented matrix and bounds the entries") {
    Rng rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        Mat m = random_matrix(4, rng) * std::exp(uniform(rng, -30.0, 30.0));
        ScaledMatrix s(m);
        double top = s.entries.cwiseAbs().maxCoeff();
        CHECK(top >= 0.5);
        CHECK(top < 1.0);
        CHECK((s.represented() - m).cwiseAbs().maxCoeff() <= 1e-14 * m.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("non-square or zero input is rejected") {
    CHECK_THROWS_AS(ScaledMatrix(Mat::Zero(2, 3)), DimensionError);
    CHECK_THROWS_AS(ScaledMatrix(Mat::Zero(3, 3)), NumericalError);
}

TEST_CASE("fifty-fold product of diag(e, 1/e)") {
    Vec v(2);
    v << 1.0, -1.0;
    ScaledMatrix g = ScaledMatrix::diagonal_exp(v);
    ScaledMatrix p = ScaledMatrix::identity(2);
    for (int i = 0; i < 50; ++i) p = scaled_mul(p, g);
    SpectralLog s = svd_log(p);
    CHECK(s.values(0) == doctest::Approx(50.0).epsilon(1e-13));
    CHECK(s.values(1) == doctest::Approx(-50.0).epsilon(1e-13));
    CHECK(std::abs(s.residual) < 1e-12);
}

TEST_CASE("svd_log agrees with the Gram-matrix oracle") {
    Rng rng(2);
    for (int d = 2; d <= 8; ++d)
        for (int trial = 0; trial < 20; ++trial) {
            Mat m = random_matrix(d, rng) + 2.0 * Mat::Identity(d, d);
            SpectralLog s = svd_log(ScaledMatrix(m));
            Vec oracle = gram_log_singular(m);
            oracle.array() -= oracle.mean();
            CHECK((s.values - oracle).cwiseAbs().maxCoeff() < 1e-10);
            CHECK(s.values.sum() == doctest::Approx(0.0).epsilon(1e-12));
            for (int i = 0; i + 1 < d; ++i) CHECK(s.values(i) >= s.values(i + 1));
        }
}

TEST_CASE("eig_log_moduli on a diagonal example") {
    Mat m = Mat::Zero(3, 3);
    m.diagonal() << 4.0, 2.0, 1.0 / 8.0;
    SpectralLog s = eig_log_moduli(ScaledMatrix(m));
    CHECK(s.values(0) == doctest::Approx(std::log(4.0)));
    CHECK(s.values(1) == doctest::Approx(std::log(2.0)));
    CHECK(s.values(2) == doctest::Approx(-std::log(8.0)));
    CHECK(std::abs(s.residual) < 1e-14);
}

TEST_CASE("eig_log_moduli survives extreme diagonal conjugation") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        Mat m = random_matrix(3, rng) + 3.0 * Mat::Identity(3, 3);
        Vec e(3);
        e << 120.0, 0.0, -120.0;
        Mat conj = e.array().exp().matrix().asDiagonal() * m * (-e).array().exp().matrix().asDiagonal();
        SpectralLog a = eig_log_moduli(ScaledMatrix(m));
        SpectralLog b = eig_log_moduli(ScaledMatrix(conj));
        CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("exterior powers: top-k sums and multiplicativity") {
    Rng rng(4);
    for (int d = 3; d <= 6; ++d) {
        Mat a = random_matrix(d, rng) + 2.0 * Mat::Identity(d, d);
        Mat b = random_matrix(d, rng) + 2.0 * Mat::Identity(d, d);
        ScaledMatrix sa(a), sb(b);
        SpectralLog sv = svd_log(sa);
        for (int k = 1; k < d; ++k) {
            ScaledMatrix w = exterior_power(sa, k);
            double topk = sv.values.head(k).sum() + k * sv.residual;
            double lead = svd_log(w).values(0) + svd_log(w).residual;
            CHECK(lead == doctest::Approx(topk).epsilon(1e-10));
            ScaledMatrix lhs = exterior_power(scaled_mul(sa, sb), k);
            ScaledMatrix rhs = scaled_mul(exterior_power(sa, k), exterior_power(sb, k));
            CHECK(psl_equal(lhs, rhs, 1e-10));
        }
    }
}

TEST_CASE("second exterior power of a 3x3 matches hand-written minors") {
    Mat m(3, 3);
    m << 1, 2, 3, 4, 5, 6, 7, 8, 10;
    ScaledMatrix w = exterior_power(ScaledMatrix(m), 2);
    Mat r = w.represented();
    // rows/cols {0,1}: 1*5-2*4 ; {0,1}x{1,2}: 2*6-3*5 ; {1,2}x{0,2}: 4*10-6*7
    CHECK(r(0, 0) == doctest::Approx(-3.0));
    CHECK(r(0, 2) == doctest::Approx(-3.0));
    CHECK(r(2, 1) == doctest::Approx(-2.0));
    CHECK(r(1, 1) == doctest::Approx(1 * 10 - 3 * 7));
}

TEST_CASE("psl_equal ignores scale and sign") {
    Rng rng(5);
    Mat m = random_matrix(4, rng);
    CHECK(psl_equal(ScaledMatrix(m), ScaledMatrix(-3.5 * m), 1e-14));
    CHECK_FALSE(psl_equal(ScaledMatrix(m), ScaledMatrix(m + 0.01 * Mat::Identity(4, 4)), 1e-6));
}

TEST_CASE("wedge tower agrees with direct spectra on moderate matrices") {
    Rng rng(6);
    for (int d = 2; d <= 6; ++d)
        for (int trial = 0; trial < 10; ++trial) {
            ScaledMatrix m = tau_embed(random_sl2(rng, 1.0), d);
            WedgeTower t(m);
            CHECK((svd_log(t).values - svd_log(m).values).cwiseAbs().maxCoeff() < 1e-9);
            CHECK((eig_log_moduli(t).values - eig_log_moduli(m).values).cwiseAbs().maxCoeff() < 1e-8);
        }
}

TEST_CASE("wedge tower keeps the small end of long products") {
    // g = k diag(e^v) k^T has exact Cartan projection n v for g^n
    Rng rng(7);
    for (int d = 3; d <= 5; ++d) {
        Mat q = Eigen::HouseholderQR<Mat>(random_matrix(d, rng)).householderQ();
        Vec v(d);
        for (int i = 0; i < d; ++i) v(i) = 0.7 * (d - 1 - 2 * i);
        Mat g = q * v.array().exp().matrix().asDiagonal() * q.transpose();
        WedgeTower p = WedgeTower(ScaledMatrix(g)).power(200);
        Vec expect = 200.0 * v;
        CHECK((svd_log(p).values - expect).cwiseAbs().maxCoeff() < 1e-8 * 200);
        CHECK((eig_log_moduli(p).values - expect).cwiseAbs().maxCoeff() < 1e-8 * 200);
    }
}

TEST_CASE("diagonal towers are exact") {
    Vec v(4);
    v << 300.0, 10.0, -10.0, -300.0;
    WedgeTower t = WedgeTower::diagonal_exp(v);
    WedgeTower p = t * t;
    CHECK((svd_log(p).values - 2.0 * v).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("tower inverse") {
    Rng rng(8);
    for (int d = 2; d <= 7; ++d)
        for (int trial = 0; trial < 5; ++trial) {
            Mat a = random_matrix(d, rng);
            WedgeTower t{ScaledMatrix(a)};
            WedgeTower ti = t.inverse();
            WedgeTower direct(ScaledMatrix(Mat(a.inverse())));
            CHECK(ti.det_sign() == direct.det_sign());
            CHECK(ti.log_det() == doctest::Approx(direct.log_det()));
            for (int k = 1; k < d; ++k) {
                Mat x = ti.level(k).represented(), y = direct.level(k).represented();
                CHECK((x - y).cwiseAbs().maxCoeff() < 1e-9 * y.cwiseAbs().maxCoeff());
            }
            WedgeTower one = t * ti;
            for (int k = 1; k < d; ++k) {
                Mat x = one.level(k).represented();
                CHECK((x - Mat::Identity(x.rows(), x.cols())).cwiseAbs().maxCoeff() < 1e-9);
            }
        }
    // far from the identity the inverse is read off exactly from the minors
    Vec v(4);
    v << 200.0, 50.0, -60.0, -190.0;
    WedgeTower inv = WedgeTower::diagonal_exp(v).inverse();
    Vec expect(4);
    expect << 190.0, 60.0, -50.0, -200.0;
    CHECK((svd_log(inv).values - expect).cwiseAbs().maxCoeff() < 1e-10);
}
