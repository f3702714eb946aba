#include <doctest.h>

#include <cmath>

#include "graftlab/positivity.hpp"
#include "graftlab/random.hpp"

using namespace graftlab;

namespace {

// brute force: every square minor of every order, straight from LU
double min_minor_ratio(const Mat& m) {
    const int d = static_cast<int>(m.rows());
    double worst = 1e300;
    for (int k = 1; k < d; ++k) {
        auto subs = k_subsets(d, k);
        double top = 0.0;
        std::vector<double> vals;
        for (const auto& r : subs)
            for (const auto& c : subs) {
                Mat sub(k, k);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) sub(i, j) = m(r[i], c[j]);
                vals.push_back(sub.determinant());
                top = std::max(top, std::abs(vals.back()));
            }
        for (double v : vals) worst = std::min(worst, v / top);
    }
    return worst;
}

Mat rot_pi(int d) { return tau_matrix(sl2_rotation(M_PI), d); }

}  // namespace

TEST_CASE("verdicts on small matrices") {
    for (int d = 2; d <= 8; ++d) {
        PositivityReport r = total_positivity(ScaledMatrix::identity(d));
        CHECK(r.verdict == Verdict::TotallyNonnegative);
        CHECK(std::string(to_string(r.verdict)) == "TNN");
    }
    Mat m(2, 2);
    m << 1, 1, 1, 2;
    CHECK(total_positivity(ScaledMatrix(m)).verdict == Verdict::TotallyPositive);
    m << 2, -1, 1, 0;
    PositivityReport bad = total_positivity(ScaledMatrix(m));
    CHECK(bad.verdict == Verdict::Neither);
    CHECK(bad.worstMinor.order == 1);
    Mat n(3, 3);
    n << 1, 1, 0, 1, 2, 1, 0, 1, 2;
    CHECK(total_positivity(ScaledMatrix(n)).verdict == Verdict::TotallyNonnegative);
    // sign is irrelevant in even dimension
    CHECK(total_positivity(ScaledMatrix(Mat(-Mat::Identity(4, 4)))).verdict == Verdict::TotallyNonnegative);
}

TEST_CASE("margin agrees with a brute-force minor scan") {
    Rng rng(31);
    for (int d = 2; d <= 6; ++d)
        for (int trial = 0; trial < 10; ++trial) {
            Mat m = Mat::Random(d, d) + Mat::Constant(d, d, 1.2);
            CHECK(total_positivity(ScaledMatrix(m)).margin == doctest::Approx(min_minor_ratio(m)).epsilon(1e-9));
            ScaledMatrix tp = random_tp(d, rng);
            CHECK(total_positivity(tp).margin == doctest::Approx(min_minor_ratio(tp.entries)).epsilon(1e-6));
        }
}

TEST_CASE("a'_t is totally positive") {
    for (int d = 3; d <= 6; ++d)
        for (double t : {0.1, 1.0, 5.0}) {
            CHECK(total_positivity(piece_tower(Piece::hyperbolic(t), d)).verdict == Verdict::TotallyPositive);
            CHECK(total_positivity(tau_tower(sl2_positive(t), d)).verdict == Verdict::TotallyPositive);
            // plain minors of the assembled matrix lose the small ones once t is large
            if (t <= 1.0) CHECK(total_positivity(sl2_generators(d, t, 0.0).aPrime).verdict == Verdict::TotallyPositive);
        }
}

TEST_CASE("tau of a positive matrix is totally positive") {
    Rng rng(32);
    for (int d = 2; d <= 6; ++d)
        for (int trial = 0; trial < 20; ++trial) {
            double a = uniform(rng, 0.5, 2), b = uniform(rng, 0.5, 2), c = uniform(rng, 0.5, 2);
            double e = (1.0 + b * c) / a;
            Mat2 m;
            m << a, b, c, e;
            CHECK(total_positivity(tau_tower(m, d)).verdict == Verdict::TotallyPositive);
        }
}

TEST_CASE("semigroup closure and the rotation symmetry") {
    Rng rng(33);
    for (int d = 2; d <= 6; ++d)
        for (int trial = 0; trial < 10; ++trial) {
            ScaledMatrix p = random_tp(d, rng), q = random_tnn(d, rng);
            CHECK(total_positivity(q).verdict != Verdict::Neither);
            CHECK(total_positivity(scaled_mul(p, q)).verdict == Verdict::TotallyPositive);
            CHECK(total_positivity(scaled_mul(q, p)).verdict == Verdict::TotallyPositive);
            ScaledMatrix rp(rot_pi(d));
            for (const ScaledMatrix& m : {p, q}) {
                ScaledMatrix s = scaled_mul(scaled_mul(rp, scaled_inverse(m)), rp);
                CHECK(total_positivity(s).verdict == total_positivity(m).verdict);
            }
        }
}

TEST_CASE("admissible increment certificates") {
    Rng rng(34);
    AdmissiblePath empty;
    CHECK(admissible_increment_certificate(empty, 3).verdict == Verdict::TotallyNonnegative);
    for (int d = 3; d <= 5; ++d) {
        FinslerFunctional f = FinslerFunctional::standard(d);
        for (int trial = 0; trial < 10; ++trial) {
            Vec z = random_unit_direction(d, f, rng);
            AdmissiblePath flat{{Piece::flat(z, 1.3)}, std::nullopt};
            CHECK(admissible_increment_certificate(flat, d).verdict == Verdict::TotallyNonnegative);
            AdmissiblePath sandwich{{Piece::hyperbolic(1.0), Piece::flat(z, 2.0), Piece::hyperbolic(1.0)}, std::nullopt};
            CHECK(admissible_increment_certificate(sandwich, d).verdict == Verdict::TotallyPositive);
        }
    }
}

TEST_CASE("eigen gaps") {
    Mat m = Vec((Vec(3) << 4, 2, 0.125).finished()).asDiagonal();
    Vec g = eigen_gaps(ScaledMatrix(m));
    CHECK(g(0) == doctest::Approx(std::log(2.0)));
    CHECK(g(1) == doctest::Approx(std::log(16.0)));
    CHECK(eigen_gaps(ScaledMatrix::identity(5)).cwiseAbs().maxCoeff() < 1e-12);
    Rng rng(35);
    for (int d = 3; d <= 5; ++d) {
        ScaledMatrix tp = random_tp(d, rng);
        CHECK(eigen_gaps(tp).minCoeff() > 0.0);
        CHECK((eigen_gaps(WedgeTower(tp)) - eigen_gaps(tp)).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("birkhoff contraction") {
    Mat m(2, 2);
    m << 2, 1, 1, 2;
    CHECK(birkhoff_contraction(m) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    Vec a(3), b(3);
    a << 1, 2, 3;
    b << 0.5, 4, 1;
    CHECK(birkhoff_contraction(a * b.transpose()) < 1e-15);
    m << 1, 0, 1, 1;
    CHECK_THROWS_AS(birkhoff_contraction(m), DomainError);

    // the top gap of m^n grows at least like n log(1/r)
    Mat p(3, 3);
    p << 3, 1, 0.5, 1, 2, 1, 0.4, 1, 3;
    double r = birkhoff_contraction(p);
    ScaledMatrix pw = ScaledMatrix::identity(3);
    for (int n = 1; n <= 30; ++n) {
        pw = scaled_mul(pw, ScaledMatrix(p));
        if (n >= 5) CHECK(eigen_gaps(pw)(0) >= n * std::log(1.0 / r) - 2.0);
    }
}

TEST_CASE("subspace angle") {
    Mat s(3, 3);
    s << 3, 1, 0, 1, 2, 0.5, 0, 0.5, 1;
    for (int k = 1; k <= 2; ++k) CHECK(subspace_angle(ScaledMatrix(s), k) == doctest::Approx(M_PI / 2));
    Mat m(2, 2);
    m << 2, 1, 0, 0.5;
    // direct 2x2 eigenvectors (1,0) and (-2/3, 1)
    Eigen::Vector2d e1(1, 0), e2(-2.0 / 3.0, 1);
    double direct = std::acos(std::abs(e1.dot(e2)) / e2.norm());
    CHECK(subspace_angle(ScaledMatrix(m), 1) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(subspace_angle(ScaledMatrix(m), 1) == doctest::Approx(std::acos(2.0 / std::sqrt(13.0))).epsilon(1e-12));
    CHECK_THROWS_AS(subspace_angle(ScaledMatrix::identity(3), 1), DomainError);
    CHECK_THROWS_AS(subspace_angle(ScaledMatrix(s), 3), DimensionError);
}

TEST_CASE("quasi-ruled defect of admissible paths") {
    FinslerFunctional f = FinslerFunctional::standard(3);
    AdmissiblePath one{{Piece::hyperbolic(2.0)}, std::nullopt};
    CHECK(quasi_ruled_defect_of_admissible(one, f).defect < 1e-12);
    Vec z(3);
    z << 1, 0, -1;
    z /= finsler_norm(z, f);
    AdmissiblePath flats{{Piece::flat(z, 1.0), Piece::flat(z, 0.5), Piece::flat(z, 2.0)}, std::nullopt};
    CHECK(quasi_ruled_defect_of_admissible(flats, f).defect < 1e-8);
    AdmissiblePath mixed{{Piece::hyperbolic(0.5), Piece::flat(z, 2.0), Piece::hyperbolic(0.7)}, std::nullopt};
    DefectReport rep = quasi_ruled_defect_of_admissible(mixed, f);
    CHECK(rep.omega == 0.5);
    CHECK(rep.L == 2.0);
    CHECK(rep.defect >= 0.0);
}

TEST_CASE("admissible paths are injective") {
    Rng rng(36);
    for (int d = 3; d <= 4; ++d) {
        FinslerFunctional f = FinslerFunctional::standard(d);
        for (int trial = 0; trial < 10; ++trial) {
            AdmissiblePath p = random_admissible(0.5, 0.0, 6, d, 100 + trial, f);
            Mat D = junction_distances(p, d, f);
            for (int i = 0; i < D.rows(); ++i)
                for (int j = i + 1; j < D.cols(); ++j) CHECK(D(i, j) > 1e-6);
        }
    }
}
