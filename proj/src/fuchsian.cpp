#include <cmath>
#include <functional>

#include "graftlab/grafting.hpp"

namespace graftlab {

Mat2 FuchsianData::evaluate(const Word& w) const {
    Mat2 m = Mat2::Identity();
    for (const auto& l : w) {
        auto it = assignment.find(l.gen);
        if (it == assignment.end()) throw ParseError("FuchsianData: unknown generator " + l.gen);
        m = m * (l.inverse ? Mat2(it->second.inverse()) : it->second);
    }
    return m;
}

double sl2_translation_length(const Mat2& m) {
    double t = std::abs(m.trace());
    return t <= 2.0 ? 0.0 : 2.0 * std::acosh(t / 2.0);
}

bool psl2_equal(const Mat2& a, const Mat2& b, double tol) {
    return std::min((a - b).cwiseAbs().maxCoeff(), (a + b).cwiseAbs().maxCoeff()) <= tol;
}

TorusHandle one_holed_torus(double ell, double trA, double trB) {
    if (!(ell > 0.0)) throw DomainError("one_holed_torus: boundary length must be positive");
    if (!(trA > 2.0 && trB > 2.0)) throw DomainError("one_holed_torus: traces must exceed 2");
    const double k = -2.0 * std::cosh(ell / 2.0);
    // tr[a,b] = x^2 + y^2 + t^2 - x y t - 2 = k, solved for t = tr(ab)
    const double x = trA, y = trB;
    const double disc = x * x * y * y - 4.0 * (x * x + y * y - 2.0 - k);
    if (disc < 0.0) throw DomainError("one_holed_torus: no real solution for tr(ab)");
    const double t = 0.5 * (x * y + std::sqrt(disc));

    const double lam = 0.5 * (x + std::sqrt(x * x - 4.0));
    Mat2 a;
    a << lam, 0.0, 0.0, 1.0 / lam;
    const double p = (t - y / lam) / (lam - 1.0 / lam);
    const double s = y - p;
    const double qr = p * s - 1.0;
    if (std::abs(qr) < 1e-12) throw DomainError("one_holed_torus: reducible configuration");
    const double q = std::sqrt(std::abs(qr));
    const double r = qr / q;
    Mat2 b;
    b << p, q, r, s;

    Mat2 comm = a * b * a.inverse() * b.inverse();
    Eigen::EigenSolver<Mat2> es(comm);
    Eigen::Vector2d ev = es.eigenvalues().real();
    Eigen::Matrix2d vec = es.eigenvectors().real();
    int big = std::abs(ev(0)) >= std::abs(ev(1)) ? 0 : 1;
    Mat2 P;
    P.col(0) = vec.col(big);
    P.col(1) = vec.col(1 - big);
    double det = P.determinant();
    if (std::abs(det) < 1e-14) throw NumericalError("one_holed_torus: commutator not diagonalizable");
    P.col(1) /= det;
    Mat2 Pi = P.inverse();
    Mat2 a2 = Pi * a * P, b2 = Pi * b * P;
    // diagonal conjugation keeps [a,b] diagonal; pick the one with the smallest norms
    const double up = a2(0, 1) * a2(0, 1) + b2(0, 1) * b2(0, 1);
    const double down = a2(1, 0) * a2(1, 0) + b2(1, 0) * b2(1, 0);
    if (up > 0.0 && down > 0.0) {
        const double c = std::pow(up / down, 0.25);
        Mat2 D = Eigen::Vector2d(std::sqrt(c), 1.0 / std::sqrt(c)).asDiagonal();
        Mat2 Di = D.inverse();
        a2 = Di * a2 * D;
        b2 = Di * b2 * D;
    }
    return TorusHandle{a2, b2, t};
}

static Word commutator(const std::string& x, const std::string& y) {
    return parse_word(x + " " + y + " " + x + "' " + y + "'");
}

static FuchsianData genus2_rep(double ell, double twist, const Genus2Shape& shape) {
    if (!(ell > 0.0)) throw DomainError("genus2_fuchsian: boundary length must be positive");
    TorusHandle h1 = one_holed_torus(ell, shape.trA1, shape.trB1);
    TorusHandle h2 = one_holed_torus(ell, shape.trA2, shape.trB2);
    Mat2 J;
    J << 0.0, 1.0, -1.0, 0.0;
    Mat2 tw;
    tw << std::exp(twist / 2.0), 0.0, 0.0, std::exp(-twist / 2.0);
    Mat2 M = tw * J;
    Mat2 Mi = M.inverse();
    FuchsianData rho;
    rho.assignment["a1"] = h1.a;
    rho.assignment["b1"] = h1.b;
    rho.assignment["a2"] = M * h2.a * Mi;
    rho.assignment["b2"] = M * h2.b * Mi;
    rho.relators = {commutator("a1", "b1") + commutator("a2", "b2")};
    rho.markedCurve = commutator("a1", "b1");
    rho.boundaryLength = ell;
    return rho;
}

SurfaceModel genus2_fuchsian(double ell, double twist, const Genus2Shape& shape) {
    SurfaceModel out;
    out.rho = genus2_rep(ell, twist, shape);
    out.graph.vertices = {{"v1", {"a1", "b1"}}, {"v2", {"a2", "b2"}}};
    GogEdge e;
    e.name = "gamma";
    e.origin = 0;
    e.target = 1;
    e.originWord = commutator("a1", "b1");
    e.targetWord = inverse(commutator("a2", "b2"));
    e.inTree = true;
    out.graph.edges = {e};
    out.graph.validate();
    return out;
}

SurfaceModel genus2_hnn(double ell, double twist, const Genus2Shape& shape) {
    SurfaceModel out;
    out.rho = genus2_rep(ell, twist, shape);
    out.rho.markedCurve = parse_word("a1");
    out.graph.vertices = {{"v", {"a1", "a2", "b2"}}};
    GogEdge e;
    e.name = "alpha";
    e.origin = 0;
    e.target = 0;
    e.originWord = parse_word("a1");
    e.targetWord = parse_word("a2 b2 a2' b2' a1");
    e.inTree = false;
    e.stableLetter = "b1";
    out.graph.edges = {e};
    out.graph.validate();
    return out;
}

bool fuchsian_screen(const FuchsianData& rho, int maxLength, double margin) {
    std::vector<Letter> letters;
    std::vector<Mat2> mats;
    for (const auto& [g, m] : rho.assignment) {
        letters.push_back({g, false});
        mats.push_back(m);
        letters.push_back({g, true});
        mats.push_back(m.inverse());
    }
    bool ok = true;
    std::function<void(int, int, const Mat2&)> walk = [&](int depth, int last, const Mat2& m) {
        if (!ok) return;
        if (depth > 0 && std::abs(m.trace()) <= 2.0 + margin) {
            ok = false;
            return;
        }
        if (depth == maxLength) return;
        for (size_t i = 0; i < letters.size(); ++i) {
            if (last >= 0 && letters[i] == letters[last].inv()) continue;
            walk(depth + 1, static_cast<int>(i), m * mats[i]);
        }
    };
    walk(0, -1, Mat2::Identity());
    return ok;
}

double cylinder_height(const Vec& z, const FinslerFunctional& f) {
    if (z.size() != f.dim()) throw DimensionError("cylinder_height: dimension mismatch");
    Vec u = principal_direction(f.dim());
    auto phi = [&](double t) { return finsler_norm(t * u + z, f); };
    double fu = finsler_norm(u, f);
    double bound = 2.0 * finsler_norm(z, f) / fu + 1.0;
    double lo = -bound, hi = bound;
    while (hi - lo > 1e-12) {
        double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (phi(m1) <= phi(m2))
            hi = m2;
        else
            lo = m1;
    }
    return phi(0.5 * (lo + hi));
}

double collar_size(double sigma) {
    if (!(sigma > 0.0)) throw DomainError("collar_size: sigma must be positive");
    return std::asinh(1.0 / std::sinh(sigma / 2.0));
}

}  // namespace graftlab
