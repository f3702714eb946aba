#include "graftlab/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace graftlab {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::TotallyPositive: return "TP";
        case Verdict::TotallyNonnegative: return "TNN";
        default: return "Neither";
    }
}

static PositivityReport scan_levels(const std::vector<const ScaledMatrix*>& levels, double tol) {
    const int d = levels[0]->dim();
    double sign = 1.0;
    if (d % 2 == 0) {
        const Mat& e = levels[0]->entries;
        Eigen::Index r, c;
        e.cwiseAbs().maxCoeff(&r, &c);
        if (e(r, c) < 0.0) sign = -1.0;
    }
    PositivityReport rep;
    rep.margin = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < levels.size(); ++i) {
        const int k = static_cast<int>(i) + 1;
        const Mat& e = levels[i]->entries;
        double s = (k % 2 == 1) ? sign : 1.0;
        double top = e.cwiseAbs().maxCoeff();
        Eigen::Index r, c;
        double low = (s * e / top).minCoeff(&r, &c);
        if (low < rep.margin) {
            rep.margin = low;
            auto subs = k_subsets(d, k);
            rep.worstMinor = MinorLocation{k, subs[r], subs[c], low};
        }
    }
    if (rep.margin > tol)
        rep.verdict = Verdict::TotallyPositive;
    else if (rep.margin >= -tol)
        rep.verdict = Verdict::TotallyNonnegative;
    else
        rep.verdict = Verdict::Neither;
    return rep;
}

PositivityReport total_positivity(const ScaledMatrix& m, double tol) {
    const int d = m.dim();
    if (d > default_tolerances().maxDimension) throw DimensionError("total_positivity: d <= 8");
    std::vector<ScaledMatrix> owned;
    for (int k = 1; k < std::max(d, 2); ++k) owned.push_back(k == 1 ? m : exterior_power(m, k));
    std::vector<const ScaledMatrix*> levels;
    for (const auto& x : owned) levels.push_back(&x);
    return scan_levels(levels, tol);
}

PositivityReport total_positivity(const WedgeTower& t, double tol) {
    if (t.dim() > default_tolerances().maxDimension) throw DimensionError("total_positivity: d <= 8");
    std::vector<const ScaledMatrix*> levels;
    for (int k = 1; k < t.dim(); ++k) levels.push_back(&t.level(k));
    return scan_levels(levels, tol);
}

PositivityReport admissible_increment_certificate(const AdmissiblePath& segment, int d, double tol) {
    WedgeTower t = WedgeTower::identity(d);
    for (const auto& p : segment.pieces) t *= piece_tower(p, d);
    return total_positivity(t, tol);
}

static Vec gaps_of(const Vec& v) {
    Vec g(v.size() - 1);
    for (int i = 0; i + 1 < v.size(); ++i) g(i) = v(i) - v(i + 1);
    return g;
}

Vec eigen_gaps(const ScaledMatrix& m) { return gaps_of(eig_log_moduli(m).values); }
Vec eigen_gaps(const WedgeTower& t) { return gaps_of(eig_log_moduli(t).values); }

double birkhoff_contraction(const Mat& m) {
    if (m.size() == 0 || m.minCoeff() <= 0.0) throw DomainError("birkhoff_contraction: entries must be positive");
    const int r = static_cast<int>(m.rows()), c = static_cast<int>(m.cols());
    Mat lg = m.array().log().matrix();
    double delta = 0.0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < c; ++k)
                for (int l = 0; l < c; ++l)
                    delta = std::max(delta, lg(i, k) + lg(j, l) - lg(j, k) - lg(i, l));
    return std::tanh(delta / 4.0);
}

double subspace_angle(const ScaledMatrix& m, int k) {
    const int d = m.dim();
    if (k < 1 || k >= d) throw DimensionError("subspace_angle: 1 <= k < d");
    Eigen::EigenSolver<Mat> es(m.entries);
    if (es.info() != Eigen::Success) throw NumericalError("subspace_angle: eigensolver failed");
    const auto& ev = es.eigenvalues();
    const double tol = default_tolerances().loxodromy;
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return std::abs(ev(i)) > std::abs(ev(j)); });
    for (int i = 0; i < d; ++i)
        if (std::abs(ev(i).imag()) > tol * std::abs(ev(i))) throw DomainError("subspace_angle: input is not loxodromic");
    for (int i = 0; i + 1 < d; ++i)
        if (std::log(std::abs(ev(order[i]))) - std::log(std::abs(ev(order[i + 1]))) <= tol)
            throw DomainError("subspace_angle: input is not loxodromic");
    Mat top(d, k), bottom(d, d - k);
    for (int i = 0; i < k; ++i) top.col(i) = es.eigenvectors().col(order[i]).real();
    for (int i = k; i < d; ++i) bottom.col(i - k) = es.eigenvectors().col(order[i]).real();
    // unit wedge vectors of both subspaces; their pairing is the sine of the
    // angle between the top wedge and the hyperplane cut out by the bottom one
    Mat qt = Eigen::HouseholderQR<Mat>(top).householderQ() * Mat::Identity(d, k);
    Mat qb = Eigen::HouseholderQR<Mat>(bottom).householderQ() * Mat::Identity(d, d - k);
    Mat both(d, d);
    both << qt, qb;
    return std::asin(std::min(1.0, std::abs(both.determinant())));
}

DefectReport quasi_ruled_defect_of_admissible(const AdmissiblePath& path, const FinslerFunctional& f) {
    const int d = f.dim();
    Mat D = junction_distances(path, d, f);
    const int n = static_cast<int>(D.rows());
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) worst = std::max(worst, D(i, j) + D(j, k) - D(i, k));
    return DefectReport{worst, path.omega(), path.flat_min()};
}

}  // namespace graftlab
