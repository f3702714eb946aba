#include "graftlab/polynorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "graftlab/qp.hpp"

namespace graftlab {

PolyNorm PolyNorm::from_functionals(std::vector<Vec> fs) {
    if (fs.empty()) throw DimensionError("PolyNorm: no functionals");
    const int n = static_cast<int>(fs[0].size());
    for (const auto& f : fs)
        if (f.size() != n) throw DimensionError("PolyNorm: functionals of mixed dimension");
    for (const auto& f : fs) {
        bool found = false;
        for (const auto& g : fs)
            if ((f + g).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + f.cwiseAbs().maxCoeff())) {
                found = true;
                break;
            }
        if (!found) throw DomainError("PolyNorm: functional set is not symmetric");
    }
    Mat m(fs.size(), n);
    for (size_t i = 0; i < fs.size(); ++i) m.row(i) = fs[i].transpose();
    if (Eigen::FullPivLU<Mat>(m).rank() < n) throw DomainError("PolyNorm: functionals do not span");
    return PolyNorm{n, std::move(fs)};
}

PolyNorm max_norm(int n) {
    if (n < 1) throw DimensionError("max_norm: n >= 1 required");
    std::vector<Vec> fs;
    for (int i = 0; i < n; ++i) {
        fs.push_back(Vec::Unit(n, i));
        fs.push_back(-Vec::Unit(n, i));
    }
    return PolyNorm{n, fs};
}

Mat trace_free_basis(int d) {
    Mat e = Mat::Zero(d, d - 1);
    for (int j = 1; j < d; ++j) {
        double s = 1.0 / std::sqrt(double(j) * (j + 1));
        for (int i = 0; i < j; ++i) e(i, j - 1) = s;
        e(j, j - 1) = -j * s;
    }
    return e;
}

PolyNorm weyl_norm(int d, const FinslerFunctional& f) {
    if (d < 2 || d > default_tolerances().maxWeylDimension) throw DimensionError("weyl_norm: 2 <= d <= 6");
    if (f.dim() != d) throw DimensionError("weyl_norm: functional dimension mismatch");
    Mat e = trace_free_basis(d);
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Vec> fs;
    do {
        Vec phi(d);
        for (int i = 0; i < d; ++i) phi(perm[i]) = f.scale * f.weights(i);
        fs.push_back(e.transpose() * phi);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return PolyNorm{d - 1, fs};
}

NormValue norm_eval(const PolyNorm& p, const Vec& v, double tolActive) {
    if (v.size() != p.dim) throw DimensionError("norm_eval: dimension mismatch");
    std::vector<double> vals(p.functionals.size());
    for (size_t i = 0; i < vals.size(); ++i) vals[i] = p.functionals[i].dot(v);
    NormValue out;
    out.value = *std::max_element(vals.begin(), vals.end());
    double cut = out.value - tolActive * std::max(1.0, std::abs(out.value));
    for (size_t i = 0; i < vals.size(); ++i)
        if (vals[i] >= cut) out.active.push_back(static_cast<int>(i));
    return out;
}

double poly_distance(const PolyNorm& p, const Vec& x, const Vec& y) { return norm_eval(p, y - x).value; }

Metric metric_of(const PolyNorm& p) {
    return [p](const Vec& a, const Vec& b) { return poly_distance(p, a, b); };
}

double DiamondDescription::max_violation(const Vec& z) const {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& h : halfspaces) worst = std::max(worst, h.a.dot(z) - h.b);
    return worst;
}

bool DiamondDescription::contains(const Vec& z, double tol) const {
    double s = 1.0 + std::max(x.cwiseAbs().maxCoeff(), y.cwiseAbs().maxCoeff());
    return halfspaces.empty() || max_violation(z) <= tol * s;
}

DiamondDescription diamond(const Vec& x, const Vec& y, const PolyNorm& p) {
    if (x.size() != p.dim || y.size() != p.dim) throw DimensionError("diamond: dimension mismatch");
    const double tol = default_tolerances().activeSet;
    DiamondDescription dd{x, y, norm_eval(p, y - x, tol).active, norm_eval(p, x - y, tol).active, {}};
    std::vector<Halfspace> raw;
    auto cone = [&](const std::vector<int>& active, const Vec& apex) {
        for (int ap : active)
            for (size_t i = 0; i < p.functionals.size(); ++i) {
                Vec a = p.functionals[i] - p.functionals[ap];
                double nr = a.norm();
                if (nr < 1e-14) continue;
                a /= nr;
                raw.push_back({a, a.dot(apex)});
            }
    };
    cone(dd.activeXY, x);
    cone(dd.activeYX, y);
    for (const auto& h : raw) {
        bool dup = false;
        for (const auto& g : dd.halfspaces)
            if ((g.a - h.a).cwiseAbs().maxCoeff() < 1e-12 && std::abs(g.b - h.b) < 1e-12) {
                dup = true;
                break;
            }
        if (!dup) dd.halfspaces.push_back(h);
    }
    return dd;
}

bool triangle_equality(const PolyNorm& p, const Vec& x, const Vec& y, const Vec& z, double tol) {
    double dxy = poly_distance(p, x, y);
    double defect = poly_distance(p, x, z) + poly_distance(p, z, y) - dxy;
    return std::abs(defect) <= tol * std::max(1.0, dxy);
}

bool crown_contains(const Vec& x, const Vec& y, const Vec& z, const PolyNorm& p, double tol) {
    DiamondDescription dd = diamond(x, y, p);
    if (!dd.contains(z, tol)) return false;
    if (dd.activeXY.size() > 1) return true;
    auto on_boundary = [&](const Vec& apex) {
        Vec w = z - apex;
        if (w.cwiseAbs().maxCoeff() <= tol) return true;
        return norm_eval(p, w, tol).active.size() > 1;
    };
    return on_boundary(x) && on_boundary(y);
}

Vec project_to_diamond(const DiamondDescription& dd, const Vec& z) {
    if (dd.halfspaces.empty()) return dd.x;
    Mat A(dd.halfspaces.size(), z.size());
    Vec b(dd.halfspaces.size());
    for (size_t i = 0; i < dd.halfspaces.size(); ++i) {
        A.row(i) = dd.halfspaces[i].a.transpose();
        b(i) = dd.halfspaces[i].b;
    }
    return project_onto_polytope(A, b, z, default_tolerances().qpMaxIterations).x;
}

Vec project_to_diamond(const Vec& x, const Vec& y, const Vec& z, const PolyNorm& p) {
    if (z.size() != p.dim) throw DimensionError("project_to_diamond: dimension mismatch");
    return project_to_diamond(diamond(x, y, p), z);
}

Vec PolyPath::at(double s) const {
    const int m = segments();
    if (m < 1) return breakpoints.at(0);
    int i = std::clamp(static_cast<int>(std::floor(s)), 0, m - 1);
    double t = std::clamp(s - i, 0.0, 1.0);
    return (1.0 - t) * breakpoints[i] + t * breakpoints[i + 1];
}

double quasi_ruled_defect(const PolyPath& path, const Metric& metric, const QuasiRuledSampler& sampler) {
    const int n = static_cast<int>(path.breakpoints.size());
    const auto& b = path.breakpoints;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                worst = std::max(worst, metric(b[i], b[j]) + metric(b[j], b[k]) - metric(b[i], b[k]));
    std::mt19937_64 rng(sampler.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int m = path.segments();
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
            for (int r = 0; r < sampler.interiorTriples; ++r) {
                double s = i + unit(rng), u = j + unit(rng);
                if (s > u) std::swap(s, u);
                double t = s + unit(rng) * (u - s);
                Vec a = path.at(s), c = path.at(t), e = path.at(u);
                worst = std::max(worst, metric(a, c) + metric(c, e) - metric(a, e));
            }
    return worst;
}

double point_segment_distance(const Vec& z, const Vec& a, const Vec& b, const Metric& metric) {
    double lo = 0.0, hi = 1.0;
    auto f = [&](double t) { return metric(z, a + t * (b - a)); };
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    return std::min({f1, f2, f(0.0), f(1.0)});
}

static double directed_hausdorff(const PolyPath& a, const PolyPath& b, const Metric& metric, double res) {
    double worst = 0.0;
    const int nb = b.segments();
    std::vector<double> lenB(std::max(nb, 0));
    for (int j = 0; j < nb; ++j) lenB[j] = metric(b.breakpoints[j], b.breakpoints[j + 1]);
    int hint = 0;
    // a sample only matters if it is farther than `worst` from every segment
    auto consider = [&](const Vec& z) {
        if (nb < 1) {
            worst = std::max(worst, metric(z, b.breakpoints.at(0)));
            return;
        }
        double best = std::numeric_limits<double>::infinity();
        for (int n = 0; n < nb; ++n) {
            const int j = (hint + n) % nb;
            // d(z, [p, q]) >= d(z, p) - |q - p|
            if (metric(z, b.breakpoints[j]) - lenB[j] >= best) continue;
            double dj = point_segment_distance(z, b.breakpoints[j], b.breakpoints[j + 1], metric);
            if (dj < best) {
                best = dj;
                hint = j;
            }
            if (best <= worst) return;
        }
        worst = std::max(worst, best);
    };
    for (int i = 0; i < a.segments(); ++i) {
        double len = metric(a.breakpoints[i], a.breakpoints[i + 1]);
        int steps = std::max(1, static_cast<int>(std::ceil(len / res)));
        for (int k = 0; k < steps; ++k) consider(a.at(i + double(k) / steps));
    }
    consider(a.breakpoints.back());
    return worst;
}

double hausdorff_distance(const PolyPath& a, const PolyPath& b, const Metric& metric, double resolution) {
    if (!(resolution > 0.0)) throw DomainError("hausdorff_distance: resolution must be positive");
    return std::max(directed_hausdorff(a, b, metric, resolution), directed_hausdorff(b, a, metric, resolution));
}

TrackResult track_geodesic(const PolyPath& path, const PolyNorm& p, int samplesPerSegment, double certificateTol) {
    if (path.breakpoints.size() < 2) throw DomainError("track_geodesic: path needs two points");
    if (samplesPerSegment < 1) throw DomainError("track_geodesic: samplesPerSegment >= 1");
    const Vec& x = path.breakpoints.front();
    const Vec& y = path.breakpoints.back();
    TrackResult out;
    std::vector<Vec>& w = out.geodesic.breakpoints;
    w.push_back(x);
    const int m = path.segments();
    for (int i = 0; i < m; ++i)
        for (int k = (i == 0 ? 1 : 0); k < samplesPerSegment; ++k) {
            Vec c = path.at(i + double(k) / samplesPerSegment);
            w.push_back(project_to_diamond(w.back(), y, c, p));
        }
    w.push_back(y);
    double total = 0.0;
    for (size_t i = 0; i + 1 < w.size(); ++i) total += poly_distance(p, w[i], w[i + 1]);
    double dxy = poly_distance(p, x, y);
    out.lengthError = std::abs(total - dxy);
    out.certified = out.lengthError <= certificateTol;
    Metric metric = metric_of(p);
    double res = std::max(dxy, 1e-9) / 200.0;
    out.hausdorff = hausdorff_distance(path, out.geodesic, metric, res);
    return out;
}

}  // namespace graftlab
