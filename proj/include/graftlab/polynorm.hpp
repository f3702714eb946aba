#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "graftlab/lie_symmetric.hpp"

namespace graftlab {

// |v| = max over functionals alpha(v); the set is symmetric and spans the dual
struct PolyNorm {
    int dim = 0;
    std::vector<Vec> functionals;

    static PolyNorm from_functionals(std::vector<Vec> fs);
};

PolyNorm max_norm(int n);
// orthonormal basis (columns) of the trace-free hyperplane in R^d
Mat trace_free_basis(int d);
// finsler norm of R^d restricted to trace-free vectors, written in the
// coordinates of trace_free_basis(d)
PolyNorm weyl_norm(int d, const FinslerFunctional& f);

struct NormValue {
    double value = 0.0;
    std::vector<int> active;
};
NormValue norm_eval(const PolyNorm& p, const Vec& v, double tolActive = 1e-9);
double poly_distance(const PolyNorm& p, const Vec& x, const Vec& y);

// a . v <= b
struct Halfspace {
    Vec a;
    double b = 0.0;
};

struct DiamondDescription {
    Vec x, y;
    std::vector<int> activeXY, activeYX;
    std::vector<Halfspace> halfspaces;

    bool contains(const Vec& z, double tol = 1e-9) const;
    double max_violation(const Vec& z) const;
};

DiamondDescription diamond(const Vec& x, const Vec& y, const PolyNorm& p);
bool triangle_equality(const PolyNorm& p, const Vec& x, const Vec& y, const Vec& z, double tol = 1e-9);
bool crown_contains(const Vec& x, const Vec& y, const Vec& z, const PolyNorm& p, double tol = 1e-9);
Vec project_to_diamond(const Vec& x, const Vec& y, const Vec& z, const PolyNorm& p);
Vec project_to_diamond(const DiamondDescription& dd, const Vec& z);

using Metric = std::function<double(const Vec&, const Vec&)>;
Metric metric_of(const PolyNorm& p);

struct PolyPath {
    std::vector<Vec> breakpoints;

    int segments() const { return static_cast<int>(breakpoints.size()) - 1; }
    // s in [0, segments()]
    Vec at(double s) const;
};

struct QuasiRuledSampler {
    int interiorTriples = 10;  // per pair of segments
    std::uint64_t seed = 0;
};
double quasi_ruled_defect(const PolyPath& path, const Metric& metric, const QuasiRuledSampler& sampler = {});

double point_segment_distance(const Vec& z, const Vec& a, const Vec& b, const Metric& metric);
// symmetric Hausdorff distance sampled with spacing at most `resolution`
double hausdorff_distance(const PolyPath& a, const PolyPath& b, const Metric& metric, double resolution);

struct TrackResult {
    PolyPath geodesic;
    double hausdorff = 0.0;
    bool certified = false;
    double lengthError = 0.0;
};
TrackResult track_geodesic(const PolyPath& path, const PolyNorm& p, int samplesPerSegment = 4,
                           double certificateTol = 1e-7);

}  // namespace graftlab
