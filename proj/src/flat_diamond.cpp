#include <cmath>
#include <limits>

#include "graftlab/polynorm.hpp"

namespace graftlab {

DiamondDistance distance_to_diamond(const SymPoint& x, const SymPoint& y, const SymPoint& z,
                                    const FinslerFunctional& f, int budget) {
    const int d = x.dim();
    if (budget < 1) throw DomainError("distance_to_diamond: budget >= 1 required");
    FlatChart chart = flat_through(x, y);
    Mat e = trace_free_basis(d);
    PolyNorm p = weyl_norm(d, f);
    Vec lam = e.transpose() * chart.lambda;
    DiamondDescription dd = diamond(Vec::Zero(d - 1), lam, p);

    auto phi = [&](const Vec& c) { return finsler_distance(z, chart.point(e * c), f); };

    Vec best = Vec::Zero(d - 1);
    double bestVal = phi(best);
    auto consider = [&](const Vec& c) {
        double v = phi(c);
        if (v < bestVal) {
            bestVal = v;
            best = c;
            return true;
        }
        return false;
    };
    for (double s : {0.25, 0.5, 0.75, 1.0}) consider(s * lam);

    // shadow of z on the flat
    Mat fi = chart.frame.inverse();
    Mat w = fi * z.factor.entries;
    Vec v0(d);
    for (int i = 0; i < d; ++i) v0(i) = std::log(std::max(w.row(i).norm(), 1e-300));
    v0.array() -= v0.mean();
    consider(project_to_diamond(dd, e.transpose() * v0));

    double h = 0.5 * std::max(lam.cwiseAbs().maxCoeff(), 1e-3);
    for (int level = 0; level < budget; ++level) {
        for (int sweep = 0; sweep < 50; ++sweep) {
            bool improved = false;
            for (int i = 0; i < d - 1; ++i)
                for (double sgn : {1.0, -1.0}) {
                    Vec c = best + sgn * h * Vec::Unit(d - 1, i);
                    if (consider(project_to_diamond(dd, c))) improved = true;
                }
            if (!improved) break;
        }
        h *= 0.5;
    }
    return DiamondDistance{bestVal, budget};
}

}  // namespace graftlab
