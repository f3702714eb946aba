#include <algorithm>
#include <cmath>
#include <numeric>

#include "graftlab/grafting.hpp"

namespace graftlab {

namespace {

struct Bender {
    WedgeTower zeta, zetaInv;
};

// zeta = B exp(z) B^{-1} with B = tau(P), P the eigenvector matrix of the
// hyperbolic edge element ordered by decreasing modulus
Bender edge_bender(const Mat2& edgeImage, const Vec& z) {
    const int d = static_cast<int>(z.size());
    if (z.cwiseAbs().maxCoeff() == 0.0) return {WedgeTower::identity(d), WedgeTower::identity(d)};
    const double tr = edgeImage.trace();
    if (!(std::abs(tr) > 2.0 + default_tolerances().loxodromy)) throw DomainError("bend: edge word is not loxodromic");
    Eigen::EigenSolver<Mat2> es(edgeImage);
    if (es.info() != Eigen::Success) throw NumericalError("bend: eigensolver failed on edge word");
    Eigen::Vector2d ev = es.eigenvalues().real();
    int big = std::abs(ev(0)) >= std::abs(ev(1)) ? 0 : 1;
    Mat2 P;
    P.col(0) = es.eigenvectors().col(big).real().normalized();
    P.col(1) = es.eigenvectors().col(1 - big).real().normalized();
    double det = P.determinant();
    if (std::abs(det) < 1e-14) throw NumericalError("bend: eigenvector matrix is singular");
    if (det < 0.0) {
        P.col(1) = -P.col(1);
        det = -det;
    }
    P /= std::sqrt(det);
    WedgeTower tb = tau_tower(P, d), tbi = tau_tower(Mat2(P.inverse()), d);
    return {tb * WedgeTower::diagonal_exp(z) * tbi, tb * WedgeTower::diagonal_exp(-z) * tbi};
}

}  // namespace

GraftedRepresentation::GraftedRepresentation(const FuchsianData& rho, const GraphOfGroups& graph,
                                             const std::map<std::string, Vec>& edgeShifts, int d,
                                             FinslerFunctional f)
    : d_(d), f_(std::move(f)), rho_(rho) {
    graph.validate();
    if (f_.dim() != d) throw DimensionError("bend: functional dimension mismatch");
    for (const auto& [name, z] : edgeShifts) {
        bool known = std::any_of(graph.edges.begin(), graph.edges.end(), [&](const GogEdge& e) { return e.name == name; });
        if (!known) throw DomainError("bend: shift for unknown edge " + name);
    }
    auto tau_of = [&](const Mat2& m) { return tau_tower(m, d); };

    std::vector<Bender> benders;
    for (const auto& e : graph.edges) {
        Vec z = Vec::Zero(d);
        auto it = edgeShifts.find(e.name);
        if (it != edgeShifts.end()) z = it->second;
        if (z.size() != d) throw DimensionError("bend: shift has the wrong dimension");
        if (std::abs(z.sum()) > 1e-9 * std::max(1.0, z.cwiseAbs().maxCoeff()))
            throw DomainError("bend: shift must be trace-free");
        benders.push_back(edge_bender(rho.evaluate(e.originWord), z));
    }

    const int nv = static_cast<int>(graph.vertices.size());
    std::vector<WedgeTower> omega(nv, WedgeTower::identity(d)), omegaInv(nv, WedgeTower::identity(d));
    for (int v = 1; v < nv; ++v) {
        WedgeTower w = WedgeTower::identity(d), wi = WedgeTower::identity(d);
        for (auto [e, oToT] : graph.tree_path(0, v)) {
            const Bender& b = benders[e];
            w = w * (oToT ? b.zeta : b.zetaInv);
            wi = (oToT ? b.zetaInv : b.zeta) * wi;
        }
        omega[v] = w;
        omegaInv[v] = wi;
    }

    for (int v = 0; v < nv; ++v)
        for (const auto& g : graph.vertices[v].generators) {
            if (rho.assignment.find(g) == rho.assignment.end()) throw DomainError("bend: no matrix for generator " + g);
            vertexOf_[g] = v;
        }
    omega_ = omega;
    omegaInv_ = omegaInv;
    // omega_a^{-1} omega_b straight from the tree path, without the cancellation
    transition_.assign(nv, std::vector<WedgeTower>(nv));
    for (int a = 0; a < nv; ++a)
        for (int b = 0; b < nv; ++b) {
            WedgeTower w = WedgeTower::identity(d);
            for (auto [e, oToT] : graph.tree_path(a, b)) w = w * (oToT ? benders[e].zeta : benders[e].zetaInv);
            transition_[a][b] = w;
        }
    for (size_t i = 0; i < graph.edges.size(); ++i) {
        const auto& e = graph.edges[i];
        if (e.inTree) continue;
        auto it = rho.assignment.find(e.stableLetter);
        if (it == rho.assignment.end()) throw DomainError("bend: no matrix for stable letter " + e.stableLetter);
        forward_[e.stableLetter] = omega[e.origin] * tau_of(it->second) * benders[i].zeta * omegaInv[e.target];
        backward_[e.stableLetter] =
            omega[e.target] * benders[i].zetaInv * tau_of(it->second.inverse()) * omegaInv[e.origin];
    }
}

WedgeTower GraftedRepresentation::product(const Word& w, bool cyclic) const {
    // runs of letters from one vertex group are multiplied in SL_2 first;
    // omega_a^{-1} omega_b between neighbouring runs becomes one transition
    WedgeTower t = WedgeTower::identity(d_);
    Mat2 run = Mat2::Identity();
    int runVertex = -1, pending = -1, lead = -1;
    bool started = false;
    auto flush = [&]() {
        if (runVertex < 0) return;
        if (pending >= 0) {
            if (pending != runVertex) t *= transition_[pending][runVertex];
        } else if (!started && cyclic) {
            lead = runVertex;  // conjugated away, closes the cycle at the end
        } else {
            t *= omega_[runVertex];
        }
        t *= tau_tower(run, d_);
        pending = runVertex;
        started = true;
        run = Mat2::Identity();
        runVertex = -1;
    };
    for (const auto& l : w) {
        auto v = vertexOf_.find(l.gen);
        if (v != vertexOf_.end()) {
            if (v->second != runVertex) flush();
            runVertex = v->second;
            const Mat2& m = rho_.assignment.at(l.gen);
            run = run * (l.inverse ? Mat2(m.inverse()) : m);
            continue;
        }
        flush();
        const auto& table = l.inverse ? backward_ : forward_;
        auto it = table.find(l.gen);
        if (it == table.end()) throw ParseError("GraftedRepresentation: unknown generator " + l.gen);
        if (pending >= 0) t *= omegaInv_[pending];
        pending = -1;
        t *= it->second;
        started = true;
    }
    flush();
    if (lead >= 0) {
        if (pending < 0)
            t *= omega_[lead];
        else if (pending != lead)
            t *= transition_[pending][lead];
    } else if (pending >= 0) {
        t *= omegaInv_[pending];
    }
    return t;
}

WedgeTower GraftedRepresentation::evaluate(const Word& w) const { return product(w, false); }

double GraftedRepresentation::translation_length(const Word& w) const {
    Word c = cyclic_reduce(w);
    if (c.empty()) return 0.0;
    return finsler_translation_length(product(c, true), f_);
}

}  // namespace graftlab
