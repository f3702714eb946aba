#include "graftlab/admissible.hpp"

#include <cmath>
#include <map>

#include "graftlab/polynorm.hpp"

namespace graftlab {

double AdmissiblePath::omega() const {
    double w = 0.0;
    bool any = false;
    for (const auto& p : pieces)
        if (p.kind == PieceKind::Hyperbolic) {
            w = any ? std::min(w, p.param) : p.param;
            any = true;
        }
    return w;
}

double AdmissiblePath::flat_min() const {
    double w = 0.0;
    bool any = false;
    for (const auto& p : pieces)
        if (p.kind == PieceKind::Flat) {
            w = any ? std::min(w, p.param) : p.param;
            any = true;
        }
    return w;
}

void validate(const AdmissiblePath& path, int d, const FinslerFunctional& f) {
    if (f.dim() != d) throw DimensionError("admissible path: functional dimension mismatch");
    if (path.leftAnchor && path.leftAnchor->dim() != d) throw DimensionError("admissible path: anchor dimension");
    for (const auto& p : path.pieces) {
        if (!std::isfinite(p.param) || p.param < 0.0) throw DomainError("admissible path: negative piece parameter");
        if (p.kind == PieceKind::Flat) {
            if (p.direction.size() != d) throw DimensionError("admissible path: flat direction dimension");
            if (std::abs(p.direction.sum()) > 1e-10) throw DomainError("admissible path: flat direction not trace-free");
            if (std::abs(finsler_norm(p.direction, f) - 1.0) > 1e-10)
                throw DomainError("admissible path: flat direction must have unit Finsler norm");
        }
    }
}

static const std::pair<WedgeTower, WedgeTower>& quarter_rotation(int d) {
    thread_local std::map<int, std::pair<WedgeTower, WedgeTower>> cache;
    auto it = cache.find(d);
    if (it == cache.end()) {
        Mat2 r = sl2_rotation(M_PI / 2);
        it = cache.emplace(d, std::make_pair(WedgeTower(tau_embed(r, d)), WedgeTower(tau_embed(r.transpose(), d)))).first;
    }
    return it->second;
}

WedgeTower piece_tower(const Piece& p, int d) {
    if (p.kind == PieceKind::Flat) return WedgeTower::diagonal_exp(p.param * p.direction);
    // a'_t = r a_t r^{-1} with r orthogonal keeps every minor well conditioned
    const auto& [r, ri] = quarter_rotation(d);
    return r * WedgeTower::diagonal_exp(p.param * principal_direction(d)) * ri;
}

AdmissibleEvaluation admissible_evaluate(const AdmissiblePath& path, int d, const FinslerFunctional& f) {
    validate(path, d, f);
    AdmissibleEvaluation out;
    out.endpoint = path.leftAnchor ? WedgeTower(*path.leftAnchor) : WedgeTower::identity(d);
    out.junctions.push_back(out.endpoint);
    for (const auto& p : path.pieces) {
        out.endpoint *= piece_tower(p, d);
        out.lengthF += p.length();
        out.junctions.push_back(out.endpoint);
    }
    return out;
}

Mat junction_distances(const AdmissiblePath& path, int d, const FinslerFunctional& f) {
    validate(path, d, f);
    const int m = static_cast<int>(path.pieces.size());
    std::vector<WedgeTower> towers;
    for (const auto& p : path.pieces) towers.push_back(piece_tower(p, d));
    Mat D = Mat::Zero(m + 1, m + 1);
    for (int i = 0; i < m; ++i) {
        WedgeTower acc = WedgeTower::identity(d);
        for (int j = i + 1; j <= m; ++j) {
            acc *= towers[j - 1];
            D(i, j) = D(j, i) = finsler_displacement(acc, f);
        }
    }
    return D;
}

Vec random_unit_direction(int d, const FinslerFunctional& f, std::mt19937_64& rng) {
    Mat e = trace_free_basis(d);
    double gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < d; ++i) gap = std::min(gap, f.weights(i) - f.weights(i + 1));
    const double radius = std::sqrt(double(d)) / (f.scale * gap);
    std::uniform_real_distribution<double> box(-radius, radius);
    for (int attempt = 0; attempt < 1000000; ++attempt) {
        Vec c(d - 1);
        for (int i = 0; i < d - 1; ++i) c(i) = box(rng);
        Vec v = e * c;
        double n = finsler_norm(v, f);
        if (n <= 1.0 && n > 1e-6) {
            v /= n;
            v.array() -= v.mean();
            return v / finsler_norm(v, f);
        }
    }
    throw NumericalError("random_unit_direction: rejection sampling failed");
}

AdmissiblePath random_admissible(double omega, double L, int pieceCount, int d, std::uint64_t seed,
                                 const FinslerFunctional& f) {
    if (omega < 0.0 || L < 0.0) throw DomainError("random_admissible: omega and L must be nonnegative");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    AdmissiblePath path;
    for (int i = 0; i < pieceCount; ++i) {
        if (i % 2 == 0) {
            double t = omega + omega * unit(rng);
            if (t <= 0.0) continue;
            if (!path.pieces.empty() && path.pieces.back().kind == PieceKind::Hyperbolic)
                path.pieces.back().param += t;
            else
                path.pieces.push_back(Piece::hyperbolic(t));
        } else {
            if (L == 0.0 && unit(rng) < 0.5) continue;
            double s = L + std::max(L, 1.0) * unit(rng);
            Vec z = random_unit_direction(d, f, rng);
            if (s > 0.0) path.pieces.push_back(Piece::flat(z, s));
        }
    }
    return path;
}

}  // namespace graftlab
