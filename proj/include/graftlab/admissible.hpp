#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "graftlab/lie_symmetric.hpp"

namespace graftlab {

enum class PieceKind { Hyperbolic, Flat };

struct Piece {
    PieceKind kind = PieceKind::Hyperbolic;
    double param = 0.0;  // t for a'_t, s for exp(s z)
    Vec direction;       // flats only, unit Finsler norm, trace-free

    static Piece hyperbolic(double t) { return Piece{PieceKind::Hyperbolic, t, {}}; }
    static Piece flat(const Vec& z, double s) { return Piece{PieceKind::Flat, s, z}; }
    // Finsler length: 2t for hyperbolic pieces, s for flats
    double length() const { return kind == PieceKind::Hyperbolic ? 2.0 * param : param; }
};

struct AdmissiblePath {
    std::vector<Piece> pieces;
    std::optional<ScaledMatrix> leftAnchor;

    // smallest hyperbolic parameter and smallest flat length (0 if absent)
    double omega() const;
    double flat_min() const;
};

void validate(const AdmissiblePath& path, int d, const FinslerFunctional& f);
WedgeTower piece_tower(const Piece& p, int d);

struct AdmissibleEvaluation {
    WedgeTower endpoint;
    double lengthF = 0.0;
    std::vector<WedgeTower> junctions;  // anchor, anchor*P1, ..., endpoint
};
AdmissibleEvaluation admissible_evaluate(const AdmissiblePath& path, int d, const FinslerFunctional& f);

// increments[i][j] = Finsler distance between junction i and junction j
Mat junction_distances(const AdmissiblePath& path, int d, const FinslerFunctional& f);

// cone-volume uniform sample of the unit Finsler sphere in the trace-free subspace
Vec random_unit_direction(int d, const FinslerFunctional& f, std::mt19937_64& rng);

AdmissiblePath random_admissible(double omega, double L, int pieceCount, int d, std::uint64_t seed,
                                 const FinslerFunctional& f);

}  // namespace graftlab
