#pragma once

#include <map>
#include <string>

#include "graftlab/lie_symmetric.hpp"
#include "graftlab/words.hpp"

namespace graftlab {

struct FuchsianData {
    std::map<std::string, Mat2> assignment;
    std::vector<Word> relators;
    Word markedCurve;
    double boundaryLength = 0.0;

    Mat2 evaluate(const Word& w) const;
};

// |tr| -> translation length in the hyperbolic plane
double sl2_translation_length(const Mat2& m);
bool psl2_equal(const Mat2& a, const Mat2& b, double tol);

struct TorusHandle {
    Mat2 a, b;
    double trAB = 0.0;
};
// [a,b] = -diag(e^{l/2}, e^{-l/2}) in SL_2, i.e. diagonal in PSL_2
TorusHandle one_holed_torus(double ell, double trA, double trB);

struct Genus2Shape {
    double trA1 = 3.0, trB1 = 3.0, trA2 = 3.0, trB2 = 3.0;
};

struct SurfaceModel {
    FuchsianData rho;
    GraphOfGroups graph;
};

// amalgam over the separating curve [a1,b1]
SurfaceModel genus2_fuchsian(double ell, double twist, const Genus2Shape& shape = {});
// same representation split along the non-separating curve a1 (HNN, stable letter b1)
SurfaceModel genus2_hnn(double ell, double twist, const Genus2Shape& shape = {});

// no reduced word of length <= maxLength is elliptic or parabolic
bool fuchsian_screen(const FuchsianData& rho, int maxLength, double margin = 1e-6);

double cylinder_height(const Vec& z, const FinslerFunctional& f);
double collar_size(double sigma);

class GraftedRepresentation {
public:
    GraftedRepresentation(const FuchsianData& rho, const GraphOfGroups& graph,
                          const std::map<std::string, Vec>& edgeShifts, int d, FinslerFunctional f);

    int dim() const { return d_; }
    const FinslerFunctional& functional() const { return f_; }
    WedgeTower evaluate(const Word& w) const;
    ScaledMatrix evaluate_matrix(const Word& w) const { return evaluate(w).matrix(); }
    // lengths are conjugacy invariant, so the word is cyclically reduced first
    double translation_length(const Word& w) const;

private:
    // cyclic: conjugated so the first run needs no omega
    WedgeTower product(const Word& w, bool cyclic) const;

    int d_;
    FinslerFunctional f_;
    FuchsianData rho_;
    std::map<std::string, int> vertexOf_;
    std::vector<WedgeTower> omega_, omegaInv_;
    std::vector<std::vector<WedgeTower>> transition_;
    // stable letters
    std::map<std::string, WedgeTower> forward_, backward_;
};

}  // namespace graftlab
