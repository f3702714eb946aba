#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "graftlab/grafting.hpp"
#include "graftlab/polynorm.hpp"
#include "graftlab/positivity.hpp"

namespace graftlab {

std::string fmt17(double x);

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
    std::string str() const;
    void write(const std::filesystem::path& file) const;
};

struct Finding {
    bool pass = true;
    std::vector<std::string> failures;

    void fail(std::string what);
};

// ---- tau-check

enum class TauFault { None, SignFlip };

struct TauCheckOptions {
    int dMin = 3, dMax = 6;
    int trials = 100;
    double spread = 2.0;
    std::uint64_t seed = 1;
    TauFault fault = TauFault::None;
};

struct TauCheckResult {
    Csv csv;
    Finding finding;
    double maxHomomorphism = 0.0, maxIsometry = 0.0;
};
TauCheckResult tau_check(const TauCheckOptions& o);

// ---- positivity-scan

struct PositivityScanOptions {
    int dMin = 2, dMax = 6;
    int samples = 200;
    std::uint64_t seed = 1;
};

struct PositivityScanResult {
    Csv csv;
    Finding finding;
    int violations = 0;
};
PositivityScanResult positivity_scan(const PositivityScanOptions& o);

// ---- Jordan limit kappa(g^n)/n -> lambda(g)

struct JordanOptions {
    int dMin = 3, dMax = 6;
    int samples = 50;
    int power = 64;
    double nonNormality = 0.03;
    std::uint64_t seed = 1;
};

struct JordanResult {
    Csv csv;
    double maxError = 0.0;
};
JordanResult jordan_limit(const JordanOptions& o);

// ---- diamond-selftest

struct DiamondSelftestResult {
    Finding finding;
    int points = 0;
    int disagreements = 0;
    std::string firstDisagreement;
};
// dim 2: max norm on R^2; dim 3: Weyl norm of SL_3 in trace-free coordinates
DiamondSelftestResult diamond_selftest(int dim, int grid = 100, std::uint64_t seed = 1, double tol = 1e-9);

// ---- morse

enum class NormKind { Max, Weyl };

struct MorseOptions {
    int dim = 2;
    NormKind norm = NormKind::Max;
    std::vector<double> cs{0.5, 1.0, 2.0};
    int trials = 100;
    int segments = 6;
    std::uint64_t seed = 1;
};

struct MorseResult {
    Csv csv;
    Finding finding;
    double maxRatio = 0.0;  // hausdorff / C
    std::map<double, double> maxRatioPerC;
};
PolyNorm norm_for(NormKind kind, int dim);
MorseResult morse_experiment(const MorseOptions& o);

// ---- admissible sweep

struct AdmissibleOptions {
    double omega = 0.5;
    std::vector<double> Ls{0.0, 1.0, 5.0, 20.0};
    int pieces = 6;
    int trials = 200;
    int d = 4;
    std::uint64_t seed = 1;
};

struct AdmissibleSummary {
    double maxDefect = 0.0;
    double minRatio = 1.0;
};

struct AdmissibleResult {
    Csv csv;
    std::map<double, AdmissibleSummary> perL;
    bool singlePieceExact = true;
};
AdmissibleResult admissible_sweep(const AdmissibleOptions& o);
// smallest C with min ratio >= (1 + C/(L+1))^-1 for every L of the sweep
double fitted_ratio_constant(const AdmissibleResult& r);

// ---- eigenvalue gap growth along products of a'_t and TNN factors

struct GapGrowthOptions {
    double t = 0.5;
    int d = 4;
    int nMax = 20;
    int trials = 10;
    std::uint64_t seed = 1;
};

struct GapGrowthResult {
    Csv csv;
    std::vector<double> minGap;  // index n-1
    double slope = 0.0, intercept = 0.0;
};
GapGrowthResult gap_growth(const GapGrowthOptions& o);

// ---- displacement of admissible increments

struct DisplacementOptions {
    double omega = 0.5;
    int d = 4;
    int pieces = 10;
    int trials = 50;
    std::uint64_t seed = 1;
};

struct DisplacementResult {
    Csv csv;
    double minDistance = 0.0;  // over all nontrivial increments
    double fittedC = 0.0;      // max (k-2)/d over increments with k >= 3
    std::vector<std::pair<int, double>> increments;  // (k, distance)
};
DisplacementResult displacement_experiment(const DisplacementOptions& o);

// ---- scenario driven runs

struct Scenario;

struct GraftRayResult {
    Csv csv;
    Finding finding;
    // |ratio - 1| at the largest t, per word with nonzero slope
    std::map<std::string, double> finalDeviation;
};
SurfaceModel scenario_model(const Scenario& s);
FinslerFunctional scenario_functional(const Scenario& s);
GraftRayResult graft_ray(const Scenario& s);

struct KernelOptions {
    int d = 3;
    std::vector<double> heights{1.0, 4.0, 16.0};
    int words = 40;
    int maxWordLength = 8;
    std::uint64_t seed = 1;
};

struct KernelResult {
    Csv csv;
    double minRatio = 1.0;  // l^F(rho_z(g)) / l^F(rho_0(g))
    double minRatioCrossing = std::numeric_limits<double>::infinity();  // words with iota > 0
};
// z in the kernel of alpha0, scaled to the requested cylinder heights
KernelResult kernel_monotonicity(const KernelOptions& o);

}  // namespace graftlab
