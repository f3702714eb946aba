#pragma once

#include "graftlab/admissible.hpp"

namespace graftlab {

enum class Verdict { TotallyPositive, TotallyNonnegative, Neither };
const char* to_string(Verdict v);

struct MinorLocation {
    int order = 0;
    std::vector<int> rows, cols;
    double value = 0.0;  // normalized by the largest entry of that order
};

struct PositivityReport {
    Verdict verdict = Verdict::Neither;
    MinorLocation worstMinor;
    double margin = 0.0;  // smallest normalized minor over all orders
};

// Elements are taken in PSL_d: for even d the sign making the largest entry
// positive is used.
PositivityReport total_positivity(const ScaledMatrix& m, double tol = 1e-10);
PositivityReport total_positivity(const WedgeTower& t, double tol = 1e-10);

PositivityReport admissible_increment_certificate(const AdmissiblePath& segment, int d, double tol = 1e-10);

Vec eigen_gaps(const ScaledMatrix& m);
Vec eigen_gaps(const WedgeTower& t);

double birkhoff_contraction(const Mat& m);

double subspace_angle(const ScaledMatrix& m, int k);

struct DefectReport {
    double defect = 0.0;
    double omega = 0.0;
    double L = 0.0;
};
DefectReport quasi_ruled_defect_of_admissible(const AdmissiblePath& path, const FinslerFunctional& f);

}  // namespace graftlab
