#pragma once

namespace graftlab {

struct Tolerances {
    double determinant = 1e-10;      // |det - 1| accepted by tau_embed and point constructors
    double homomorphism = 1e-9;      // tau(AB) vs tau(A)tau(B), relative
    double isometry = 1e-8;
    double positivity = 1e-10;       // normalized minor threshold
    double activeSet = 1e-9;         // relative slack for argmax sets
    double membership = 1e-9;        // halfspace / triangle equality slack
    double geodesicCertificate = 1e-7;
    double loxodromy = 1e-6;         // minimum gap between consecutive log-moduli
    int qpMaxIterations = 10000;
    int maxDimension = 8;
    int maxWeylDimension = 6;
    int maxPolyDimension = 5;
};

const Tolerances& default_tolerances();

}  // namespace graftlab
