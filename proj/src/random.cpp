#include "graftlab/random.hpp"

namespace graftlab {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Vec random_trace_free(int d, Rng& rng, double amplitude) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = uniform(rng, -amplitude, amplitude);
    v.array() -= v.mean();
    return v;
}

Mat2 random_sl2(Rng& rng, double spread) {
    return sl2_rotation(uniform(rng, 0.0, 4.0 * M_PI)) * sl2_hyperbolic(uniform(rng, 0.0, spread)) *
           sl2_rotation(uniform(rng, 0.0, 4.0 * M_PI));
}

ScaledMatrix random_tnn(int d, Rng& rng) {
    Mat m = ScaledMatrix::diagonal_exp(random_trace_free(d, rng, 1.0)).represented();
    const int factors = 2 + static_cast<int>(rng() % 4);
    for (int f = 0; f < factors; ++f) {
        Mat e = Mat::Identity(d, d);
        int i = static_cast<int>(rng() % (d - 1));
        double c = uniform(rng, 0.0, 1.0);
        if (rng() % 2)
            e(i, i + 1) = c;
        else
            e(i + 1, i) = c;
        m = m * e;
    }
    return ScaledMatrix(m);
}

ScaledMatrix random_tp(int d, Rng& rng) {
    Mat2 r = sl2_rotation(M_PI / 2);
    auto ap = [&](double t) { return tau_embed(r * sl2_hyperbolic(t) * r.inverse(), d); };
    ScaledMatrix z = ScaledMatrix::diagonal_exp(random_trace_free(d, rng, 1.0));
    return scaled_mul(scaled_mul(ap(uniform(rng, 0.1, 1.0)), z), ap(uniform(rng, 0.1, 1.0)));
}

}  // namespace graftlab
