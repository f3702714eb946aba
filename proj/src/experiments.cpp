#include "graftlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "graftlab/random.hpp"
#include "graftlab/scenario.hpp"

namespace graftlab {

std::string fmt17(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void Csv::add(std::vector<std::string> row) {
    if (row.size() != header.size()) throw DimensionError("csv: row width does not match the header");
    rows.push_back(std::move(row));
}

std::string Csv::str() const {
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& r) {
        for (size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
        out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out.str();
}

void Csv::write(const std::filesystem::path& file) const {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error("csv: cannot write " + file.string());
    out << str();
}

void Finding::fail(std::string what) {
    pass = false;
    failures.push_back(std::move(what));
}

namespace {

std::string str(int x) { return std::to_string(x); }

Mat random_orthogonal(int d, Rng& rng) {
    std::normal_distribution<double> n;
    Mat g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = n(rng);
    Eigen::HouseholderQR<Mat> qr(g);
    return qr.householderQ();
}

Word random_word(Rng& rng, const std::vector<std::string>& gens, int length) {
    Word w;
    while (static_cast<int>(w.size()) < length) {
        Letter l{gens[rng() % gens.size()], rng() % 2 == 1};
        if (!w.empty() && w.back() == l.inv()) continue;
        w.push_back(l);
    }
    return w;
}

double sup_norm(const Vec& v) {
    double m = 0.0;
    for (int i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v(i)));
    return m;
}

}  // namespace

using Mat2L = Eigen::Matrix<long double, 2, 2>;
using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

TauCheckResult tau_check(const TauCheckOptions& o) {
    if (o.dMin < 2 || o.dMax < o.dMin || o.dMax > default_tolerances().maxDimension)
        throw DomainError("tau_check: d range must lie in 2..8");
    TauCheckResult r;
    r.csv.header = {"d", "trial", "homomorphism_error", "h2_isometry_error"};
    const auto& tol = default_tolerances();
    Rng rng(o.seed);
    for (int d = o.dMin; d <= o.dMax; ++d) {
        FinslerFunctional f = FinslerFunctional::standard(d);
        for (int trial = 0; trial < o.trials; ++trial) {
            Mat2 a = random_sl2(rng, o.spread), b = random_sl2(rng, o.spread);
            // products of tau(a) tau(b) cancel down to |tau(ab)|, so double rounding alone reaches
            // eps |tau(a)| |tau(b)| / |tau(ab)|; the identity itself is checked in extended precision
            const Mat2L al = a.cast<long double>(), bl = b.cast<long double>();
            MatL ta = tau_matrix_of(al, d), tb = tau_matrix_of(bl, d), tab = tau_matrix_of<long double>(al * bl, d);
            if (o.fault == TauFault::SignFlip) tb(0, 1) = -tb(0, 1);
            double hom = static_cast<double>((tab - ta * tb).cwiseAbs().maxCoeff() / tab.cwiseAbs().maxCoeff());
            // plain singular values of tau(a) lose the small end once d and |a| grow
            double iso = std::abs(finsler_displacement(tau_tower(a, d), f) - hyperbolic_displacement(a));
            r.maxHomomorphism = std::max(r.maxHomomorphism, hom);
            r.maxIsometry = std::max(r.maxIsometry, iso);
            r.csv.add({str(d), str(trial), fmt17(hom), fmt17(iso)});
            if (hom >= tol.homomorphism)
                r.finding.fail("homomorphism error " + fmt17(hom) + " at d=" + str(d) + " trial=" + str(trial));
            if (iso >= tol.isometry)
                r.finding.fail("isometry error " + fmt17(iso) + " at d=" + str(d) + " trial=" + str(trial));
        }
    }
    return r;
}

PositivityScanResult positivity_scan(const PositivityScanOptions& o) {
    if (o.dMin < 2 || o.dMax < o.dMin || o.dMax > default_tolerances().maxDimension)
        throw DomainError("positivity_scan: d range must lie in 2..8");
    PositivityScanResult r;
    r.csv.header = {"test", "d", "margin", "verdict"};
    Rng rng(o.seed);
    auto record = [&](const std::string& test, int d, const PositivityReport& rep, bool ok) {
        r.csv.add({test, str(d), fmt17(rep.margin), to_string(rep.verdict)});
        if (!ok) {
            ++r.violations;
            r.finding.fail(test + " at d=" + str(d) + ": " + to_string(rep.verdict) + " margin " + fmt17(rep.margin));
        }
    };
    auto tp_tower = [&](int d) {
        // a'_t exp(z) a'_s from exact pieces
        return piece_tower(Piece::hyperbolic(uniform(rng, 0.1, 1.0)), d) *
               WedgeTower::diagonal_exp(random_trace_free(d, rng, 1.0)) *
               piece_tower(Piece::hyperbolic(uniform(rng, 0.1, 1.0)), d);
    };
    const int small = std::max(1, o.samples / 10);
    for (int d = o.dMin; d <= o.dMax; ++d) {
        PositivityReport id = total_positivity(WedgeTower::identity(d));
        record("identity", d, id, id.verdict == Verdict::TotallyNonnegative);

        for (double t : {0.1, 1.0, 5.0}) {
            PositivityReport a = total_positivity(piece_tower(Piece::hyperbolic(t), d));
            record("a_prime_" + fmt17(t), d, a, a.verdict == Verdict::TotallyPositive);
        }
        for (int i = 0; i < small; ++i) {
            PositivityReport e = total_positivity(WedgeTower::diagonal_exp(random_trace_free(d, rng, 2.0)));
            record("exp_cartan", d, e, e.verdict != Verdict::Neither);
        }
        for (int i = 0; i < small; ++i) {
            PositivityReport e = total_positivity(tau_tower(sl2_positive(uniform(rng, 0.1, 3.0)), d));
            record("tau_positive", d, e, e.verdict == Verdict::TotallyPositive);
        }
        for (int i = 0; i < o.samples; ++i) {
            WedgeTower p = tp_tower(d);
            WedgeTower q(random_tnn(d, rng));
            PositivityReport pq = total_positivity(p * q), qp = total_positivity(q * p);
            record("semigroup_tp_tnn", d, pq, pq.verdict == Verdict::TotallyPositive);
            record("semigroup_tnn_tp", d, qp, qp.verdict == Verdict::TotallyPositive);
        }
        // g F_std is transverse to F_opp iff the leading principal minors of g vanish nowhere
        for (int i = 0; i < small; ++i) {
            WedgeTower g = tp_tower(d);
            PositivityReport rep;
            rep.margin = 1.0;
            for (int k = 1; k < d; ++k) {
                const ScaledMatrix& lv = g.level(k);
                rep.margin = std::min(rep.margin, lv.entries(0, 0) / lv.entries.cwiseAbs().maxCoeff());
            }
            bool ok = rep.margin > default_tolerances().positivity;
            rep.verdict = ok ? Verdict::TotallyPositive : Verdict::Neither;
            record("transversality", d, rep, ok);
        }
    }
    return r;
}

JordanResult jordan_limit(const JordanOptions& o) {
    JordanResult r;
    r.csv.header = {"d", "sample", "error"};
    Rng rng(o.seed);
    std::normal_distribution<double> gauss;
    const int span = o.dMax - o.dMin + 1;
    for (int s = 0; s < o.samples; ++s) {
        const int d = o.dMin + s % span;
        Vec v(d);
        v(0) = 0.0;
        for (int i = 1; i < d; ++i) v(i) = v(i - 1) - uniform(rng, 0.5, 1.5);
        v.array() -= v.mean();
        Mat n(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) n(i, j) = gauss(rng);
        Mat h = random_orthogonal(d, rng) * (Mat::Identity(d, d) + o.nonNormality * n);
        Mat g = h * ScaledMatrix::diagonal_exp(v).represented() * h.inverse();
        ScaledMatrix gs(g);
        Vec lambda = eig_log_moduli(gs).values;
        Vec kappa = svd_log(WedgeTower(gs).power(o.power)).values / o.power;
        double err = sup_norm(kappa - lambda);
        r.maxError = std::max(r.maxError, err);
        r.csv.add({str(d), str(s), fmt17(err)});
    }
    return r;
}

DiamondSelftestResult diamond_selftest(int dim, int grid, std::uint64_t seed, double tol) {
    PolyNorm p;
    if (dim == 2)
        p = max_norm(2);
    else if (dim == 3)
        p = weyl_norm(3, FinslerFunctional::standard(3));
    else
        throw DomainError("diamond_selftest: dim must be 2 or 3");
    DiamondSelftestResult r;
    Rng rng(seed);
    Vec x(2), y(2);
    x << uniform(rng, -0.5, 0.5), uniform(rng, -0.5, 0.5);
    y << uniform(rng, 1.0, 2.5), uniform(rng, -0.5, 2.5);
    DiamondDescription dd = diamond(x, y, p);
    Vec lo = x.cwiseMin(y).array() - 0.5, hi = x.cwiseMax(y).array() + 0.5;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            Vec z(2);
            z << lo(0) + (hi(0) - lo(0)) * i / (grid - 1), lo(1) + (hi(1) - lo(1)) * j / (grid - 1);
            ++r.points;
            bool a = dd.contains(z, tol), b = triangle_equality(p, x, y, z, tol);
            // grid points on the boundary itself are ties, not disagreements
            if (a != b && std::abs(dd.max_violation(z)) > 10.0 * tol) {
                if (r.disagreements++ == 0) {
                    std::ostringstream s;
                    s << "z=(" << fmt17(z(0)) << "," << fmt17(z(1)) << ") halfspace=" << a << " triangle=" << b;
                    r.firstDisagreement = s.str();
                }
            }
        }
    // x = y: the diamond is the single point
    DiamondDescription point = diamond(x, x, p);
    if (!point.contains(x, tol)) r.finding.fail("degenerate diamond misses its point");
    Vec off = x;
    off(0) += 1e-3;
    if (point.contains(off, tol)) r.finding.fail("degenerate diamond is not a singleton");
    if (r.disagreements > 0)
        r.finding.fail(str(r.disagreements) + " disagreements, first at " + r.firstDisagreement);
    return r;
}

PolyNorm norm_for(NormKind kind, int dim) {
    if (dim < 1 || dim > default_tolerances().maxPolyDimension) throw DomainError("morse: dim must lie in 1..5");
    if (kind == NormKind::Max) return max_norm(dim);
    return weyl_norm(dim + 1, FinslerFunctional::standard(dim + 1));
}

MorseResult morse_experiment(const MorseOptions& o) {
    PolyNorm p = norm_for(o.norm, o.dim);
    Metric metric = metric_of(p);
    MorseResult r;
    r.csv.header = {"C", "trial", "certified", "hausdorff", "hausdorff_over_C"};
    Rng rng(o.seed);
    std::normal_distribution<double> gauss;
    auto unit = [&]() {
        Vec v(o.dim);
        for (int i = 0; i < o.dim; ++i) v(i) = gauss(rng);
        return Vec(v / norm_eval(p, v).value);
    };
    for (double c : o.cs) {
        if (!(c > 0.0)) throw DomainError("morse: C must be positive");
        double worst = 0.0;
        for (int trial = 0; trial < o.trials; ++trial) {
            Vec x = Vec::Zero(o.dim), y = uniform(rng, 4.0, 8.0) * unit();
            std::vector<Vec> bumps;
            for (int i = 1; i < o.segments; ++i) bumps.push_back(unit());
            QuasiRuledSampler sampler{6, rng()};
            auto zigzag = [&](double s) {
                PolyPath path;
                path.breakpoints.push_back(x);
                for (int i = 1; i < o.segments; ++i)
                    path.breakpoints.push_back(x + (y - x) * (double(i) / o.segments) + s * bumps[i - 1]);
                path.breakpoints.push_back(y);
                return path;
            };
            auto defect = [&](double s) { return quasi_ruled_defect(zigzag(s), metric, sampler); };
            // the defect grows roughly linearly in the bump size; rescale until it is within C
            double size = c, dv = defect(size);
            for (int it = 0; dv > c; ++it) {
                if (it == 40) throw NumericalError("morse: could not build a quasi-ruled zigzag");
                size *= 0.98 * c / dv;
                dv = defect(size);
            }
            TrackResult tr = track_geodesic(zigzag(size), p);
            double ratio = tr.hausdorff / c;
            worst = std::max(worst, ratio);
            r.csv.add({fmt17(c), str(trial), tr.certified ? "1" : "0", fmt17(tr.hausdorff), fmt17(ratio)});
            if (!tr.certified)
                r.finding.fail("uncertified geodesic at C=" + fmt17(c) + " trial=" + str(trial));
        }
        r.maxRatioPerC[c] = worst;
        r.maxRatio = std::max(r.maxRatio, worst);
    }
    return r;
}

AdmissibleResult admissible_sweep(const AdmissibleOptions& o) {
    if (!(o.omega > 0.0)) throw DomainError("admissible: omega must be positive");
    FinslerFunctional f = FinslerFunctional::standard(o.d);
    AdmissibleResult r;
    r.csv.header = {"L", "trial", "lengthF", "endpointDist", "defectMax", "ratio", "junctions"};
    Rng rng(o.seed);
    for (double L : o.Ls) {
        AdmissibleSummary sum;
        for (int trial = 0; trial < o.trials; ++trial) {
            AdmissiblePath path = random_admissible(o.omega, L, o.pieces, o.d, rng(), f);
            AdmissibleEvaluation ev = admissible_evaluate(path, o.d, f);
            double dist = finsler_displacement(ev.endpoint, f);
            double defect = quasi_ruled_defect_of_admissible(path, f).defect;
            double ratio = ev.lengthF > 0.0 ? dist / ev.lengthF : 1.0;
            sum.maxDefect = std::max(sum.maxDefect, defect);
            sum.minRatio = std::min(sum.minRatio, ratio);
            r.csv.add({fmt17(L), str(trial), fmt17(ev.lengthF), fmt17(dist), fmt17(defect), fmt17(ratio),
                       str(static_cast<int>(path.pieces.size()) + 1)});
        }
        r.perL[L] = sum;
        r.csv.add({fmt17(L), "summary", "", "", fmt17(sum.maxDefect), fmt17(sum.minRatio), ""});

        for (const Piece& single :
             {Piece::hyperbolic(o.omega), Piece::flat(random_unit_direction(o.d, f, rng), std::max(L, 1.0))}) {
            AdmissiblePath one{{single}, std::nullopt};
            AdmissibleEvaluation ev = admissible_evaluate(one, o.d, f);
            if (std::abs(finsler_displacement(ev.endpoint, f) / ev.lengthF - 1.0) > 1e-12) r.singlePieceExact = false;
        }
    }
    return r;
}

double fitted_ratio_constant(const AdmissibleResult& r) {
    double c = 0.0;
    for (const auto& [L, s] : r.perL) c = std::max(c, (L + 1.0) * (1.0 / s.minRatio - 1.0));
    return c;
}

GapGrowthResult gap_growth(const GapGrowthOptions& o) {
    GapGrowthResult r;
    r.csv.header = {"n", "trial", "min_gap"};
    r.minGap.assign(o.nMax, std::numeric_limits<double>::infinity());
    Rng rng(o.seed);
    WedgeTower a = piece_tower(Piece::hyperbolic(o.t), o.d);
    for (int trial = 0; trial < o.trials; ++trial) {
        WedgeTower h = WedgeTower::identity(o.d);
        for (int n = 1; n <= o.nMax; ++n) {
            h = h * a * WedgeTower(random_tnn(o.d, rng));
            double g = eigen_gaps(h).minCoeff();
            r.minGap[n - 1] = std::min(r.minGap[n - 1], g);
            r.csv.add({str(n), str(trial), fmt17(g)});
        }
    }
    // least squares line through (n, minGap)
    const int m = o.nMax;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int n = 1; n <= m; ++n) {
        double y = r.minGap[n - 1];
        sx += n;
        sy += y;
        sxx += double(n) * n;
        sxy += n * y;
    }
    r.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    r.intercept = (sy - r.slope * sx) / m;
    return r;
}

DisplacementResult displacement_experiment(const DisplacementOptions& o) {
    FinslerFunctional f = FinslerFunctional::standard(o.d);
    DisplacementResult r;
    r.csv.header = {"trial", "from", "to", "pieces", "distance"};
    r.minDistance = std::numeric_limits<double>::infinity();
    Rng rng(o.seed);
    for (int trial = 0; trial < o.trials; ++trial) {
        AdmissiblePath path = random_admissible(o.omega, 0.0, o.pieces, o.d, rng(), f);
        Mat D = junction_distances(path, o.d, f);
        const int m = static_cast<int>(D.rows());
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                const int k = j - i;  // pieces in the increment
                r.increments.emplace_back(k, D(i, j));
                r.minDistance = std::min(r.minDistance, D(i, j));
                if (k >= 3) r.fittedC = std::max(r.fittedC, (k - 2) / D(i, j));
                r.csv.add({str(trial), str(i), str(j), str(k), fmt17(D(i, j))});
            }
    }
    return r;
}

SurfaceModel scenario_model(const Scenario& s) {
    if (s.fuchsian.splitting == "separating") return genus2_fuchsian(s.fuchsian.ell, s.fuchsian.twist, s.fuchsian.shape);
    return genus2_hnn(s.fuchsian.ell, s.fuchsian.twist, s.fuchsian.shape);
}

FinslerFunctional scenario_functional(const Scenario& s) {
    if (s.finslerWeights) return FinslerFunctional::custom(*s.finslerWeights, s.finslerScale);
    return FinslerFunctional::standard(s.d);
}

GraftRayResult graft_ray(const Scenario& s) {
    SurfaceModel model = scenario_model(s);
    FinslerFunctional f = scenario_functional(s);
    if (model.graph.edges.size() != 1) throw DomainError("graft_ray: the surface model must have one bending edge");
    const std::string edge = model.graph.edges[0].name;
    for (const auto& [name, _] : s.grafting)
        if (name != edge) throw DomainError("graft_ray: scenario bends unknown edge " + name);
    Vec z = s.grafting.count(edge) ? s.grafting.at(edge) : Vec::Zero(s.d);
    if (s.tGrid.empty()) throw DomainError("graft_ray: empty t grid");
    const double height = cylinder_height(z, f);
    const double up = alpha0(sorted_desc(z), f), down = alpha0(sorted_desc(Vec(-z)), f);
    const double tMax = *std::max_element(s.tGrid.begin(), s.tGrid.end());

    GraftRayResult r;
    r.csv.header = {"word", "iota_plus", "iota_minus", "t", "cylinderHeight", "lF", "predictedSlope", "ratio"};
    std::vector<GraftedRepresentation> reps;
    for (double t : s.tGrid) reps.emplace_back(model.rho, model.graph, std::map<std::string, Vec>{{edge, t * z}}, s.d, f);
    for (const auto& text : s.words) {
        Word w = parse_word(text);
        NormalForm nf = normal_form(w, model.graph);
        const double slope = nf.iotaPlus * up + nf.iotaMinus * down;
        double l0 = 0.0, lTop = 0.0;
        for (size_t i = 0; i < s.tGrid.size(); ++i) {
            const double t = s.tGrid[i];
            double l = reps[i].translation_length(w);
            if (!std::isfinite(l)) throw NumericalError("graft_ray: non-finite length for " + text);
            if (i == 0) l0 = l;
            if (t == tMax) lTop = l;
            double ratio = t * slope > 0.0 ? l / (t * slope) : std::nan("");
            r.csv.add({text, str(nf.iotaPlus), str(nf.iotaMinus), fmt17(t), fmt17(height), fmt17(l), fmt17(slope),
                       fmt17(ratio)});
            if (slope == 0.0 && std::abs(l - l0) > s.tolerances.vertexLength * std::max(1.0, l0))
                r.finding.fail("length of " + text + " moved by " + fmt17(l - l0) + " at t=" + fmt17(t));
        }
        if (slope > 0.0 && tMax > 0.0) {
            double dev = std::abs(lTop / (tMax * slope) - 1.0);
            r.finalDeviation[text] = dev;
            if (dev >= s.tolerances.slopeRatio)
                r.finding.fail("slope ratio of " + text + " off by " + fmt17(dev) + " at t=" + fmt17(tMax));
        }
    }
    return r;
}

KernelResult kernel_monotonicity(const KernelOptions& o) {
    FinslerFunctional f = FinslerFunctional::standard(o.d);
    SurfaceModel model = genus2_fuchsian(1.5, 0.3);
    KernelResult r;
    r.csv.header = {"height", "word", "iota", "l0", "lz", "ratio"};
    Rng rng(o.seed);
    // random direction in ker alpha0 within the trace-free subspace
    Vec z0 = random_trace_free(o.d, rng, 1.0);
    Vec w = f.weights;
    z0 -= (alpha0(z0, f) / alpha0(w, f)) * w;
    z0 /= cylinder_height(z0, f);
    GraftedRepresentation flat(model.rho, model.graph, {}, o.d, f);
    std::vector<Word> words;
    while (static_cast<int>(words.size()) < o.words) {
        Word c = cyclic_reduce(random_word(rng, {"a1", "b1", "a2", "b2"}, 2 + rng() % (o.maxWordLength - 1)));
        if (!c.empty()) words.push_back(c);
    }
    for (double h : o.heights) {
        GraftedRepresentation rep(model.rho, model.graph, {{"gamma", Vec(h * z0)}}, o.d, f);
        for (const Word& c : words) {
            double l0 = flat.translation_length(c), lz = rep.translation_length(c);
            double ratio = lz / l0;
            const int iota = normal_form(c, model.graph).iota();
            r.minRatio = std::min(r.minRatio, ratio);
            if (iota > 0) r.minRatioCrossing = std::min(r.minRatioCrossing, ratio);
            r.csv.add({fmt17(h), to_string(c), str(iota), fmt17(l0), fmt17(lz), fmt17(ratio)});
        }
    }
    return r;
}

}  // namespace graftlab
