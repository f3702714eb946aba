#include "graftlab/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace graftlab {

namespace {

// relative widening of a fitted band beyond what the calibration seeds showed
constexpr double kUpper = 1.25;
constexpr double kSlopeLow = 0.8, kSlopeHigh = 1.2;
constexpr double kKernelShrink = 0.99;
constexpr double kKernelFloor = 0.95;
constexpr double kMinSlack = 0.01;

template <class R, class F>
std::pair<double, double> range_of(const std::vector<R>& runs, F f) {
    if (runs.empty()) throw DomainError("calibration: no runs");
    double lo = f(runs[0]), hi = lo;
    for (const auto& r : runs) {
        lo = std::min(lo, f(r));
        hi = std::max(hi, f(r));
    }
    return {lo, hi};
}

double defect_ratio(const AdmissibleResult& r) {
    if (!r.perL.count(0.0) || r.perL.size() < 2) return std::nan("");
    double d0 = r.perL.at(0.0).maxDefect;
    double dTop = r.perL.rbegin()->second.maxDefect;
    return d0 > 0.0 ? dTop / d0 : std::nan("");
}

BandCheck band(const Ledger& l, const std::string& id, const std::string& name, double value) {
    BandCheck c;
    c.what = id + "/" + name;
    c.value = value;
    c.pin = l.at(id, name);
    c.ok = std::isfinite(value) && c.pin.contains(value);
    return c;
}

}  // namespace

std::string morse_id(NormKind norm, int dim) {
    return std::string("morse/") + (norm == NormKind::Max ? "max" : "weyl") + "/dim" + std::to_string(dim);
}
std::string admissible_id(double omega, int d) { return "admissible/omega" + fmt17(omega) + "/d" + std::to_string(d); }
std::string gap_id(double t, int d) { return "gap_growth/t" + fmt17(t) + "/d" + std::to_string(d); }
std::string displacement_id(double omega, int d) {
    return "displacement/omega" + fmt17(omega) + "/d" + std::to_string(d);
}
std::string kernel_id(int d) { return "kernel/d" + std::to_string(d); }

std::vector<BandCheck> check_morse(const Ledger& l, const MorseOptions& o, const MorseResult& r) {
    return {band(l, morse_id(o.norm, o.dim), "mu", r.maxRatio)};
}

std::vector<BandCheck> check_admissible(const Ledger& l, const AdmissibleOptions& o, const AdmissibleResult& r) {
    const std::string id = admissible_id(o.omega, o.d);
    std::vector<BandCheck> out{band(l, id, "C_omega", fitted_ratio_constant(r))};
    double dr = defect_ratio(r);
    if (std::isfinite(dr)) out.push_back(band(l, id, "defect_ratio", dr));
    return out;
}

void pin_morse(Ledger& l, const MorseOptions& o, const std::vector<MorseResult>& runs, bool overwrite) {
    const double hi = range_of(runs, [](const MorseResult& r) { return r.maxRatio; }).second;
    l.pin(morse_id(o.norm, o.dim), "mu", Pin{hi, 0.0, kUpper * hi, "max hausdorff/C over zigzags"}, overwrite);
}

void pin_admissible(Ledger& l, const AdmissibleOptions& o, const std::vector<AdmissibleResult>& runs,
                    bool overwrite) {
    const std::string id = admissible_id(o.omega, o.d);
    const double cHi = range_of(runs, [](const AdmissibleResult& r) { return fitted_ratio_constant(r); }).second;
    l.pin(id, "C_omega", Pin{cHi, 0.0, kUpper * cHi, "min ratio >= (1 + C/(L+1))^-1 for all L"}, overwrite);
    auto [dLo, dHi] = range_of(runs, defect_ratio);
    if (std::isfinite(dLo) && std::isfinite(dHi)) {
        double mean = 0.0;
        for (const auto& r : runs) mean += defect_ratio(r) / runs.size();
        l.pin(id, "defect_ratio", Pin{mean, dLo / kUpper, kUpper * dHi, "max defect at the largest L over L = 0"},
              overwrite);
    }
    const double top = runs[0].perL.rbegin()->first;
    auto [rLo, rHi] = range_of(runs, [top](const AdmissibleResult& r) { return r.perL.at(top).minRatio; });
    double slack = std::max(kMinSlack, rHi - rLo);
    l.pin(id, "ratio_slack", Pin{slack, slack, slack, "additive band for the min ratio at the largest L"}, overwrite);
}

void pin_gap(Ledger& l, const GapGrowthOptions& o, const std::vector<GapGrowthResult>& runs, bool overwrite) {
    auto [lo, hi] = range_of(runs, [](const GapGrowthResult& r) { return r.slope; });
    double mean = 0.0;
    for (const auto& r : runs) mean += r.slope / runs.size();
    l.pin(gap_id(o.t, o.d), "slope", Pin{mean, kSlopeLow * lo, kSlopeHigh * hi, "least squares slope of min gap in n"},
          overwrite);
}

void pin_displacement(Ledger& l, const DisplacementOptions& o, const std::vector<DisplacementResult>& runs,
                      bool overwrite) {
    const double hi = range_of(runs, [](const DisplacementResult& r) { return r.fittedC; }).second;
    l.pin(displacement_id(o.omega, o.d), "C", Pin{hi, 0.0, kUpper * hi, "d >= (k-2)/C for k-piece increments"},
          overwrite);
}

void pin_kernel(Ledger& l, const KernelOptions& o, const std::vector<KernelResult>& runs, bool overwrite) {
    const double lo = range_of(runs, [](const KernelResult& r) { return r.minRatio; }).first;
    double factor = kKernelShrink * std::min(1.0, lo);
    l.pin(kernel_id(o.d), "factor", Pin{factor, kKernelFloor, 1.0, "l_z >= factor * l_0; the factor must lie in the band"},
          overwrite);
}

std::vector<std::uint64_t> calibration_seeds(std::uint64_t base, int count) {
    std::mt19937_64 g(base);
    std::vector<std::uint64_t> out;
    for (int i = 0; i < count; ++i) out.push_back(g());
    return out;
}

void calibrate_all(Ledger& l, std::uint64_t baseSeed, bool overwrite, std::ostream& log) {
    const auto seeds = calibration_seeds(baseSeed);
    for (NormKind norm : {NormKind::Max, NormKind::Weyl})
        for (int dim = 2; dim <= 4; ++dim) {
            MorseOptions o;
            o.norm = norm;
            o.dim = dim;
            std::vector<MorseResult> runs;
            for (auto s : seeds) {
                o.seed = s;
                runs.push_back(morse_experiment(o));
                if (!runs.back().finding.pass) throw NumericalError("calibration: uncertified Morse run");
            }
            pin_morse(l, o, runs, overwrite);
            log << morse_id(norm, dim) << " mu=" << fmt17(l.at(morse_id(norm, dim), "mu").value) << "\n";
        }
    for (int d = 2; d <= 5; ++d) {
        AdmissibleOptions a;
        a.d = d;
        std::vector<AdmissibleResult> ar;
        GapGrowthOptions g;
        g.d = d;
        std::vector<GapGrowthResult> gr;
        DisplacementOptions p;
        p.d = d;
        std::vector<DisplacementResult> pr;
        for (auto s : seeds) {
            a.seed = g.seed = p.seed = s;
            ar.push_back(admissible_sweep(a));
            gr.push_back(gap_growth(g));
            pr.push_back(displacement_experiment(p));
        }
        pin_admissible(l, a, ar, overwrite);
        pin_gap(l, g, gr, overwrite);
        pin_displacement(l, p, pr, overwrite);
        log << admissible_id(a.omega, d) << " C_omega=" << fmt17(l.at(admissible_id(a.omega, d), "C_omega").value)
            << " defect_ratio=" << fmt17(l.at(admissible_id(a.omega, d), "defect_ratio").value) << "\n";
        log << gap_id(g.t, d) << " slope=" << fmt17(l.at(gap_id(g.t, d), "slope").value) << "\n";
        log << displacement_id(p.omega, d) << " C=" << fmt17(l.at(displacement_id(p.omega, d), "C").value) << "\n";
    }
    for (int d = 3; d <= 5; ++d) {
        KernelOptions k;
        k.d = d;
        std::vector<KernelResult> kr;
        for (auto s : seeds) {
            k.seed = s;
            kr.push_back(kernel_monotonicity(k));
        }
        pin_kernel(l, k, kr, overwrite);
        log << kernel_id(d) << " factor=" << fmt17(l.at(kernel_id(d), "factor").value) << "\n";
    }
}

}  // namespace graftlab
