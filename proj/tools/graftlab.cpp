#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "graftlab/calibration.hpp"
#include "graftlab/scenario.hpp"

using namespace graftlab;

namespace {

constexpr int kPass = 0, kAssertion = 2, kNumerical = 3, kUsage = 64;

struct Global {
    std::string scenario;
    std::uint64_t seed = 1;
    std::string out;
    std::string ledger;
    bool calibrate = false;
    bool overwrite = false;
};

void emit(const Csv& csv, const std::string& dir, const std::string& name) {
    if (dir.empty()) {
        std::cout << csv.str();
        return;
    }
    std::filesystem::path file = std::filesystem::path(dir) / (name + ".csv");
    csv.write(file);
    std::cerr << "wrote " << file.string() << "\n";
}

int report(const Finding& f, const char* what) {
    for (const auto& msg : f.failures) std::cerr << what << ": " << msg << "\n";
    return f.pass ? kPass : kAssertion;
}

int report(const std::vector<BandCheck>& checks) {
    int rc = kPass;
    for (const auto& c : checks) {
        std::cerr << c.what << " = " << fmt17(c.value) << " band [" << fmt17(c.pin.lo) << ", " << fmt17(c.pin.hi)
                  << "] " << (c.ok ? "ok" : "OUT OF BAND") << "\n";
        if (!c.ok) rc = kAssertion;
    }
    return rc;
}

void need_ledger(const Global& g) {
    if (g.ledger.empty()) throw LedgerError("--calibrate needs --ledger <path>");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graftlab: grafting, positivity and Finsler geometry experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--scenario", g.scenario, "scenario file (JSON)");
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--out", g.out, "directory for CSV output (default: stdout)");
    app.add_option("--ledger", g.ledger, "regression ledger (JSON)");
    app.add_flag("--calibrate", g.calibrate, "pin fitted constants instead of checking them");
    app.add_flag("--overwrite", g.overwrite, "allow replacing existing pins");

    TauCheckOptions tau;
    std::string fault = "none";
    auto* cTau = app.add_subcommand("tau-check", "homomorphism and isometry of the irreducible representation");
    cTau->add_option("--d-min", tau.dMin)->check(CLI::Range(2, 8));
    cTau->add_option("--d-max", tau.dMax)->check(CLI::Range(2, 8));
    cTau->add_option("--trials", tau.trials)->check(CLI::PositiveNumber);
    cTau->add_option("--spread", tau.spread)->check(CLI::NonNegativeNumber);
    cTau->add_option("--inject-fault", fault)->check(CLI::IsMember({"none", "sign-flip"}));

    PositivityScanOptions pos;
    auto* cPos = app.add_subcommand("positivity-scan", "total positivity suites");
    cPos->add_option("--d-min", pos.dMin)->check(CLI::Range(2, 8));
    cPos->add_option("--d-max", pos.dMax)->check(CLI::Range(2, 8));
    cPos->add_option("--samples", pos.samples)->check(CLI::PositiveNumber);

    AdmissibleOptions adm;
    auto* cAdm = app.add_subcommand("admissible", "quasi-ruled and quasi-geodesic constants of admissible paths");
    cAdm->add_option("--omega", adm.omega)->check(CLI::PositiveNumber);
    cAdm->add_option("--L", adm.Ls)->check(CLI::NonNegativeNumber);
    cAdm->add_option("--pieces", adm.pieces)->check(CLI::PositiveNumber);
    cAdm->add_option("--trials", adm.trials)->check(CLI::PositiveNumber);
    cAdm->add_option("--d", adm.d)->check(CLI::Range(2, 8));

    auto* cRay = app.add_subcommand("graft-ray", "length growth along a grafting ray (needs --scenario)");

    MorseOptions morse;
    std::string norm = "max";
    auto* cMorse = app.add_subcommand("morse", "geodesic tracking of quasi-ruled zigzags");
    cMorse->add_option("--dim", morse.dim)->check(CLI::Range(1, 5));
    cMorse->add_option("--norm", norm)->check(CLI::IsMember({"max", "weyl"}));
    cMorse->add_option("--C", morse.cs)->check(CLI::PositiveNumber);
    cMorse->add_option("--trials", morse.trials)->check(CLI::PositiveNumber);
    cMorse->add_option("--segments", morse.segments)->check(CLI::Range(2, 64));

    int diamondDim = 2, grid = 100;
    auto* cDia = app.add_subcommand("diamond-selftest", "halfspace vs triangle equality membership");
    cDia->add_option("--dim", diamondDim)->check(CLI::IsMember({2, 3}));
    cDia->add_option("--grid", grid)->check(CLI::Range(2, 2000));

    auto* cCal = app.add_subcommand("calibrate", "run every calibration and pin the fitted constants");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    try {
        if (*cTau) {
            if (tau.dMax < tau.dMin) throw DomainError("--d-max must be >= --d-min");
            tau.seed = g.seed;
            tau.fault = fault == "sign-flip" ? TauFault::SignFlip : TauFault::None;
            TauCheckResult r = tau_check(tau);
            emit(r.csv, g.out, "tau_check");
            return report(r.finding, "tau-check");
        }
        if (*cPos) {
            if (pos.dMax < pos.dMin) throw DomainError("--d-max must be >= --d-min");
            pos.seed = g.seed;
            PositivityScanResult r = positivity_scan(pos);
            emit(r.csv, g.out, "positivity_scan");
            return report(r.finding, "positivity-scan");
        }
        if (*cAdm) {
            adm.seed = g.seed;
            AdmissibleResult r = admissible_sweep(adm);
            emit(r.csv, g.out, "admissible");
            if (!r.singlePieceExact) {
                std::cerr << "admissible: a single-piece path does not have ratio 1\n";
                return kAssertion;
            }
            if (g.calibrate) {
                need_ledger(g);
                Ledger::update(g.ledger, [&](Ledger& l) { pin_admissible(l, adm, {r}, g.overwrite); });
                return kPass;
            }
            if (!g.ledger.empty()) return report(check_admissible(Ledger::load(g.ledger), adm, r));
            return kPass;
        }
        if (*cRay) {
            if (g.scenario.empty()) throw ParseError("graft-ray needs --scenario <path>");
            Scenario s = load_scenario(g.scenario);
            GraftRayResult r = graft_ray(s);
            emit(r.csv, g.out.empty() ? s.outputDir : g.out, s.name);
            return report(r.finding, "graft-ray");
        }
        if (*cMorse) {
            morse.seed = g.seed;
            morse.norm = norm == "weyl" ? NormKind::Weyl : NormKind::Max;
            MorseResult r = morse_experiment(morse);
            emit(r.csv, g.out, "morse");
            int rc = report(r.finding, "morse");
            if (rc != kPass) return rc;
            if (g.calibrate) {
                need_ledger(g);
                Ledger::update(g.ledger, [&](Ledger& l) { pin_morse(l, morse, {r}, g.overwrite); });
                return kPass;
            }
            if (!g.ledger.empty()) return report(check_morse(Ledger::load(g.ledger), morse, r));
            return kPass;
        }
        if (*cDia) {
            DiamondSelftestResult r = diamond_selftest(diamondDim, grid, g.seed);
            std::cout << "diamond-selftest dim=" << diamondDim << " points=" << r.points
                      << " disagreements=" << r.disagreements << " " << (r.finding.pass ? "PASS" : "FAIL") << "\n";
            return report(r.finding, "diamond-selftest");
        }
        if (*cCal) {
            need_ledger(g);
            Ledger::update(g.ledger, [&](Ledger& l) { calibrate_all(l, g.seed, g.overwrite, std::cerr); });
            return kPass;
        }
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    } catch (const ParseError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const DimensionError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const LedgerError& e) {
        std::cerr << "ledger: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    }
    return kUsage;
}
