#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "graftlab/experiments.hpp"
#include "graftlab/ledger.hpp"

namespace graftlab {

std::string morse_id(NormKind norm, int dim);
std::string admissible_id(double omega, int d);
std::string gap_id(double t, int d);
std::string displacement_id(double omega, int d);
std::string kernel_id(int d);

struct BandCheck {
    std::string what;
    double value = 0.0;
    Pin pin;
    bool ok = true;
};

// Fitted constants of one run against the ledger. Missing pins raise LedgerError.
std::vector<BandCheck> check_morse(const Ledger& l, const MorseOptions& o, const MorseResult& r);
std::vector<BandCheck> check_admissible(const Ledger& l, const AdmissibleOptions& o, const AdmissibleResult& r);

// Pins from one or more runs that differ only in the seed.
void pin_morse(Ledger& l, const MorseOptions& o, const std::vector<MorseResult>& runs, bool overwrite);
void pin_admissible(Ledger& l, const AdmissibleOptions& o, const std::vector<AdmissibleResult>& runs,
                    bool overwrite);
void pin_gap(Ledger& l, const GapGrowthOptions& o, const std::vector<GapGrowthResult>& runs, bool overwrite);
void pin_displacement(Ledger& l, const DisplacementOptions& o, const std::vector<DisplacementResult>& runs,
                      bool overwrite);
void pin_kernel(Ledger& l, const KernelOptions& o, const std::vector<KernelResult>& runs, bool overwrite);

std::vector<std::uint64_t> calibration_seeds(std::uint64_t base, int count = 4);
// every fitted constant used by the acceptance run
void calibrate_all(Ledger& l, std::uint64_t baseSeed, bool overwrite, std::ostream& log);

}  // namespace graftlab
