#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graftlab/grafting.hpp"

namespace graftlab {

struct Scenario {
    std::string name;
    int d = 3;
    std::optional<Vec> finslerWeights;
    double finslerScale = 1.0;

    struct Fuchsian {
        double ell = 1.5;
        double twist = 0.0;
        Genus2Shape shape;
        std::string splitting = "separating";  // or "nonseparating"
    } fuchsian;

    std::map<std::string, Vec> grafting;  // edge name -> z
    std::vector<double> tGrid;
    std::vector<std::string> words;
    std::map<std::string, std::uint64_t> seeds;

    struct Tol {
        double slopeRatio = 0.02;     // |ratio - 1| at the largest t
        double vertexLength = 1e-6;   // length drift of words with iota = 0
    } tolerances;

    std::string outputDir;  // empty: stdout
};

// JSON; unknown keys anywhere raise ParseError
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& file);

}  // namespace graftlab
