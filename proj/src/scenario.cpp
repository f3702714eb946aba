#include "graftlab/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace graftlab {

using json = nlohmann::json;

namespace {

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ParseError("scenario: " + where + " must be an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : j.items())
        if (!ok.count(key)) throw ParseError("scenario: unknown key '" + key + "' in " + where);
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ParseError(std::string("scenario: bad or missing '") + key + "' in " + where);
    }
}

Vec vec_of(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ParseError("scenario: " + where + " must be a non-empty array");
    Vec v(j.size());
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw ParseError("scenario: " + where + " must hold numbers");
        v(i) = j[i].get<double>();
    }
    return v;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    }
    only_keys(j, "scenario",
              {"name", "d", "finsler", "fuchsian", "grafting", "t_grid", "words", "seeds", "tolerances", "output_dir"});
    Scenario s;
    s.name = get<std::string>(j, "name", "scenario");
    s.d = get<int>(j, "d", "scenario");
    if (s.d < 2 || s.d > 8) throw ParseError("scenario: d must lie in 2..8");

    if (j.contains("finsler")) {
        const json& f = j["finsler"];
        only_keys(f, "finsler", {"weights", "scale"});
        if (f.contains("weights")) s.finslerWeights = vec_of(f["weights"], "finsler.weights");
        if (f.contains("scale")) s.finslerScale = get<double>(f, "scale", "finsler");
        if (s.finslerWeights && s.finslerWeights->size() != s.d)
            throw ParseError("scenario: finsler.weights needs d entries");
    }

    if (j.contains("fuchsian")) {
        const json& f = j["fuchsian"];
        only_keys(f, "fuchsian", {"ell", "twist", "shape", "splitting"});
        if (f.contains("ell")) s.fuchsian.ell = get<double>(f, "ell", "fuchsian");
        if (f.contains("twist")) s.fuchsian.twist = get<double>(f, "twist", "fuchsian");
        if (f.contains("splitting")) s.fuchsian.splitting = get<std::string>(f, "splitting", "fuchsian");
        if (s.fuchsian.splitting != "separating" && s.fuchsian.splitting != "nonseparating")
            throw ParseError("scenario: fuchsian.splitting must be separating or nonseparating");
        if (f.contains("shape")) {
            const json& sh = f["shape"];
            only_keys(sh, "fuchsian.shape", {"trA1", "trB1", "trA2", "trB2"});
            auto& g = s.fuchsian.shape;
            if (sh.contains("trA1")) g.trA1 = get<double>(sh, "trA1", "fuchsian.shape");
            if (sh.contains("trB1")) g.trB1 = get<double>(sh, "trB1", "fuchsian.shape");
            if (sh.contains("trA2")) g.trA2 = get<double>(sh, "trA2", "fuchsian.shape");
            if (sh.contains("trB2")) g.trB2 = get<double>(sh, "trB2", "fuchsian.shape");
        }
    }

    if (j.contains("grafting")) {
        const json& g = j["grafting"];
        if (!g.is_object()) throw ParseError("scenario: grafting must map edge names to vectors");
        for (const auto& [edge, z] : g.items()) {
            Vec v = vec_of(z, "grafting." + edge);
            if (v.size() != s.d) throw ParseError("scenario: grafting." + edge + " needs d entries");
            s.grafting[edge] = v;
        }
    }

    if (j.contains("t_grid")) {
        Vec t = vec_of(j["t_grid"], "t_grid");
        s.tGrid.assign(t.data(), t.data() + t.size());
        for (double x : s.tGrid)
            if (x < 0.0) throw ParseError("scenario: t_grid entries must be nonnegative");
    }

    if (j.contains("words")) {
        if (!j["words"].is_array()) throw ParseError("scenario: words must be an array of strings");
        for (const auto& w : j["words"]) {
            if (!w.is_string()) throw ParseError("scenario: words must be an array of strings");
            s.words.push_back(w.get<std::string>());
            parse_word(s.words.back());
        }
    }

    if (j.contains("seeds")) {
        const json& sd = j["seeds"];
        if (!sd.is_object()) throw ParseError("scenario: seeds must be an object");
        for (const auto& [k, v] : sd.items()) {
            if (!v.is_number_unsigned()) throw ParseError("scenario: seed " + k + " must be an unsigned integer");
            s.seeds[k] = v.get<std::uint64_t>();
        }
    }

    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        only_keys(t, "tolerances", {"slope_ratio", "vertex_length"});
        if (t.contains("slope_ratio")) s.tolerances.slopeRatio = get<double>(t, "slope_ratio", "tolerances");
        if (t.contains("vertex_length")) s.tolerances.vertexLength = get<double>(t, "vertex_length", "tolerances");
    }

    if (j.contains("output_dir")) s.outputDir = get<std::string>(j, "output_dir", "scenario");
    return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError("scenario: cannot read " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

}  // namespace graftlab
