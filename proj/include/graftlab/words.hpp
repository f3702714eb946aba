#pragma once

#include <string>
#include <vector>

namespace graftlab {

struct Letter {
    std::string gen;
    bool inverse = false;

    Letter inv() const { return Letter{gen, !inverse}; }
    bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

// "a1 b1' a2": lowercase identifiers, trailing apostrophe for inverses
Word parse_word(const std::string& text);
std::string to_string(const Word& w);
Word inverse(const Word& w);
Word free_reduce(const Word& w);
Word cyclic_reduce(const Word& w);
Word word_power(const Word& w, int n);
Word operator+(const Word& a, const Word& b);

struct GogVertex {
    std::string name;
    std::vector<std::string> generators;
};

// e alpha_o(g) e^-1 = alpha_t(g); originWord/targetWord are the images of the
// edge group generator
struct GogEdge {
    std::string name;
    int origin = 0;
    int target = 0;
    Word originWord;
    Word targetWord;
    bool inTree = true;
    std::string stableLetter;  // empty for tree edges
};

struct GraphOfGroups {
    std::vector<GogVertex> vertices;
    std::vector<GogEdge> edges;

    void validate() const;
    // vertex owning a generator, or -1
    int vertex_of(const std::string& gen) const;
    // edge with this stable letter, or -1
    int edge_of_stable(const std::string& gen) const;
    // tree edges from a to b as (edge, traversed origin -> target)
    std::vector<std::pair<int, bool>> tree_path(int a, int b) const;
};

struct Syllable {
    int vertex = 0;
    Word word;
};

struct Crossing {
    int edge = 0;
    bool forward = true;  // letter e (from t(e) to o(e)); false for e^-1
};

struct NormalForm {
    std::vector<Syllable> syllables;  // syllables[i] precedes crossings[i], cyclically
    std::vector<Crossing> crossings;
    int iotaPlus = 0;
    int iotaMinus = 0;
    bool inEdgeGroup = false;  // conjugate into an edge group

    int iota() const { return iotaPlus + iotaMinus; }
};

NormalForm normal_form(const Word& w, const GraphOfGroups& g);

}  // namespace graftlab
