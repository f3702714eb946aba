#include "graftlab/words.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <set>
#include <sstream>

#include "graftlab/errors.hpp"

namespace graftlab {

Word parse_word(const std::string& text) {
    Word w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        Letter l;
        if (tok.back() == '\'') {
            l.inverse = true;
            tok.pop_back();
        }
        if (tok.empty() || !std::islower(static_cast<unsigned char>(tok[0])))
            throw ParseError("parse_word: bad token in '" + text + "'");
        for (char c : tok)
            if (!(std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_'))
                throw ParseError("parse_word: bad token in '" + text + "'");
        l.gen = tok;
        w.push_back(l);
    }
    return w;
}

std::string to_string(const Word& w) {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += w[i].gen;
        if (w[i].inverse) s += '\'';
    }
    return s;
}

Word inverse(const Word& w) {
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inv());
    return out;
}

Word free_reduce(const Word& w) {
    Word out;
    for (const auto& l : w) {
        if (!out.empty() && out.back() == l.inv())
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word cyclic_reduce(const Word& w) {
    Word r = free_reduce(w);
    size_t a = 0, b = r.size();
    while (b - a >= 2 && r[a] == r[b - 1].inv()) {
        ++a;
        --b;
    }
    return Word(r.begin() + a, r.begin() + b);
}

Word word_power(const Word& w, int n) {
    Word base = n < 0 ? inverse(w) : w;
    Word out;
    for (int i = 0; i < std::abs(n); ++i) out.insert(out.end(), base.begin(), base.end());
    return free_reduce(out);
}

Word operator+(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

void GraphOfGroups::validate() const {
    const int nv = static_cast<int>(vertices.size());
    if (nv == 0) throw DomainError("GraphOfGroups: no vertices");
    std::set<std::string> names;
    for (const auto& v : vertices)
        for (const auto& g : v.generators)
            if (!names.insert(g).second) throw DomainError("GraphOfGroups: duplicate generator " + g);
    int treeEdges = 0;
    for (const auto& e : edges) {
        if (e.origin < 0 || e.origin >= nv || e.target < 0 || e.target >= nv)
            throw DomainError("GraphOfGroups: edge endpoint out of range");
        if (e.inTree) {
            ++treeEdges;
            if (!e.stableLetter.empty()) throw DomainError("GraphOfGroups: tree edge with stable letter");
        } else if (e.stableLetter.empty() || !names.insert(e.stableLetter).second) {
            throw DomainError("GraphOfGroups: non-tree edge needs a fresh stable letter");
        }
        for (const auto& l : e.originWord)
            if (vertex_of(l.gen) != e.origin) throw DomainError("GraphOfGroups: origin word leaves its vertex group");
        for (const auto& l : e.targetWord)
            if (vertex_of(l.gen) != e.target) throw DomainError("GraphOfGroups: target word leaves its vertex group");
        if (cyclic_reduce(e.originWord).empty() || cyclic_reduce(e.targetWord).empty())
            throw DomainError("GraphOfGroups: trivial edge word");
    }
    if (treeEdges != nv - 1) throw DomainError("GraphOfGroups: spanning tree has the wrong size");
    for (int v = 1; v < nv; ++v) tree_path(0, v);
}

int GraphOfGroups::vertex_of(const std::string& gen) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        for (const auto& g : vertices[i].generators)
            if (g == gen) return static_cast<int>(i);
    return -1;
}

int GraphOfGroups::edge_of_stable(const std::string& gen) const {
    for (size_t i = 0; i < edges.size(); ++i)
        if (!edges[i].inTree && edges[i].stableLetter == gen) return static_cast<int>(i);
    return -1;
}

std::vector<std::pair<int, bool>> GraphOfGroups::tree_path(int a, int b) const {
    const int nv = static_cast<int>(vertices.size());
    std::vector<std::pair<int, bool>> via(nv, {-1, false});
    std::vector<int> prev(nv, -1);
    std::vector<bool> seen(nv, false);
    std::queue<int> q;
    q.push(a);
    seen[a] = true;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (size_t i = 0; i < edges.size(); ++i) {
            const auto& e = edges[i];
            if (!e.inTree) continue;
            int w = -1;
            bool forwardDir = false;
            if (e.origin == v) {
                w = e.target;
                forwardDir = true;
            } else if (e.target == v) {
                w = e.origin;
            }
            if (w < 0 || seen[w]) continue;
            seen[w] = true;
            prev[w] = v;
            via[w] = {static_cast<int>(i), forwardDir};
            q.push(w);
        }
    }
    if (!seen[b]) throw DomainError("GraphOfGroups: spanning tree is disconnected");
    std::vector<std::pair<int, bool>> path;
    for (int v = b; v != a; v = prev[v]) path.push_back(via[v]);
    std::reverse(path.begin(), path.end());
    return path;
}

namespace {

// n with w == c^n, if any
bool power_of(const Word& w, const Word& c, int& n) {
    Word r = free_reduce(w);
    if (r.empty()) {
        n = 0;
        return true;
    }
    int maxN = static_cast<int>(r.size()) + 2;
    for (int k = 1; k <= maxN; ++k) {
        Word p = word_power(c, k);
        if (p.size() > r.size() + c.size()) break;
        if (p == r) {
            n = k;
            return true;
        }
        if (inverse(p) == r) {
            n = -k;
            return true;
        }
    }
    return false;
}

bool cyclic_conjugate(const Word& a, const Word& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    Word bb = b + b;
    for (size_t s = 0; s < b.size(); ++s)
        if (std::equal(a.begin(), a.end(), bb.begin() + s)) return true;
    return false;
}

}  // namespace

NormalForm normal_form(const Word& w, const GraphOfGroups& g) {
    Word wr = cyclic_reduce(w);
    NormalForm nf;
    if (wr.empty()) {
        nf.syllables.push_back({0, {}});
        return nf;
    }

    auto entry_vertex = [&](const Letter& l) {
        int v = g.vertex_of(l.gen);
        if (v >= 0) return v;
        int e = g.edge_of_stable(l.gen);
        if (e < 0) throw ParseError("normal_form: unknown generator " + l.gen);
        return l.inverse ? g.edges[e].origin : g.edges[e].target;
    };

    std::vector<Syllable> syl;
    std::vector<Crossing> cr;
    const int start = entry_vertex(wr.front());
    int cur = start;
    syl.push_back({cur, {}});
    auto move_to = [&](int v) {
        for (auto [e, oToT] : g.tree_path(cur, v)) {
            cr.push_back({e, !oToT});
            cur = oToT ? g.edges[e].target : g.edges[e].origin;
            syl.push_back({cur, {}});
        }
    };
    for (const auto& l : wr) {
        int v = g.vertex_of(l.gen);
        if (v >= 0) {
            move_to(v);
            syl.back().word.push_back(l);
            continue;
        }
        int e = g.edge_of_stable(l.gen);
        move_to(l.inverse ? g.edges[e].origin : g.edges[e].target);
        cr.push_back({e, !l.inverse});
        cur = l.inverse ? g.edges[e].target : g.edges[e].origin;
        syl.push_back({cur, {}});
    }
    move_to(start);
    // close the ring: the trailing syllable continues the first one
    if (!cr.empty()) {
        syl.front().word = syl.back().word + syl.front().word;
        syl.pop_back();
    }
    for (auto& s : syl) s.word = free_reduce(s.word);

    bool changed = true;
    while (changed && !cr.empty()) {
        changed = false;
        const int k = static_cast<int>(cr.size());
        for (int i = 0; i < k && !changed; ++i) {
            const Crossing& before = cr[(i + k - 1) % k];
            const Crossing& after = cr[i];
            if (before.edge != after.edge || before.forward == after.forward) continue;
            const GogEdge& e = g.edges[before.edge];
            int n = 0;
            Word image;
            int vertex;
            if (before.forward) {
                if (!power_of(syl[i].word, e.originWord, n)) continue;
                image = word_power(e.targetWord, n);
                vertex = e.target;
            } else {
                if (!power_of(syl[i].word, e.targetWord, n)) continue;
                image = word_power(e.originWord, n);
                vertex = e.origin;
            }
            // rotate so the pinched syllable sits at index 1
            std::rotate(syl.begin(), syl.begin() + (i + k - 1) % k, syl.end());
            std::rotate(cr.begin(), cr.begin() + (i + k - 1) % k, cr.end());
            if (k == 2) {
                Syllable merged{vertex, free_reduce(syl[0].word + image)};
                syl = {merged};
                cr.clear();
            } else {
                Syllable merged{vertex, free_reduce(syl[0].word + image + syl[2].word)};
                std::vector<Syllable> ns{merged};
                std::vector<Crossing> nc;
                for (int j = 3; j < k; ++j) ns.push_back(syl[j]);
                for (int j = 2; j < k; ++j) nc.push_back(cr[j]);
                syl = std::move(ns);
                cr = std::move(nc);
            }
            changed = true;
        }
    }
    if (cr.empty()) {
        syl.front().word = cyclic_reduce(syl.front().word);
        const Word& s = syl.front().word;
        if (!s.empty()) {
            for (const auto& e : g.edges) {
                for (int side = 0; side < 2; ++side) {
                    int v = side == 0 ? e.origin : e.target;
                    if (v != syl.front().vertex) continue;
                    const Word& c = side == 0 ? e.originWord : e.targetWord;
                    Word cc = cyclic_reduce(c);
                    if (cc.empty() || s.size() % cc.size() != 0) continue;
                    int n = static_cast<int>(s.size() / cc.size());
                    if (cyclic_conjugate(s, word_power(cc, n)) || cyclic_conjugate(s, word_power(cc, -n)))
                        nf.inEdgeGroup = true;
                }
            }
        }
    }
    nf.syllables = std::move(syl);
    nf.crossings = std::move(cr);
    for (const auto& c : nf.crossings) (c.forward ? nf.iotaPlus : nf.iotaMinus)++;
    return nf;
}

}  // namespace graftlab
