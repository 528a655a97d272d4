#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gfp/cumulants.hpp"  // shortlex_less
#include "gfp/errors.hpp"

namespace gfp {

// Whether admissible paths may revisit vertices. `simple` (the default) keeps
// the free semigroupoid finite without an external bound.
enum class PathMode { simple, walk };

inline std::string to_string(PathMode m) { return m == PathMode::simple ? "simple" : "walk"; }

inline PathMode parse_path_mode(const std::string& s) {
    if (s == "simple") return PathMode::simple;
    if (s == "walk") return PathMode::walk;
    throw ParseError("mode must be \"simple\" or \"walk\", got \"" + s + "\"");
}

using VertexSeq = std::vector<std::string>;

inline bool vertex_seq_less(const VertexSeq& a, const VertexSeq& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), shortlex_less);
}

// Finite undirected graph without loops or multi-edges.
class SimplicialGraph {
public:
    SimplicialGraph(std::vector<std::string> vertices,
                    const std::vector<std::pair<std::string, std::string>>& edges) {
        std::sort(vertices.begin(), vertices.end(), shortlex_less);
        for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
            if (vertices[i] == vertices[i + 1]) throw DuplicateVertexId("vertex \"" + vertices[i] + "\" declared twice");
        vertices_ = std::move(vertices);
        for (const auto& v : vertices_) vertex_set_.insert(v);
        for (const auto& [a, b] : edges) {
            if (a == b) throw LoopEdge("loop edge at vertex \"" + a + "\"");
            if (!vertex_set_.count(a)) throw DanglingEndpoint("edge endpoint \"" + a + "\" is not a vertex");
            if (!vertex_set_.count(b)) throw DanglingEndpoint("edge endpoint \"" + b + "\" is not a vertex");
            edges_.insert(shortlex_less(a, b) ? std::make_pair(a, b) : std::make_pair(b, a));
        }
    }

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::set<std::pair<std::string, std::string>>& edges() const { return edges_; }

    bool has_vertex(const std::string& v) const { return vertex_set_.count(v) > 0; }

    bool adjacent(const std::string& a, const std::string& b) const {
        if (a == b) return false;
        return edges_.count(shortlex_less(a, b) ? std::make_pair(a, b) : std::make_pair(b, a)) > 0;
    }

    friend bool operator==(const SimplicialGraph&, const SimplicialGraph&) = default;

private:
    std::vector<std::string> vertices_;
    std::set<std::string> vertex_set_;
    std::set<std::pair<std::string, std::string>> edges_;
};

// An element of the free semigroupoid: a vertex (k = 1) or an admissible path
// [v1,...,vk], identified with its reversal. The stored sequence is the
// smaller of the two orientations, so equality is structural.
class PathWord {
public:
    explicit PathWord(VertexSeq seq) {
        if (seq.empty()) throw Error("empty path word");
        VertexSeq rev(seq.rbegin(), seq.rend());
        seq_ = vertex_seq_less(rev, seq) ? std::move(rev) : std::move(seq);
    }

    const VertexSeq& vertices() const { return seq_; }
    int length() const { return static_cast<int>(seq_.size()) - 1; }

    bool contains(const std::string& v) const {
        return std::find(seq_.begin(), seq_.end(), v) != seq_.end();
    }
    std::set<std::string> vertex_set() const { return {seq_.begin(), seq_.end()}; }

    std::string str() const {
        std::string out = "[";
        for (std::size_t i = 0; i < seq_.size(); ++i) {
            if (i) out += ",";
            out += seq_[i];
        }
        return out + "]";
    }

    friend bool operator==(const PathWord&, const PathWord&) = default;

    // deterministic global word order: by length, then lexicographic
    friend bool operator<(const PathWord& a, const PathWord& b) {
        if (a.seq_.size() != b.seq_.size()) return a.seq_.size() < b.seq_.size();
        return vertex_seq_less(a.seq_, b.seq_);
    }

private:
    VertexSeq seq_;
};

inline bool is_admissible(const SimplicialGraph& g, const VertexSeq& seq, PathMode mode) {
    if (seq.empty()) throw Error("empty vertex sequence");
    for (const auto& v : seq)
        if (!g.has_vertex(v)) throw UnknownVertex("unknown vertex \"" + v + "\"");
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (!g.adjacent(seq[i], seq[i + 1])) return false;
    if (mode == PathMode::simple) {
        std::set<std::string> seen(seq.begin(), seq.end());
        if (seen.size() != seq.size()) return false;
    }
    return true;
}

inline PathWord canonical_path(const SimplicialGraph& g, VertexSeq seq, PathMode mode) {
    if (!is_admissible(g, seq, mode)) throw NotAdmissible("sequence is not an admissible path");
    return PathWord(std::move(seq));
}

// All canonical words of length 0 (vertices) through max_len, deduplicated
// under reversal, ordered by length then lexicographically.
inline std::vector<PathWord> enumerate_semigroupoid(const SimplicialGraph& g, int max_len, PathMode mode) {
    if (max_len < 0) throw Error("max_len must be nonnegative");
    std::set<PathWord> words;
    VertexSeq current;
    auto extend = [&](auto&& self, const std::string& v) -> void {
        current.push_back(v);
        words.insert(PathWord(current));
        if (static_cast<int>(current.size()) <= max_len) {
            for (const auto& next : g.vertices()) {
                if (!g.adjacent(v, next)) continue;
                if (mode == PathMode::simple &&
                    std::find(current.begin(), current.end(), next) != current.end())
                    continue;
                self(self, next);
            }
        }
        current.pop_back();
    };
    for (const auto& v : g.vertices()) extend(extend, v);
    return {words.begin(), words.end()};
}

// w1 w2 when some orientation of w1 ends where some orientation of w2 starts
// and the join is admissible; no result means the product lands in the direct
// sum A_{w1} + A_{w2} instead.
inline std::optional<PathWord> concat(const SimplicialGraph& g, PathMode mode, const PathWord& w1,
                                      const PathWord& w2) {
    std::optional<PathWord> best;
    auto orientations = [](const PathWord& w) {
        std::vector<VertexSeq> out{w.vertices()};
        VertexSeq rev(w.vertices().rbegin(), w.vertices().rend());
        if (rev != w.vertices()) out.push_back(std::move(rev));
        return out;
    };
    for (const auto& a : orientations(w1)) {
        for (const auto& b : orientations(w2)) {
            if (a.back() != b.front()) continue;
            VertexSeq joined = a;
            joined.insert(joined.end(), b.begin() + 1, b.end());
            if (!is_admissible(g, joined, mode)) continue;
            PathWord candidate(std::move(joined));
            if (!best || candidate < *best) best = std::move(candidate);
        }
    }
    return best;
}

inline bool disjoint(const PathWord& w1, const PathWord& w2) {
    for (const auto& v : w1.vertices())
        if (w2.contains(v)) return false;
    return true;
}

}  // namespace gfp
