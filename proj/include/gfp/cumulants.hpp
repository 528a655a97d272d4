#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gfp/errors.hpp"
#include "gfp/noncrossing.hpp"
#include "gfp/rational.hpp"

namespace gfp {

// Vertex ids and generator names are opaque strings ordered shortlex (length
// first, then lexicographic), so that numeric-looking ids sort naturally.
inline bool shortlex_less(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

struct Letter {
    std::string gen;
    bool starred = false;
    std::string vertex;

    friend bool operator==(const Letter&, const Letter&) = default;
    friend bool operator<(const Letter& a, const Letter& b) {
        if (a.vertex != b.vertex) return shortlex_less(a.vertex, b.vertex);
        if (a.gen != b.gen) return shortlex_less(a.gen, b.gen);
        return a.starred < b.starred;
    }
};

inline std::string to_string(const Letter& l) {
    return l.gen + (l.starred ? "*" : "") + "@" + l.vertex;
}

using Word = std::vector<Letter>;

// Joint free-cumulant table of the tagged generators living at one vertex.
// Tuples absent from the table have cumulant zero; generators may be declared
// self-adjoint, which makes the formal adjoint fix them.
class CumulantSpec {
public:
    CumulantSpec(std::string vertex, int order_cap) : vertex_(std::move(vertex)), order_cap_(order_cap) {
        if (order_cap_ < 1) throw SpecInvalid("order cap must be positive");
    }

    const std::string& vertex() const { return vertex_; }
    int order_cap() const { return order_cap_; }

    void declare_self_adjoint(const std::string& gen) { self_adjoint_.insert(gen); }
    bool is_self_adjoint(const std::string& gen) const { return self_adjoint_.count(gen) > 0; }

    void set(Word tuple, GaussianRational value) {
        if (tuple.empty()) throw SpecInvalid("empty cumulant tuple");
        if (static_cast<int>(tuple.size()) > order_cap_)
            throw SpecInvalid("cumulant tuple longer than the order cap");
        for (const auto& l : tuple)
            if (l.vertex != vertex_)
                throw SpecInvalid("letter " + to_string(l) + " does not live at vertex " + vertex_);
        if (value.is_zero())
            table_.erase(tuple);
        else
            table_[std::move(tuple)] = std::move(value);
    }

    GaussianRational cumulant(const Word& tuple) const {
        auto it = table_.find(tuple);
        return it == table_.end() ? GaussianRational{} : it->second;
    }

    const std::map<Word, GaussianRational>& table() const { return table_; }

    Letter star_flip(Letter l) const {
        if (!is_self_adjoint(l.gen)) l.starred = !l.starred;
        return l;
    }

    friend bool operator==(const CumulantSpec&, const CumulantSpec&) = default;

    // k(reverse of the star-flipped tuple) == conj(k(tuple)) for all entries
    bool star_symmetric() const {
        for (const auto& [tuple, value] : table_) {
            Word flipped;
            for (auto it = tuple.rbegin(); it != tuple.rend(); ++it) flipped.push_back(star_flip(*it));
            if (cumulant(flipped) != value.conj()) return false;
        }
        return true;
    }

private:
    std::string vertex_;
    int order_cap_;
    std::map<Word, GaussianRational> table_;
    std::set<std::string> self_adjoint_;
};

struct MomentSequence {
    std::vector<GaussianRational> entries;  // m_1 ... m_N
    int order_cap() const { return static_cast<int>(entries.size()); }
};

struct CumulantSequence {
    std::vector<GaussianRational> entries;  // k_1 ... k_N
    int order_cap() const { return static_cast<int>(entries.size()); }
};

namespace detail {

// product over the blocks of pi of seq[|V|], with early exit on zero
inline GaussianRational block_size_product(const NoncrossingPartition& pi,
                                           const std::vector<GaussianRational>& seq) {
    GaussianRational prod(1);
    for (const auto& block : pi.blocks()) {
        const auto& factor = seq[block.size() - 1];
        if (factor.is_zero()) return GaussianRational{};
        prod *= factor;
    }
    return prod;
}

}  // namespace detail

// k_n = sum over NC(n) of mu(pi, 1_n) * prod_V m_{|V|}
inline CumulantSequence moments_to_cumulants(const MomentSequence& m, int nc_cap = kDefaultNcCap) {
    CumulantSequence out;
    for (int n = 1; n <= m.order_cap(); ++n) {
        const auto& lat = nc_lattice(n, nc_cap);
        const auto& mu = lat.mu_to_top();
        GaussianRational sum;
        for (std::size_t i = 0; i < lat.size(); ++i) {
            auto prod = detail::block_size_product(lat.elements()[i], m.entries);
            if (prod.is_zero()) continue;
            sum += GaussianRational(mu[i]) * prod;
        }
        out.entries.push_back(std::move(sum));
    }
    return out;
}

// m_n = sum over NC(n) of prod_V k_{|V|}
inline MomentSequence cumulants_to_moments(const CumulantSequence& k, int nc_cap = kDefaultNcCap) {
    MomentSequence out;
    for (int n = 1; n <= k.order_cap(); ++n) {
        const auto& lat = nc_lattice(n, nc_cap);
        GaussianRational sum;
        for (const auto& pi : lat.elements()) {
            auto prod = detail::block_size_product(pi, k.entries);
            sum += prod;
        }
        out.entries.push_back(std::move(sum));
    }
    return out;
}

using VertexSpecs = std::map<std::string, CumulantSpec>;

namespace detail {

// joint cumulant of the letters selected by one block: zero as soon as the
// block mixes vertices (freeness between vertices holds by construction)
inline GaussianRational block_cumulant(const Word& word, const std::vector<int>& block,
                                       const VertexSpecs& specs) {
    const std::string& vertex = word[static_cast<std::size_t>(block.front() - 1)].vertex;
    Word tuple;
    tuple.reserve(block.size());
    for (int pos : block) {
        const Letter& l = word[static_cast<std::size_t>(pos - 1)];
        if (l.vertex != vertex) return GaussianRational{};
        tuple.push_back(l);
    }
    return specs.at(vertex).cumulant(tuple);
}

}  // namespace detail

// E(word) = sum over NC(|word|) of the product of block cumulants.
inline GaussianRational mixed_moment(const Word& word, const VertexSpecs& specs, int order_cap,
                                     int nc_cap = kDefaultNcCap) {
    if (word.empty()) throw Error("mixed_moment of the empty word");
    if (static_cast<int>(word.size()) > order_cap)
        throw WordTooLong("word of length " + std::to_string(word.size()) + " exceeds order cap " +
                          std::to_string(order_cap));
    for (const auto& l : word)
        if (!specs.count(l.vertex)) throw UnknownVertex("no cumulant spec for vertex " + l.vertex);

    int n = static_cast<int>(word.size());
    const auto& lat = nc_lattice(n, nc_cap);
    GaussianRational sum;
    for (const auto& pi : lat.elements()) {
        GaussianRational prod(1);
        bool dead = false;
        for (const auto& block : pi.blocks()) {
            auto k = detail::block_cumulant(word, block, specs);
            if (k.is_zero()) {
                dead = true;
                break;
            }
            prod *= k;
        }
        if (!dead) sum += prod;
    }
    return sum;
}

// k_n(xy,...,xy) for free x,y from their scalar cumulant sequences:
// sum over NC(n) of (prod_{V in pi} kx_{|V|}) (prod_{W in Kr(pi)} ky_{|W|}).
inline GaussianRational scalar_mult_cumulants(const CumulantSequence& kx, const CumulantSequence& ky,
                                              int n, int nc_cap = kDefaultNcCap) {
    if (n < 1) throw Error("order must be positive");
    if (n > kx.order_cap() || n > ky.order_cap())
        throw WordTooLong("order " + std::to_string(n) + " exceeds a cumulant sequence cap");
    const auto& lat = nc_lattice(n, nc_cap);
    const auto& kr = lat.kreweras_index();
    GaussianRational sum;
    for (std::size_t i = 0; i < lat.size(); ++i) {
        auto left = detail::block_size_product(lat.elements()[i], kx.entries);
        if (left.is_zero()) continue;
        auto right = detail::block_size_product(lat.elements()[kr[i]], ky.entries);
        if (right.is_zero()) continue;
        sum += left * right;
    }
    return sum;
}

}  // namespace gfp
