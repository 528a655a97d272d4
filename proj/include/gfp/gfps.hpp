#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gfp/cumulants.hpp"
#include "gfp/errors.hpp"
#include "gfp/graph.hpp"
#include "gfp/noncrossing.hpp"

namespace gfp {

// Element of one component algebra A_w: a scalar multiple of the unit plus a
// finite linear combination of words in the tagged generators. Zero
// coefficients are never stored, so equality is structural.
class Polynomial {
public:
    Polynomial() = default;

    static Polynomial constant(GaussianRational c) {
        Polynomial p;
        p.constant_ = std::move(c);
        return p;
    }

    static Polynomial word(Word w, GaussianRational coeff = GaussianRational(1)) {
        Polynomial p;
        p.add_term(std::move(w), std::move(coeff));
        return p;
    }

    static Polynomial letter(Letter l) { return word({std::move(l)}); }

    bool is_zero() const { return constant_.is_zero() && terms_.empty(); }
    const GaussianRational& constant_term() const { return constant_; }
    const std::map<Word, GaussianRational>& terms() const { return terms_; }

    Polynomial& operator+=(const Polynomial& o) {
        constant_ += o.constant_;
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }

    Polynomial scaled(const GaussianRational& c) const {
        Polynomial out;
        if (c.is_zero()) return out;
        out.constant_ = constant_ * c;
        for (const auto& [w, coeff] : terms_) out.terms_.emplace(w, coeff * c);
        return out;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial out;
        out.constant_ = a.constant_ * b.constant_;
        if (!b.constant_.is_zero())
            for (const auto& [w, c] : a.terms_) out.add_term(w, c * b.constant_);
        if (!a.constant_.is_zero())
            for (const auto& [w, c] : b.terms_) out.add_term(w, a.constant_ * c);
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) {
                Word joined = wa;
                joined.insert(joined.end(), wb.begin(), wb.end());
                out.add_term(std::move(joined), ca * cb);
            }
        return out;
    }

    // reverses words, applies the star flip letterwise, conjugates coefficients
    template <typename Flip>
    Polynomial adjoint(Flip&& star_flip) const {
        Polynomial out;
        out.constant_ = constant_.conj();
        for (const auto& [w, c] : terms_) {
            Word rev;
            rev.reserve(w.size());
            for (auto it = w.rbegin(); it != w.rend(); ++it) rev.push_back(star_flip(*it));
            out.add_term(std::move(rev), c.conj());
        }
        return out;
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void add_term(Word w, GaussianRational c) {
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(std::move(w), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    GaussianRational constant_{};
    std::map<Word, GaussianRational> terms_;
};

// Element of the G-diagonal algebra D^G: one scalar per enumerated word plus
// the distinguished unit coordinate. Absent keys are zero.
class DiagonalElement {
public:
    DiagonalElement() = default;

    const GaussianRational& unit() const { return unit_; }
    void set_unit(GaussianRational c) { unit_ = std::move(c); }

    GaussianRational coord(const PathWord& w) const {
        auto it = coords_.find(w);
        return it == coords_.end() ? GaussianRational{} : it->second;
    }
    void set_coord(const PathWord& w, GaussianRational c) {
        if (c.is_zero())
            coords_.erase(w);
        else
            coords_[w] = std::move(c);
    }
    const std::map<PathWord, GaussianRational>& coords() const { return coords_; }

    bool is_zero() const { return unit_.is_zero() && coords_.empty(); }

    DiagonalElement conj() const {
        DiagonalElement out;
        out.unit_ = unit_.conj();
        for (const auto& [w, c] : coords_) out.coords_.emplace(w, c.conj());
        return out;
    }

    DiagonalElement& operator+=(const DiagonalElement& o) {
        unit_ += o.unit_;
        for (const auto& [w, c] : o.coords_) set_coord(w, coord(w) + c);
        return *this;
    }
    friend DiagonalElement operator+(DiagonalElement a, const DiagonalElement& b) { return a += b; }

    DiagonalElement scaled(const GaussianRational& c) const {
        DiagonalElement out;
        if (c.is_zero()) return out;
        out.unit_ = unit_ * c;
        for (const auto& [w, x] : coords_) out.coords_.emplace(w, x * c);
        return out;
    }

    friend DiagonalElement operator-(const DiagonalElement& a, const DiagonalElement& b) {
        return a + b.scaled(GaussianRational(-1));
    }

    // coordinatewise product (D^G is commutative)
    friend DiagonalElement operator*(const DiagonalElement& a, const DiagonalElement& b) {
        DiagonalElement out;
        out.unit_ = a.unit_ * b.unit_;
        const auto& small = a.coords_.size() <= b.coords_.size() ? a : b;
        const auto& large = a.coords_.size() <= b.coords_.size() ? b : a;
        for (const auto& [w, c] : small.coords_) {
            auto it = large.coords_.find(w);
            if (it != large.coords_.end()) out.set_coord(w, c * it->second);
        }
        return out;
    }

    friend bool operator==(const DiagonalElement&, const DiagonalElement&) = default;

private:
    GaussianRational unit_{};
    std::map<PathWord, GaussianRational> coords_;
};

// The graph together with its enumerated semigroupoid, the per-vertex
// cumulant data, and the truncation caps. Immutable once built; everything
// downstream evaluates against a shared context.
class GraphContext {
public:
    GraphContext(SimplicialGraph graph, VertexSpecs specs, int max_len, PathMode mode, int order_cap,
                 int nc_cap)
        : graph_(std::move(graph)),
          specs_(std::move(specs)),
          max_len_(max_len),
          mode_(mode),
          order_cap_(order_cap),
          nc_cap_(nc_cap) {
        if (order_cap_ < 1) throw SpecInvalid("order_cap must be positive");
        if (order_cap_ > nc_cap_)
            throw SpecInvalid("order_cap exceeds nc_cap; cumulants of order n need NC(n)");
        for (const auto& v : graph_.vertices()) {
            auto it = specs_.find(v);
            if (it == specs_.end()) throw MissingVertexSpec("no cumulant spec for vertex \"" + v + "\"");
            if (it->second.vertex() != v)
                throw SpecInvalid("spec keyed \"" + v + "\" declares vertex \"" + it->second.vertex() + "\"");
            if (it->second.order_cap() < order_cap_)
                throw SpecInvalid("spec at vertex \"" + v + "\" caps below the context order cap");
        }
        for (const auto& [v, spec] : specs_)
            if (!graph_.has_vertex(v)) throw SpecInvalid("spec for undeclared vertex \"" + v + "\"");
        semigroupoid_ = enumerate_semigroupoid(graph_, max_len_, mode_);
    }

    const SimplicialGraph& graph() const { return graph_; }
    PathMode mode() const { return mode_; }
    int max_len() const { return max_len_; }
    int order_cap() const { return order_cap_; }
    int nc_cap() const { return nc_cap_; }
    const std::vector<PathWord>& semigroupoid() const { return semigroupoid_; }
    const VertexSpecs& specs() const { return specs_; }

    bool has_word(const PathWord& w) const {
        return std::binary_search(semigroupoid_.begin(), semigroupoid_.end(), w);
    }
    void require_word(const PathWord& w) const {
        if (!has_word(w)) throw UnknownWord("word " + w.str() + " is not in the enumerated semigroupoid");
    }

    const CumulantSpec& spec(const std::string& vertex) const {
        auto it = specs_.find(vertex);
        if (it == specs_.end()) throw UnknownVertex("no cumulant spec for vertex \"" + vertex + "\"");
        return it->second;
    }

    Letter star_flip(const Letter& l) const { return spec(l.vertex).star_flip(l); }

    bool star_symmetric() const {
        for (const auto& [v, spec] : specs_)
            if (!spec.star_symmetric()) return false;
        return true;
    }

    // phi_w extended linearly: the unit contributes its scalar, every word its
    // mixed moment (cross-vertex blocks vanish, which is exactly the free
    // product of the vertex functionals)
    GaussianRational expect_poly(const Polynomial& p) const {
        GaussianRational out = p.constant_term();
        for (const auto& [w, c] : p.terms()) out += c * moment_of_word(w);
        return out;
    }

    // memoized: the same words recur across cumulant-tuple scans
    GaussianRational moment_of_word(const Word& w) const {
        {
            std::scoped_lock lock(memo_mutex_);
            if (auto it = moment_memo_.find(w); it != moment_memo_.end()) return it->second;
        }
        auto value = mixed_moment(w, specs_, order_cap_, nc_cap_);
        std::scoped_lock lock(memo_mutex_);
        moment_memo_.emplace(w, value);
        return value;
    }

    DiagonalElement diag_identity() const {
        DiagonalElement d;
        d.set_unit(GaussianRational(1));
        for (const auto& w : semigroupoid_) d.set_coord(w, GaussianRational(1));
        return d;
    }

private:
    SimplicialGraph graph_;
    VertexSpecs specs_;
    int max_len_;
    PathMode mode_;
    int order_cap_;
    int nc_cap_;
    std::vector<PathWord> semigroupoid_;
    mutable std::mutex memo_mutex_;
    mutable std::map<Word, GaussianRational> moment_memo_;
};

using ContextPtr = std::shared_ptr<const GraphContext>;

inline ContextPtr build_context(SimplicialGraph graph, VertexSpecs specs, int max_len, PathMode mode,
                                int order_cap, int nc_cap = kDefaultNcCap) {
    return std::make_shared<const GraphContext>(std::move(graph), std::move(specs), max_len, mode,
                                                order_cap, nc_cap);
}

// A graph random variable: the scalar part living in the distinguished C
// summand plus one polynomial component per semigroupoid word. Components at
// word w may only use letters whose vertex lies on w.
class GRandomVariable {
public:
    explicit GRandomVariable(ContextPtr ctx) : ctx_(std::move(ctx)) {
        if (!ctx_) throw Error("variable without a context");
    }

    const ContextPtr& context() const { return ctx_; }

    const GaussianRational& scalar_part() const { return scalar_; }
    void set_scalar(GaussianRational c) { scalar_ = std::move(c); }

    const std::map<PathWord, Polynomial>& components() const { return comps_; }

    Polynomial component(const PathWord& w) const {
        auto it = comps_.find(w);
        return it == comps_.end() ? Polynomial{} : it->second;
    }

    void set_component(const PathWord& w, Polynomial p) {
        ctx_->require_word(w);
        for (const auto& [word, coeff] : p.terms())
            for (const auto& l : word)
                if (!w.contains(l.vertex))
                    throw VertexContainmentViolated("letter " + to_string(l) + " outside word " + w.str());
        if (p.is_zero())
            comps_.erase(w);
        else
            comps_[w] = std::move(p);
    }

    bool is_zero() const { return scalar_.is_zero() && comps_.empty(); }

    friend bool operator==(const GRandomVariable& a, const GRandomVariable& b) {
        return a.ctx_ == b.ctx_ && a.scalar_ == b.scalar_ && a.comps_ == b.comps_;
    }

private:
    ContextPtr ctx_;
    GaussianRational scalar_{};
    std::map<PathWord, Polynomial> comps_;
};

inline GRandomVariable embed(const ContextPtr& ctx, const PathWord& w, Polynomial poly) {
    GRandomVariable x(ctx);
    x.set_component(w, std::move(poly));
    return x;
}

inline GRandomVariable from_scalar(const ContextPtr& ctx, GaussianRational c) {
    GRandomVariable x(ctx);
    x.set_scalar(std::move(c));
    return x;
}

inline GRandomVariable from_diagonal(const ContextPtr& ctx, const DiagonalElement& d) {
    GRandomVariable x(ctx);
    x.set_scalar(d.unit());
    for (const auto& [w, c] : d.coords()) x.set_component(w, Polynomial::constant(c));
    return x;
}

namespace detail {

inline void require_same_context(const GRandomVariable& a, const GRandomVariable& b) {
    if (a.context() != b.context()) throw ContextMismatch("variables from different contexts");
}

}  // namespace detail

inline GRandomVariable add(const GRandomVariable& a, const GRandomVariable& b) {
    detail::require_same_context(a, b);
    GRandomVariable out(a.context());
    out.set_scalar(a.scalar_part() + b.scalar_part());
    for (const auto& [w, p] : a.components()) out.set_component(w, p + b.component(w));
    for (const auto& [w, p] : b.components())
        if (!a.components().count(w)) out.set_component(w, p);
    return out;
}

inline GRandomVariable scale(const GaussianRational& c, const GRandomVariable& x) {
    GRandomVariable out(x.context());
    out.set_scalar(x.scalar_part() * c);
    for (const auto& [w, p] : x.components()) out.set_component(w, p.scaled(c));
    return out;
}

inline GRandomVariable sub(const GRandomVariable& a, const GRandomVariable& b) {
    return add(a, scale(GaussianRational(-1), b));
}

// componentwise: the direct sum multiplies summand by summand
inline GRandomVariable mul(const GRandomVariable& a, const GRandomVariable& b) {
    detail::require_same_context(a, b);
    GRandomVariable out(a.context());
    out.set_scalar(a.scalar_part() * b.scalar_part());
    for (const auto& [w, p] : a.components()) {
        auto it = b.components().find(w);
        if (it != b.components().end()) out.set_component(w, p * it->second);
    }
    return out;
}

inline GRandomVariable adjoint(const GRandomVariable& x) {
    const auto& ctx = *x.context();
    GRandomVariable out(x.context());
    out.set_scalar(x.scalar_part().conj());
    for (const auto& [w, p] : x.components())
        out.set_component(w, p.adjoint([&](const Letter& l) { return ctx.star_flip(l); }));
    return out;
}

inline GRandomVariable mul_diag(const GRandomVariable& x, const DiagonalElement& d) {
    GRandomVariable out(x.context());
    out.set_scalar(x.scalar_part() * d.unit());
    for (const auto& [w, p] : x.components()) out.set_component(w, p.scaled(d.coord(w)));
    return out;
}

// the diagonal commutes with everything, so left multiplication is the same map
inline GRandomVariable mul_diag_left(const DiagonalElement& d, const GRandomVariable& x) {
    return mul_diag(x, d);
}

inline DiagonalElement expectation(const GRandomVariable& x) {
    const auto& ctx = *x.context();
    DiagonalElement out;
    out.set_unit(x.scalar_part());
    for (const auto& [w, p] : x.components()) out.set_coord(w, ctx.expect_poly(p));
    return out;
}

inline DiagonalElement g_moment(const GRandomVariable& x, int n) {
    const auto& ctx = *x.context();
    if (n < 1) throw Error("moment order must be positive");
    if (n > ctx.order_cap())
        throw WordTooLong("order " + std::to_string(n) + " exceeds order cap " +
                          std::to_string(ctx.order_cap()));
    DiagonalElement out;
    GaussianRational unit_power(1);
    for (int i = 0; i < n; ++i) unit_power *= x.scalar_part();
    out.set_unit(unit_power);
    for (const auto& [w, p] : x.components()) {
        Polynomial power = p;
        for (int i = 1; i < n; ++i) power = power * p;
        out.set_coord(w, ctx.expect_poly(power));
    }
    return out;
}

// Trivial D^G-valued cumulant of an n-tuple, computed per coordinate by the
// commuting-diagonal Moebius inversion: sum over NC(n) of mu(pi,1_n) times the
// product over blocks of phi_w(ordered product of the block's components).
inline DiagonalElement g_cumulant(const std::vector<GRandomVariable>& xs) {
    if (xs.empty()) throw Error("g_cumulant of an empty tuple");
    const ContextPtr& ctx = xs.front().context();
    for (const auto& x : xs) detail::require_same_context(xs.front(), x);
    int n = static_cast<int>(xs.size());
    if (n > ctx->order_cap())
        throw WordTooLong("cumulant order " + std::to_string(n) + " exceeds order cap " +
                          std::to_string(ctx->order_cap()));
    const auto& lat = nc_lattice(n, ctx->nc_cap());
    const auto& mu = lat.mu_to_top();

    DiagonalElement out;

    // unit coordinate: the identity functional on the scalar parts
    {
        bool dead = false;
        for (const auto& x : xs) dead = dead || x.scalar_part().is_zero();
        if (!dead) {
            GaussianRational all(1);
            for (const auto& x : xs) all *= x.scalar_part();
            // products over blocks of scalars always multiply out to the same
            // thing, so only the Moebius mass remains
            GaussianRational mass;
            for (std::size_t i = 0; i < lat.size(); ++i) mass += GaussianRational(mu[i]);
            out.set_unit(all * mass);
        }
    }

    // a coordinate dies as soon as one argument vanishes there: every block
    // product then carries a zero factor
    for (const auto& [w, first_comp] : xs.front().components()) {
        std::vector<const Polynomial*> comps{&first_comp};
        bool dead = false;
        for (std::size_t j = 1; j < xs.size(); ++j) {
            auto it = xs[j].components().find(w);
            if (it == xs[j].components().end()) {
                dead = true;
                break;
            }
            comps.push_back(&it->second);
        }
        if (dead) continue;

        std::vector<std::optional<GaussianRational>> block_memo(static_cast<std::size_t>(1) << n);
        auto block_value = [&](const std::vector<int>& block) -> const GaussianRational& {
            std::size_t mask = 0;
            for (int pos : block) mask |= static_cast<std::size_t>(1) << (pos - 1);
            auto& slot = block_memo[mask];
            if (!slot) {
                Polynomial prod = *comps[static_cast<std::size_t>(block.front() - 1)];
                for (std::size_t i = 1; i < block.size(); ++i)
                    prod = prod * *comps[static_cast<std::size_t>(block[i] - 1)];
                slot = ctx->expect_poly(prod);
            }
            return *slot;
        };

        GaussianRational sum;
        for (std::size_t i = 0; i < lat.size(); ++i) {
            GaussianRational prod(1);
            bool zero = false;
            for (const auto& block : lat.elements()[i].blocks()) {
                const auto& v = block_value(block);
                if (v.is_zero()) {
                    zero = true;
                    break;
                }
                prod *= v;
            }
            if (!zero) sum += GaussianRational(mu[i]) * prod;
        }
        out.set_coord(w, std::move(sum));
    }
    return out;
}

// Disjoint vertex sets certify G-freeness of the subalgebras generated along
// the two words: every generator pair then lives at disjoint summands.
inline bool are_g_free_structural(const GraphContext& ctx, const PathWord& w1, const PathWord& w2) {
    ctx.require_word(w1);
    ctx.require_word(w2);
    return disjoint(w1, w2);
}

struct GFreeWitness {
    std::vector<int> pattern;  // positions drawn from {0: x, 1: x*, 2: y, 3: y*}
    std::string coordinate;    // "unit" or the word
    GaussianRational value;
};

struct GFreeResult {
    bool free = true;
    std::optional<GFreeWitness> witness;
};

// Literal definition of freeness over D^G with *-closure: every mixed trivial
// cumulant of {x, x*, y, y*} of order 2..up_to must vanish. Deterministic
// scan order, first failure wins.
inline GFreeResult are_g_free_numerical(const GRandomVariable& x, const GRandomVariable& y, int up_to) {
    detail::require_same_context(x, y);
    const std::vector<GRandomVariable> args{x, adjoint(x), y, adjoint(y)};
    for (int n = 2; n <= up_to; ++n) {
        std::vector<int> pattern(static_cast<std::size_t>(n), 0);
        while (true) {
            bool has_x = false, has_y = false;
            for (int p : pattern) (p < 2 ? has_x : has_y) = true;
            if (has_x && has_y) {
                std::vector<GRandomVariable> tuple;
                tuple.reserve(pattern.size());
                for (int p : pattern) tuple.push_back(args[static_cast<std::size_t>(p)]);
                DiagonalElement k = g_cumulant(tuple);
                if (!k.is_zero()) {
                    GFreeWitness w;
                    w.pattern = pattern;
                    if (!k.unit().is_zero()) {
                        w.coordinate = "unit";
                        w.value = k.unit();
                    } else {
                        const auto& [word, value] = *k.coords().begin();
                        w.coordinate = word.str();
                        w.value = value;
                    }
                    return {false, std::move(w)};
                }
            }
            // next pattern in lexicographic order, leftmost position major
            int i = n - 1;
            while (i >= 0 && pattern[static_cast<std::size_t>(i)] == 3) {
                pattern[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
            ++pattern[static_cast<std::size_t>(i)];
        }
    }
    return {};
}

}  // namespace gfp
