#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gfp/gfps.hpp"

namespace gfp {

// Index word (i_1,...,i_n) into a tuple of noncommuting indeterminates z_1..z_s.
using IndexWord = std::vector<int>;

struct IndexWordLess {
    bool operator()(const IndexWord& a, const IndexWord& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

inline std::string to_string(const IndexWord& iw) {
    std::string out = "(";
    for (std::size_t i = 0; i < iw.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(iw[i]);
    }
    return out + ")";
}

// Truncated formal series in s noncommuting indeterminates with coefficients
// in D^G. Index words absent from the map are zero.
class GSeries {
public:
    GSeries(ContextPtr ctx, int num_vars, int order_cap)
        : ctx_(std::move(ctx)), num_vars_(num_vars), order_cap_(order_cap) {
        if (!ctx_) throw Error("series without a context");
        if (num_vars_ < 1) throw Error("series needs at least one variable");
        if (order_cap_ < 1) throw Error("series order cap must be positive");
    }

    const ContextPtr& context() const { return ctx_; }
    int num_vars() const { return num_vars_; }
    int order_cap() const { return order_cap_; }

    DiagonalElement coefficient(const IndexWord& iw) const {
        check_index(iw);
        auto it = coeffs_.find(iw);
        return it == coeffs_.end() ? DiagonalElement{} : it->second;
    }

    void set_coefficient(IndexWord iw, DiagonalElement d) {
        check_index(iw);
        if (d.is_zero())
            coeffs_.erase(iw);
        else
            coeffs_[std::move(iw)] = std::move(d);
    }

    const std::map<IndexWord, DiagonalElement, IndexWordLess>& coefficients() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }

    friend bool operator==(const GSeries& a, const GSeries& b) {
        return a.ctx_ == b.ctx_ && a.num_vars_ == b.num_vars_ && a.order_cap_ == b.order_cap_ &&
               a.coeffs_ == b.coeffs_;
    }

private:
    void check_index(const IndexWord& iw) const {
        if (iw.empty() || static_cast<int>(iw.size()) > order_cap_)
            throw ShapeMismatch("index word length outside 1.." + std::to_string(order_cap_));
        for (int i : iw)
            if (i < 1 || i > num_vars_) throw ShapeMismatch("index " + std::to_string(i) + " out of range");
    }

    ContextPtr ctx_;
    int num_vars_;
    int order_cap_;
    std::map<IndexWord, DiagonalElement, IndexWordLess> coeffs_;
};

namespace detail {

inline void require_same_shape(const GSeries& a, const GSeries& b) {
    if (a.context() != b.context() || a.num_vars() != b.num_vars() || a.order_cap() != b.order_cap())
        throw ShapeMismatch("series shapes differ");
}

inline ContextPtr common_context(const std::vector<GRandomVariable>& xs) {
    if (xs.empty()) throw Error("empty variable tuple");
    for (const auto& x : xs) require_same_context(xs.front(), x);
    return xs.front().context();
}

}  // namespace detail

// M^G: coefficient at (i_1,...,i_n) is E^G(x_{i_1} ... x_{i_n}). Products are
// built along a prefix walk so each extension costs one multiplication.
inline GSeries moment_series(const std::vector<GRandomVariable>& xs, int N) {
    auto ctx = detail::common_context(xs);
    GSeries out(ctx, static_cast<int>(xs.size()), N);
    IndexWord iw;
    auto rec = [&](auto&& self, const GRandomVariable& prefix) -> void {
        out.set_coefficient(iw, expectation(prefix));
        if (static_cast<int>(iw.size()) < N) {
            for (int j = 1; j <= static_cast<int>(xs.size()); ++j) {
                iw.push_back(j);
                self(self, mul(prefix, xs[static_cast<std::size_t>(j - 1)]));
                iw.pop_back();
            }
        }
    };
    for (int j = 1; j <= static_cast<int>(xs.size()); ++j) {
        iw.assign(1, j);
        rec(rec, xs[static_cast<std::size_t>(j - 1)]);
    }
    return out;
}

// R^G: coefficient at (i_1,...,i_n) is the mixed graph cumulant of the
// selected tuple.
inline GSeries r_series(const std::vector<GRandomVariable>& xs, int N) {
    auto ctx = detail::common_context(xs);
    int s = static_cast<int>(xs.size());
    GSeries out(ctx, s, N);
    for (int n = 1; n <= N; ++n) {
        IndexWord iw(static_cast<std::size_t>(n), 1);
        while (true) {
            std::vector<GRandomVariable> tuple;
            tuple.reserve(iw.size());
            for (int i : iw) tuple.push_back(xs[static_cast<std::size_t>(i - 1)]);
            out.set_coefficient(iw, g_cumulant(tuple));
            int pos = n - 1;
            while (pos >= 0 && iw[static_cast<std::size_t>(pos)] == s) {
                iw[static_cast<std::size_t>(pos)] = 1;
                --pos;
            }
            if (pos < 0) break;
            ++iw[static_cast<std::size_t>(pos)];
        }
    }
    return out;
}

inline GSeries series_add(const GSeries& a, const GSeries& b) {
    detail::require_same_shape(a, b);
    GSeries out = a;
    for (const auto& [iw, d] : b.coefficients()) out.set_coefficient(iw, out.coefficient(iw) + d);
    return out;
}

inline IndexWord subword(const IndexWord& iw, const std::vector<int>& positions) {
    IndexWord out;
    out.reserve(positions.size());
    for (int p : positions) out.push_back(iw[static_cast<std::size_t>(p - 1)]);
    return out;
}

// Boxed convolution: coefficient at (i_1,...,i_n) is
//   sum over pi in NC(n) of
//     prod_{V in pi} Rx[(i_j : j in V)]  *  prod_{W in Kr(pi)} Ry[(i_j : j in W)],
// with D^G products taken coordinatewise.
inline GSeries boxed_g(const GSeries& rx, const GSeries& ry) {
    detail::require_same_shape(rx, ry);
    const auto& ctx = *rx.context();
    int s = rx.num_vars();
    int N = rx.order_cap();
    GSeries out(rx.context(), s, N);
    for (int n = 1; n <= N; ++n) {
        const auto& lat = nc_lattice(n, ctx.nc_cap());
        const auto& kr = lat.kreweras_index();
        IndexWord iw(static_cast<std::size_t>(n), 1);
        while (true) {
            DiagonalElement total;
            for (std::size_t p = 0; p < lat.size(); ++p) {
                DiagonalElement term;
                bool first = true, dead = false;
                for (const auto& block : lat.elements()[p].blocks()) {
                    DiagonalElement f = rx.coefficient(subword(iw, block));
                    if (f.is_zero()) {
                        dead = true;
                        break;
                    }
                    term = first ? std::move(f) : term * f;
                    first = false;
                }
                if (dead) continue;
                for (const auto& block : lat.elements()[kr[p]].blocks()) {
                    DiagonalElement f = ry.coefficient(subword(iw, block));
                    if (f.is_zero()) {
                        dead = true;
                        break;
                    }
                    term = term * f;
                    if (term.is_zero()) {
                        dead = true;
                        break;
                    }
                }
                if (!dead) total += term;
            }
            out.set_coefficient(iw, std::move(total));
            int pos = n - 1;
            while (pos >= 0 && iw[static_cast<std::size_t>(pos)] == s) {
                iw[static_cast<std::size_t>(pos)] = 1;
                --pos;
            }
            if (pos < 0) break;
            ++iw[static_cast<std::size_t>(pos)];
        }
    }
    return out;
}

// Only the second graph cumulant may survive, and it must.
inline bool is_g_semicircular(const GRandomVariable& x, int N) {
    if (N < 2) throw Error("semicircularity needs N >= 2");
    if (!(adjoint(x) == x)) throw NotSelfAdjoint("argument is not self-adjoint");
    bool second_nonzero = false;
    for (int n = 1; n <= N; ++n) {
        auto k = g_cumulant(std::vector<GRandomVariable>(static_cast<std::size_t>(n), x));
        if (n == 2)
            second_nonzero = !k.is_zero();
        else if (!k.is_zero())
            return false;
    }
    return second_nonzero;
}

enum class CircularKind {
    none,
    w_circular,         // both halves live at one common word
    disjoint_circular,  // halves supported at disjoint words
    general,
};

struct CircularVerdict {
    bool circular = false;
    CircularKind kind = CircularKind::none;
};

// a = x1 + i x2 is G-circular when both halves are G-semicircular and G-free.
inline CircularVerdict is_g_circular(const GRandomVariable& x1, const GRandomVariable& x2, int N) {
    detail::require_same_context(x1, x2);
    if (!is_g_semicircular(x1, N) || !is_g_semicircular(x2, N)) return {};
    if (!are_g_free_numerical(x1, x2, N).free) return {};
    CircularVerdict v;
    v.circular = true;
    v.kind = CircularKind::general;
    const auto& c1 = x1.components();
    const auto& c2 = x2.components();
    if (c1.size() == 1 && c2.size() == 1 && c1.begin()->first == c2.begin()->first) {
        v.kind = CircularKind::w_circular;
    } else {
        bool all_disjoint = true;
        for (const auto& [w1, p1] : c1)
            for (const auto& [w2, p2] : c2) all_disjoint = all_disjoint && disjoint(w1, w2);
        if (all_disjoint) v.kind = CircularKind::disjoint_circular;
    }
    return v;
}

// Only the even alternating *-cumulants k(a,a*,a,a*,...) and k(a*,a,a*,a,...)
// may be nonzero.
inline bool is_g_r_diagonal(const GRandomVariable& a, int N) {
    const GRandomVariable astar = adjoint(a);
    for (int n = 1; n <= N; ++n) {
        for (int mask = 0; mask < (1 << n); ++mask) {
            bool alternating = true;
            for (int i = 0; i + 1 < n; ++i)
                if (((mask >> i) & 1) == ((mask >> (i + 1)) & 1)) alternating = false;
            if (n % 2 == 0 && alternating) continue;
            std::vector<GRandomVariable> tuple;
            tuple.reserve(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) tuple.push_back(((mask >> i) & 1) ? astar : a);
            if (!g_cumulant(tuple).is_zero()) return false;
        }
    }
    return true;
}

}  // namespace gfp
