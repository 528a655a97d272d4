#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gfp/errors.hpp"
#include "gfp/rational.hpp"

namespace gfp {

// Block list of a partition of {1,...,n}: blocks sorted by least element,
// elements ascending inside each block.
using Blocks = std::vector<std::vector<int>>;

inline constexpr int kDefaultNcCap = 14;  // Catalan(14) = 2,674,440

inline Integer catalan(int n) {
    if (n < 0) return 0;
    std::vector<Integer> c(static_cast<std::size_t>(n) + 1);
    c[0] = 1;
    for (int m = 0; m < n; ++m) {
        Integer s = 0;
        for (int i = 0; i <= m; ++i) s += c[i] * c[m - i];
        c[m + 1] = s;
    }
    return c[static_cast<std::size_t>(n)];
}

// Crossing test on a canonical block list: two blocks cross iff their merged
// member sequence alternates B,C,B,C somewhere. O(n * blocks), enough for the
// sizes this library allows; the O(n^4) quadruple scan lives in the tests as
// the independent oracle.
inline bool is_noncrossing(int n, const Blocks& blocks) {
    std::vector<int> id(static_cast<std::size_t>(n) + 1, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (int x : blocks[b]) id[static_cast<std::size_t>(x)] = static_cast<int>(b);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].size() < 2) continue;
        int lo = blocks[b].front(), hi = blocks[b].back();
        // everything strictly inside the span of b that is not in b must not
        // leave the span
        for (int x = lo + 1; x < hi; ++x) {
            int other = id[static_cast<std::size_t>(x)];
            if (other == static_cast<int>(b)) continue;
            const auto& ob = blocks[static_cast<std::size_t>(other)];
            if (ob.front() < lo || ob.back() > hi) return false;
        }
    }
    return true;
}

class NoncrossingPartition {
public:
    NoncrossingPartition(int n, Blocks blocks) : n_(n), blocks_(std::move(blocks)) {
        if (n_ < 1) throw Error("partition size must be positive");
        canonicalize();
        validate();
    }

    static NoncrossingPartition discrete(int n) {
        Blocks b;
        for (int i = 1; i <= n; ++i) b.push_back({i});
        return NoncrossingPartition(n, std::move(b));
    }

    static NoncrossingPartition full(int n) {
        std::vector<int> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 1);
        return NoncrossingPartition(n, {std::move(all)});
    }

    int n() const { return n_; }
    const Blocks& blocks() const { return blocks_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }

    // 0-based point -> block index in canonical order
    std::vector<int> block_ids() const {
        std::vector<int> id(static_cast<std::size_t>(n_));
        for (std::size_t b = 0; b < blocks_.size(); ++b)
            for (int x : blocks_[b]) id[static_cast<std::size_t>(x - 1)] = static_cast<int>(b);
        return id;
    }

    friend bool operator==(const NoncrossingPartition&, const NoncrossingPartition&) = default;

    // Deterministic total order: lexicographic on the canonical block list.
    friend bool operator<(const NoncrossingPartition& a, const NoncrossingPartition& b) {
        return a.blocks_ < b.blocks_;
    }

private:
    void canonicalize() {
        for (auto& b : blocks_) std::sort(b.begin(), b.end());
        std::sort(blocks_.begin(), blocks_.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
    }

    void validate() const {
        std::vector<char> seen(static_cast<std::size_t>(n_) + 1, 0);
        int count = 0;
        for (const auto& b : blocks_) {
            if (b.empty()) throw Error("empty block");
            for (int x : b) {
                if (x < 1 || x > n_) throw Error("point out of range");
                if (seen[static_cast<std::size_t>(x)]) throw Error("point repeated across blocks");
                seen[static_cast<std::size_t>(x)] = 1;
                ++count;
            }
        }
        if (count != n_) throw Error("blocks do not cover {1,...,n}");
        if (!is_noncrossing(n_, blocks_)) throw Error("partition is crossing");
    }

    int n_;
    Blocks blocks_;
};

// "a,b|c|d,e" with 1-based points
inline std::string render_blocks(const Blocks& blocks) {
    std::string out;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (b) out += "|";
        for (std::size_t i = 0; i < blocks[b].size(); ++i) {
            if (i) out += ",";
            out += std::to_string(blocks[b][i]);
        }
    }
    return out;
}

inline std::string render_partition(const NoncrossingPartition& p) { return render_blocks(p.blocks()); }

inline NoncrossingPartition parse_partition(const std::string& text, int n) {
    Blocks blocks;
    std::stringstream outer(text);
    std::string blk;
    while (std::getline(outer, blk, '|')) {
        std::vector<int> block;
        std::stringstream inner(blk);
        std::string item;
        while (std::getline(inner, item, ',')) {
            std::size_t pos = 0;
            int value = 0;
            try {
                value = std::stoi(item, &pos);
            } catch (const std::exception&) {
                throw ParseError("bad partition point '" + item + "'");
            }
            if (pos != item.size()) throw ParseError("bad partition point '" + item + "'");
            block.push_back(value);
        }
        if (block.empty()) throw ParseError("empty block in partition '" + text + "'");
        blocks.push_back(std::move(block));
    }
    if (blocks.empty()) throw ParseError("empty partition");
    try {
        return NoncrossingPartition(n, std::move(blocks));
    } catch (const Error& e) {
        throw ParseError(std::string("invalid partition: ") + e.what());
    }
}

namespace detail {

// Streams the noncrossing partitions of a stack of disjoint ascending point
// segments in lexicographic order of the canonical block list. The block of
// the least remaining point is chosen as an increasing subsequence of its
// segment; the gaps between chosen points become fresh segments. Restores
// stack/acc on return, so the whole enumeration needs O(n) working space.
inline void nc_stream_segments(std::vector<std::vector<int>>& stack, Blocks& acc,
                               const std::function<void(const Blocks&)>& sink) {
    if (stack.empty()) {
        sink(acc);
        return;
    }
    std::vector<int> seg = std::move(stack.back());
    stack.pop_back();

    std::vector<int> block{seg[0]};
    std::vector<std::pair<std::size_t, std::size_t>> gaps;  // [begin,end) into seg

    std::function<void(std::size_t)> choose = [&](std::size_t from) {
        // close the block here; the tail of the segment is one more gap
        {
            auto all = gaps;
            if (from < seg.size()) all.emplace_back(from, seg.size());
            // earliest gap must surface first: push in reverse
            for (auto it = all.rbegin(); it != all.rend(); ++it)
                stack.emplace_back(seg.begin() + static_cast<std::ptrdiff_t>(it->first),
                                   seg.begin() + static_cast<std::ptrdiff_t>(it->second));
            acc.push_back(block);
            nc_stream_segments(stack, acc, sink);
            acc.pop_back();
            for (std::size_t i = 0; i < all.size(); ++i) stack.pop_back();
        }
        // or extend it with any later element of the segment
        for (std::size_t e = from; e < seg.size(); ++e) {
            block.push_back(seg[e]);
            if (e > from) gaps.emplace_back(from, e);
            choose(e + 1);
            if (e > from) gaps.pop_back();
            block.pop_back();
        }
    };
    choose(1);

    stack.push_back(std::move(seg));
}

}  // namespace detail

// Streams every noncrossing partition of {1,...,n} exactly once, as canonical
// block lists in lexicographic order. The buffer passed to the sink is reused.
inline void for_each_noncrossing(int n, const std::function<void(const Blocks&)>& sink) {
    if (n < 1) throw Error("partition size must be positive");
    std::vector<int> points(static_cast<std::size_t>(n));
    std::iota(points.begin(), points.end(), 1);
    std::vector<std::vector<int>> stack{std::move(points)};
    Blocks acc;
    detail::nc_stream_segments(stack, acc, sink);
}

inline void check_nc_cap(int n, int cap) {
    if (n > cap)
        throw SizeExceedsCap("NC(" + std::to_string(n) + ") exceeds the size cap " + std::to_string(cap));
}

inline std::vector<NoncrossingPartition> enumerate_nc(int n, int cap = kDefaultNcCap) {
    check_nc_cap(n, cap);
    std::vector<NoncrossingPartition> out;
    for_each_noncrossing(n, [&](const Blocks& b) { out.emplace_back(n, b); });
    return out;
}

inline bool refinement_leq(const NoncrossingPartition& p, const NoncrossingPartition& q) {
    if (p.n() != q.n()) throw SizeMismatch("refinement_leq on different ground sets");
    auto qid = q.block_ids();
    for (const auto& b : p.blocks()) {
        int want = qid[static_cast<std::size_t>(b.front() - 1)];
        for (int x : b)
            if (qid[static_cast<std::size_t>(x - 1)] != want) return false;
    }
    return true;
}

inline Rational zeta(const NoncrossingPartition& p, const NoncrossingPartition& q) {
    return refinement_leq(p, q) ? Rational(1) : Rational(0);
}

// Kreweras complement. Interleave 1,1',2,2',...,n,n'; the complement is the
// coarsest partition of the primed copies whose union with p stays
// noncrossing. Two primed points j' < k' can share a block exactly when
// {j+1,...,k} is a union of p-blocks; those pairs generate the complement.
inline NoncrossingPartition kreweras(const NoncrossingPartition& p) {
    int n = p.n();
    auto ids = p.block_ids();
    std::vector<int> bmin(p.blocks().size()), bmax(p.blocks().size());
    for (std::size_t b = 0; b < p.blocks().size(); ++b) {
        bmin[b] = p.blocks()[b].front();
        bmax[b] = p.blocks()[b].back();
    }

    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };

    for (int j = 1; j < n; ++j) {
        for (int k = j + 1; k <= n; ++k) {
            bool ok = true;
            for (int x = j + 1; x <= k && ok; ++x) {
                int b = ids[static_cast<std::size_t>(x - 1)];
                if (bmin[static_cast<std::size_t>(b)] < j + 1 || bmax[static_cast<std::size_t>(b)] > k) ok = false;
            }
            if (ok) parent[static_cast<std::size_t>(find(j - 1))] = find(k - 1);
        }
    }

    std::map<int, std::vector<int>> classes;
    for (int x = 0; x < n; ++x) classes[find(x)].push_back(x + 1);
    Blocks blocks;
    for (auto& [root, members] : classes) blocks.push_back(std::move(members));
    return NoncrossingPartition(n, std::move(blocks));
}

// p placed on the odd positions 2k-1, q on the even positions 2k. The result
// partitions {1,...,2n} and is noncrossing whenever q <= Kr(p); it is returned
// as a raw block list because it may legitimately cross for other q.
inline Blocks alt_union(const NoncrossingPartition& p, const NoncrossingPartition& q) {
    if (p.n() != q.n()) throw SizeMismatch("alt_union on different ground sets");
    Blocks out;
    for (const auto& b : p.blocks()) {
        std::vector<int> nb;
        for (int x : b) nb.push_back(2 * x - 1);
        out.push_back(std::move(nb));
    }
    for (const auto& b : q.blocks()) {
        std::vector<int> nb;
        for (int x : b) nb.push_back(2 * x);
        out.push_back(std::move(nb));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

// Materialized NC(n) with the derived structure the transforms need: the
// lexicographic element list, the Moebius column towards 1_n, and the Kreweras
// index table. Everything is built lazily under a lock and immutable
// afterwards, so concurrent readers are fine.
class NcLattice {
public:
    explicit NcLattice(int n) : n_(n), elements_(enumerate_nc(n, /*cap=*/n)) {}

    int n() const { return n_; }
    const std::vector<NoncrossingPartition>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }

    std::size_t index_of(const NoncrossingPartition& p) const {
        auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
        if (it == elements_.end() || !(*it == p)) throw Error("partition not in lattice");
        return static_cast<std::size_t>(it - elements_.begin());
    }

    // Moebius function of the interval [p,q], by the defining recursion
    // mu(p,p) = 1, sum_{p <= t <= q} mu(p,t) = 0; zero when p <= q fails.
    Rational moebius(const NoncrossingPartition& p, const NoncrossingPartition& q) const {
        if (p.n() != n_ || q.n() != n_) throw SizeMismatch("moebius argument size mismatch");
        if (!refinement_leq(p, q)) return Rational(0);
        std::size_t pi = index_of(p), qi = index_of(q);
        std::scoped_lock lock(mutex_);
        return moebius_locked(pi, qi);
    }

    // mu(p, 1_n) for every p, indexed like elements().
    const std::vector<Rational>& mu_to_top() const {
        std::scoped_lock lock(mutex_);
        if (mu_top_.empty()) {
            std::size_t top = index_of(NoncrossingPartition::full(n_));
            mu_top_.resize(size());
            for (std::size_t i = 0; i < size(); ++i) mu_top_[i] = moebius_locked(i, top);
        }
        return mu_top_;
    }

    // index of Kr(pi) for every pi
    const std::vector<std::size_t>& kreweras_index() const {
        std::scoped_lock lock(mutex_);
        if (kr_index_.empty()) {
            kr_index_.resize(size());
            for (std::size_t i = 0; i < size(); ++i) kr_index_[i] = index_of(kreweras(elements_[i]));
        }
        return kr_index_;
    }

private:
    Rational moebius_locked(std::size_t pi, std::size_t qi) const {
        auto key = std::make_pair(pi, qi);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        // row of p over [p,q], finer elements first (strict refinement drops
        // the block count, so sorting by block count descending is a linear
        // extension of the interval)
        const auto& p = elements_[pi];
        const auto& q = elements_[qi];
        std::vector<std::size_t> interval;
        for (std::size_t t = 0; t < size(); ++t)
            if (refinement_leq(p, elements_[t]) && refinement_leq(elements_[t], q)) interval.push_back(t);
        std::stable_sort(interval.begin(), interval.end(), [&](std::size_t a, std::size_t b) {
            return elements_[a].block_count() > elements_[b].block_count();
        });
        std::vector<Rational> row(interval.size());
        for (std::size_t j = 0; j < interval.size(); ++j) {
            if (interval[j] == pi) {
                row[j] = 1;
            } else {
                Rational s = 0;
                for (std::size_t i = 0; i < j; ++i)
                    if (refinement_leq(elements_[interval[i]], elements_[interval[j]])) s += row[i];
                row[j] = -s;
            }
            memo_.emplace(std::make_pair(pi, interval[j]), row[j]);
        }
        return memo_.at(key);
    }

    int n_;
    std::vector<NoncrossingPartition> elements_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<std::size_t, std::size_t>, Rational> memo_;
    mutable std::vector<Rational> mu_top_;
    mutable std::vector<std::size_t> kr_index_;
};

// Shared per-n lattice registry. Built once under the lock, then read-only.
inline const NcLattice& nc_lattice(int n, int cap = kDefaultNcCap) {
    if (n < 1) throw Error("partition size must be positive");
    check_nc_cap(n, cap);
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<NcLattice>> registry;
    std::scoped_lock lock(mutex);
    auto& slot = registry[n];
    if (!slot) slot = std::make_unique<NcLattice>(n);
    return *slot;
}

inline Rational moebius(const NoncrossingPartition& p, const NoncrossingPartition& q,
                        int cap = kDefaultNcCap) {
    if (p.n() != q.n()) throw SizeMismatch("moebius argument size mismatch");
    return nc_lattice(p.n(), cap).moebius(p, q);
}

}  // namespace gfp
