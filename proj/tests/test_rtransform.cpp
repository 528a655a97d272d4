#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gfp/rtransform.hpp"
#include "oracles.hpp"

using gfp::ContextPtr;
using gfp::CumulantSpec;
using gfp::DiagonalElement;
using gfp::GaussianRational;
using gfp::GRandomVariable;
using gfp::GSeries;
using gfp::IndexWord;
using gfp::Letter;
using gfp::PathMode;
using gfp::PathWord;
using gfp::Polynomial;
using gfp::Rational;
using gfp::SimplicialGraph;
using gfp::Word;

namespace {

CumulantSpec semicircular_spec(const std::string& vertex, const std::string& gen, int cap,
                               GaussianRational k2 = GaussianRational(1)) {
    CumulantSpec spec(vertex, cap);
    spec.declare_self_adjoint(gen);
    Letter s{gen, false, vertex};
    spec.set({s, s}, std::move(k2));
    return spec;
}

ContextPtr path_context(int order_cap = 8) {
    SimplicialGraph g({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}});
    gfp::VertexSpecs specs;
    for (int v = 1; v <= 3; ++v) {
        auto name = std::to_string(v);
        specs.emplace(name, semicircular_spec(name, "s" + name, order_cap));
    }
    return gfp::build_context(g, specs, 2, PathMode::simple, order_cap);
}

Letter letter(int v) { return Letter{"s" + std::to_string(v), false, std::to_string(v)}; }

// single vertex "v" carrying generators "a", "b" with random diagonal
// cumulants up to `orders`, jointly free (no mixed entries), plus a point
// mass "u" with k1 = 1
struct OneVertex {
    ContextPtr ctx;
    GRandomVariable x, y, unit;
    gfp::CumulantSequence ka, kb;
};

OneVertex one_vertex_fixture(std::mt19937& rng, int orders, int order_cap) {
    SimplicialGraph g({"v"}, {});
    CumulantSpec spec("v", order_cap);
    Letter a{"a", false, "v"}, b{"b", false, "v"}, u{"u", false, "v"};
    gfp::CumulantSequence ka, kb;
    for (int len = 1; len <= orders; ++len) {
        auto ca = oracle::random_gaussian(rng);
        auto cb = oracle::random_gaussian(rng);
        ka.entries.push_back(ca);
        kb.entries.push_back(cb);
        spec.set(Word(static_cast<std::size_t>(len), a), ca);
        spec.set(Word(static_cast<std::size_t>(len), b), cb);
    }
    spec.set({u}, GaussianRational(1));
    gfp::VertexSpecs specs;
    specs.emplace("v", spec);
    auto ctx = gfp::build_context(g, specs, 0, PathMode::simple, order_cap);
    PathWord v({"v"});
    return OneVertex{ctx, gfp::embed(ctx, v, Polynomial::letter(a)), gfp::embed(ctx, v, Polynomial::letter(b)),
                     gfp::embed(ctx, v, Polynomial::letter(u)), std::move(ka), std::move(kb)};
}

DiagonalElement indicator(const PathWord& w) {
    DiagonalElement d;
    d.set_coord(w, GaussianRational(1));
    return d;
}

}  // namespace

TEST_CASE("moment series of a semicircular generator") {
    auto ctx = path_context();
    auto x = gfp::embed(ctx, PathWord({"1"}), Polynomial::letter(letter(1)));
    auto m = gfp::moment_series({x}, 4);
    auto e = indicator(PathWord({"1"}));
    REQUIRE(m.coefficient({1}).is_zero());
    REQUIRE(m.coefficient({1, 1}) == e);
    REQUIRE(m.coefficient({1, 1, 1}).is_zero());
    REQUIRE(m.coefficient({1, 1, 1, 1}) == e.scaled(GaussianRational(2)));
}

TEST_CASE("moment series, multivariate and degenerate cases") {
    auto ctx = path_context();
    REQUIRE(gfp::moment_series({GRandomVariable(ctx), GRandomVariable(ctx)}, 3).is_zero());

    auto x1 = gfp::embed(ctx, PathWord({"1"}), Polynomial::letter(letter(1)));
    auto x2 = gfp::embed(ctx, PathWord({"1", "2"}),
                         Polynomial::word({letter(1), letter(2)}) + Polynomial::constant(GaussianRational(1)));
    auto m = gfp::moment_series({x1, x2}, 2);
    REQUIRE(m.coefficient({1, 2}) == gfp::expectation(gfp::mul(x1, x2)));
    REQUIRE(m.coefficient({2, 1}) == gfp::expectation(gfp::mul(x2, x1)));
    REQUIRE_THROWS_AS(m.coefficient({3}), gfp::ShapeMismatch);
}

TEST_CASE("r series of recognizable variables") {
    auto ctx = path_context();
    auto x = gfp::embed(ctx, PathWord({"1"}), Polynomial::letter(letter(1)));
    auto r = gfp::r_series({x}, 5);
    REQUIRE(r.coefficients().size() == 1);
    REQUIRE(r.coefficient({1, 1}) == indicator(PathWord({"1"})));

    std::mt19937 rng(5150);
    auto fx = one_vertex_fixture(rng, 1, 4);  // only first-order cumulants
    auto rp = gfp::r_series({fx.x}, 4);
    REQUIRE(rp.coefficients().size() == 1);
    REQUIRE(rp.coefficient({1}) == indicator(PathWord({"v"})).scaled(fx.ka.entries[0]));

    REQUIRE(gfp::r_series({GRandomVariable(ctx)}, 4).is_zero());
}

TEST_CASE("series addition") {
    std::mt19937 rng(808);
    auto fx = one_vertex_fixture(rng, 4, 4);
    auto s = gfp::r_series({fx.x, fx.y}, 3);
    GSeries zero(fx.ctx, 2, 3);
    REQUIRE(gfp::series_add(s, zero) == s);

    GSeries neg(fx.ctx, 2, 3);
    for (const auto& [iw, d] : s.coefficients()) neg.set_coefficient(iw, d.scaled(GaussianRational(-1)));
    REQUIRE(gfp::series_add(s, neg).is_zero());

    auto t = gfp::moment_series({fx.x, fx.y}, 3);
    REQUIRE(gfp::series_add(s, t) == gfp::series_add(t, s));

    GSeries other_shape(fx.ctx, 3, 3);
    REQUIRE_THROWS_AS(gfp::series_add(s, other_shape), gfp::ShapeMismatch);
}

TEST_CASE("boxed convolution: first order multiplies first cumulants") {
    SimplicialGraph g({"v"}, {});
    CumulantSpec spec("v", 4);
    Letter a{"a", false, "v"};
    spec.set({a}, GaussianRational(1));
    spec.set({a, a}, GaussianRational(1));
    gfp::VertexSpecs specs;
    specs.emplace("v", spec);
    auto ctx = gfp::build_context(g, specs, 0, PathMode::simple, 4);
    auto x = gfp::embed(ctx, PathWord({"v"}), Polynomial::letter(a));
    auto r = gfp::r_series({x}, 2);
    auto boxed = gfp::boxed_g(r, r);
    REQUIRE(boxed.coefficient({1}) == indicator(PathWord({"v"})));  // k1(x) k1(y) = 1
}

TEST_CASE("boxed convolution: a point mass on the right is neutral") {
    std::mt19937 rng(1618);
    auto fx = one_vertex_fixture(rng, 5, 5);
    auto rx = gfp::r_series({fx.x}, 5);
    auto runit = gfp::r_series({fx.unit}, 5);
    REQUIRE(gfp::boxed_g(rx, runit) == rx);

    GSeries zero(fx.ctx, 1, 5);
    REQUIRE(gfp::boxed_g(zero, runit).is_zero());
}

TEST_CASE("multiplication formula against the first-principles route") {
    std::mt19937 rng(2718);
    const int N = 4;
    auto fx = one_vertex_fixture(rng, 2 * N, 2 * N);
    REQUIRE(gfp::are_g_free_numerical(fx.x, fx.y, N).free);

    auto z = gfp::mul(fx.x, fx.y);
    auto boxed = gfp::boxed_g(gfp::r_series({fx.x}, N), gfp::r_series({fx.y}, N));

    // oracle: graph moments of z, then the scalar Moebius inversion per
    // coordinate
    PathWord v({"v"});
    gfp::MomentSequence mz;
    for (int n = 1; n <= N; ++n) mz.entries.push_back(gfp::g_moment(z, n).coord(v));
    auto kz = gfp::moments_to_cumulants(mz);

    auto rz = gfp::r_series({z}, N);
    for (int n = 1; n <= N; ++n) {
        IndexWord iw(static_cast<std::size_t>(n), 1);
        REQUIRE(boxed.coefficient(iw).coord(v) == kz.entries[static_cast<std::size_t>(n - 1)]);
        REQUIRE(rz.coefficient(iw) == boxed.coefficient(iw));
    }
}

TEST_CASE("the Kreweras-pair sum equals the alternating-union sum") {
    // per coordinate and order n: sum over pi of the partition-indexed
    // cumulant at alt_union(pi, Kr(pi)) applied to (x,y,x,y,...)
    std::mt19937 rng(31415);
    const int N = 3;
    auto fx = one_vertex_fixture(rng, 2 * N, 2 * N);
    auto boxed = gfp::boxed_g(gfp::r_series({fx.x}, N), gfp::r_series({fx.y}, N));

    for (int n = 1; n <= N; ++n) {
        std::vector<GRandomVariable> args;
        for (int i = 0; i < n; ++i) {
            args.push_back(fx.x);
            args.push_back(fx.y);
        }
        DiagonalElement total;
        for (const auto& pi : gfp::enumerate_nc(n)) {
            auto joined = gfp::alt_union(pi, gfp::kreweras(pi));
            DiagonalElement term;
            bool first = true;
            for (const auto& block : joined) {
                std::vector<GRandomVariable> sub;
                for (int pos : block) sub.push_back(args[static_cast<std::size_t>(pos - 1)]);
                auto k = gfp::g_cumulant(sub);
                term = first ? k : term * k;
                first = false;
                if (term.is_zero()) break;
            }
            total += term;
        }
        REQUIRE(total == boxed.coefficient(IndexWord(static_cast<std::size_t>(n), 1)));
    }
}

TEST_CASE("R-series additivity for G-free variables") {
    // disjoint vertex supports on the path graph
    auto ctx = path_context(6);
    auto x = gfp::embed(ctx, PathWord({"1"}), Polynomial::letter(letter(1)));
    auto y = gfp::embed(ctx, PathWord({"3"}), Polynomial::letter(letter(3)));
    REQUIRE(gfp::r_series({gfp::add(x, y)}, 6) == gfp::series_add(gfp::r_series({x}, 6), gfp::r_series({y}, 6)));

    // one shared word, jointly free generators
    std::mt19937 rng(9090);
    auto fx = one_vertex_fixture(rng, 4, 4);
    REQUIRE(gfp::r_series({gfp::add(fx.x, fx.y)}, 4) ==
            gfp::series_add(gfp::r_series({fx.x}, 4), gfp::r_series({fx.y}, 4)));
}

TEST_CASE("juxtaposition of G-free families") {
    auto ctx = path_context(6);
    auto x1 = gfp::embed(ctx, PathWord({"1"}), Polynomial::letter(letter(1)));
    auto x2 = gfp::embed(ctx, PathWord({"1", "2"}), Polynomial::word({letter(1), letter(2)}));
    auto y1 = gfp::embed(ctx, PathWord({"3"}), Polynomial::letter(letter(3)));
    auto y2 = gfp::embed(ctx, PathWord({"3"}),
                         Polynomial::word({letter(3), letter(3)}) + Polynomial::letter(letter(3)));

    const int N = 3;
    auto joint = gfp::r_series({x1, x2, y1, y2}, N);
    auto rx = gfp::r_series({x1, x2}, N);
    auto ry = gfp::r_series({y1, y2}, N);

    for (const auto& [iw, d] : joint.coefficients()) {
        bool pure_x = true, pure_y = true;
        for (int i : iw) (i <= 2 ? pure_y : pure_x) = false;
        if (pure_x) {
            REQUIRE(d == rx.coefficient(iw));
        } else if (pure_y) {
            IndexWord shifted;
            for (int i : iw) shifted.push_back(i - 2);
            REQUIRE(d == ry.coefficient(shifted));
        } else {
            REQUIRE(d.is_zero());  // never stored, so never reached
        }
    }
    // every pure coefficient of the factors is present in the joint series
    for (const auto& [iw, d] : rx.coefficients()) REQUIRE(joint.coefficient(iw) == d);
    for (const auto& [iw, d] : ry.coefficients()) {
        IndexWord shifted;
        for (int i : iw) shifted.push_back(i + 2);
        REQUIRE(joint.coefficient(shifted) == d);
    }
    // and mixed index words are zero
    REQUIRE(joint.coefficient({1, 3}).is_zero());
    REQUIRE(joint.coefficient({4, 2, 1}).is_zero());
}

TEST_CASE("moment and cumulant series recover each other") {
    std::mt19937 rng(123321);
    auto fx = one_vertex_fixture(rng, 5, 5);
    PathWord v({"v"});
    auto ms = gfp::moment_series({fx.x}, 5);
    auto rs = gfp::r_series({fx.x}, 5);

    gfp::MomentSequence m;
    gfp::CumulantSequence k;
    for (int n = 1; n <= 5; ++n) {
        IndexWord iw(static_cast<std::size_t>(n), 1);
        m.entries.push_back(ms.coefficient(iw).coord(v));
        k.entries.push_back(rs.coefficient(iw).coord(v));
    }
    auto k_from_m = gfp::moments_to_cumulants(m);
    auto m_from_k = gfp::cumulants_to_moments(k);
    REQUIRE(k_from_m.entries == k.entries);
    REQUIRE(m_from_k.entries == m.entries);
}

TEST_CASE("multivariate moment coefficients expand over partitions of cumulants") {
    std::mt19937 rng(777);
    auto fx = one_vertex_fixture(rng, 3, 3);
    const int N = 3;
    auto ms = gfp::moment_series({fx.x, fx.y}, N);
    auto rs = gfp::r_series({fx.x, fx.y}, N);
    for (const auto& [iw, d] : ms.coefficients()) {
        int n = static_cast<int>(iw.size());
        DiagonalElement sum;
        for (const auto& pi : gfp::enumerate_nc(n)) {
            DiagonalElement term;
            bool first = true;
            for (const auto& block : pi.blocks()) {
                auto k = rs.coefficient(gfp::subword(iw, block));
                term = first ? k : term * k;
                first = false;
                if (term.is_zero()) break;
            }
            sum += term;
        }
        REQUIRE(sum == d);
    }
}

TEST_CASE("semicircularity recognizer") {
    auto ctx = path_context(6);
    auto s1 = gfp::embed(ctx, PathWord({"1"}), Polynomial::letter(letter(1)));
    REQUIRE(gfp::is_g_semicircular(s1, 6));

    // sum of semicirculars along the vertices of a path
    auto sum = gfp::add(gfp::add(s1, gfp::embed(ctx, PathWord({"2"}), Polynomial::letter(letter(2)))),
                        gfp::embed(ctx, PathWord({"3"}), Polynomial::letter(letter(3))));
    REQUIRE(gfp::is_g_semicircular(sum, 6));

    // a nonzero fourth cumulant survives Moebius inversion and is rejected
    {
        SimplicialGraph g({"v"}, {});
        CumulantSpec spec("v", 6);
        spec.declare_self_adjoint("p");
        Letter p{"p", false, "v"};
        spec.set({p, p}, GaussianRational(1));
        spec.set({p, p, p, p}, GaussianRational(Rational(1, 5)));
        gfp::VertexSpecs specs;
        specs.emplace("v", spec);
        auto c = gfp::build_context(g, specs, 0, PathMode::simple, 6);
        auto x = gfp::embed(c, PathWord({"v"}), Polynomial::letter(p));
        REQUIRE_FALSE(gfp::is_g_semicircular(x, 6));
    }

    // zero second cumulant is not semicircular either
    REQUIRE_FALSE(gfp::is_g_semicircular(GRandomVariable(ctx), 4));

    // a non-self-adjoint argument is refused
    auto skew = gfp::scale(GaussianRational::i(), s1);
    REQUIRE_THROWS_AS(gfp::is_g_semicircular(skew, 4), gfp::NotSelfAdjoint);
}

TEST_CASE("circularity recognizer") {
    // two free semicircular generators at one vertex: w-circular
    SimplicialGraph g({"v"}, {});
    CumulantSpec spec("v", 4);
    spec.declare_self_adjoint("a");
    spec.declare_self_adjoint("b");
    Letter a{"a", false, "v"}, b{"b", false, "v"};
    spec.set({a, a}, GaussianRational(1));
    spec.set({b, b}, GaussianRational(1));
    gfp::VertexSpecs specs;
    specs.emplace("v", spec);
    auto ctx = gfp::build_context(g, specs, 0, PathMode::simple, 4);
    auto x1 = gfp::embed(ctx, PathWord({"v"}), Polynomial::letter(a));
    auto x2 = gfp::embed(ctx, PathWord({"v"}), Polynomial::letter(b));
    auto verdict = gfp::is_g_circular(x1, x2, 4);
    REQUIRE(verdict.circular);
    REQUIRE(verdict.kind == gfp::CircularKind::w_circular);

    // the same half twice has a nonvanishing mixed second cumulant
    auto same = gfp::is_g_circular(x1, x1, 4);
    REQUIRE_FALSE(same.circular);

    // semicirculars at disjoint vertices: (w1,w2)-circular
    auto pctx = path_context(4);
    auto sA = gfp::embed(pctx, PathWord({"1"}), Polynomial::letter(letter(1)));
    auto sB = gfp::embed(pctx, PathWord({"3"}), Polynomial::letter(letter(3)));
    auto disjointVerdict = gfp::is_g_circular(sA, sB, 4);
    REQUIRE(disjointVerdict.circular);
    REQUIRE(disjointVerdict.kind == gfp::CircularKind::disjoint_circular);
}

TEST_CASE("R-diagonality recognizer") {
    // a = x1 + i x2 from a w-circular pair
    SimplicialGraph g({"v"}, {});
    CumulantSpec spec("v", 4);
    spec.declare_self_adjoint("a");
    spec.declare_self_adjoint("b");
    Letter a{"a", false, "v"}, b{"b", false, "v"};
    spec.set({a, a}, GaussianRational(1));
    spec.set({b, b}, GaussianRational(1));
    gfp::VertexSpecs specs;
    specs.emplace("v", spec);
    auto ctx = gfp::build_context(g, specs, 0, PathMode::simple, 4);
    auto x1 = gfp::embed(ctx, PathWord({"v"}), Polynomial::letter(a));
    auto x2 = gfp::embed(ctx, PathWord({"v"}), Polynomial::letter(b));
    auto circ = gfp::add(x1, gfp::scale(GaussianRational::i(), x2));
    REQUIRE(gfp::is_g_r_diagonal(circ, 4));

    // a circular generator declared directly through its *-cumulants
    {
        CumulantSpec cs("v", 4);
        Letter c{"c", false, "v"}, cstar{"c", true, "v"};
        cs.set({c, cstar}, GaussianRational(1));
        cs.set({cstar, c}, GaussianRational(1));
        gfp::VertexSpecs vs;
        vs.emplace("v", cs);
        auto cctx = gfp::build_context(g, vs, 0, PathMode::simple, 4);
        auto z = gfp::embed(cctx, PathWord({"v"}), Polynomial::letter(c));
        REQUIRE(gfp::is_g_r_diagonal(z, 4));
    }

    // self-adjoint with a first cumulant: k1 is not alternating
    {
        CumulantSpec ps("v", 4);
        ps.declare_self_adjoint("p");
        Letter p{"p", false, "v"};
        ps.set({p}, GaussianRational(1));
        gfp::VertexSpecs vs;
        vs.emplace("v", ps);
        auto pctx = gfp::build_context(g, vs, 0, PathMode::simple, 4);
        REQUIRE_FALSE(gfp::is_g_r_diagonal(gfp::embed(pctx, PathWord({"v"}), Polynomial::letter(p)), 4));
    }

    // a self-adjoint semicircular is not R-diagonal: k2(a,a) is non-alternating
    REQUIRE_FALSE(gfp::is_g_r_diagonal(x1, 4));

    // zero is vacuously R-diagonal
    REQUIRE(gfp::is_g_r_diagonal(GRandomVariable(ctx), 4));
}
