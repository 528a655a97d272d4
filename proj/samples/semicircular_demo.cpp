// Sums one standard semicircular generator per vertex of the path graph
// 1-2-3 and prints the graph R-transform of the sum: only the second
// coefficient survives, with the indicator of every vertex word.

#include <iostream>

#include "gfp/gfp.hpp"

int main() {
    using namespace gfp;

    SimplicialGraph graph({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}});
    VertexSpecs specs;
    for (const auto& v : graph.vertices()) {
        CumulantSpec spec(v, 6);
        spec.declare_self_adjoint("s");
        Letter s{"s", false, v};
        spec.set({s, s}, GaussianRational(1));
        specs.emplace(v, std::move(spec));
    }
    auto ctx = build_context(graph, specs, 2, PathMode::simple, 6);

    GRandomVariable sum(ctx);
    for (const auto& v : graph.vertices())
        sum = add(sum, embed(ctx, PathWord({v}), Polynomial::letter(Letter{"s", false, v})));

    std::cout << "G-semicircular: " << (is_g_semicircular(sum, 6) ? "yes" : "no") << "\n";
    std::cout << render_series(r_series({sum}, 4)).dump(2) << "\n";
    return 0;
}
