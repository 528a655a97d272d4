// gfp — exact computations in graph free probability spaces.
//
// Subcommands: nc (lattice utilities), graph (semigroupoid inspection),
// compute (moments, cumulants, series, boxed convolution), check
// (freeness and distribution recognizers). Output is a single JSON document
// on stdout, byte-deterministic for a fixed input; diagnostics go to stderr.
//
// Exit codes: 0 ok / verdict holds, 1 verdict fails, 2 parse error,
// 3 size cap exceeded, 4 invalid graph or problem data, 5 unknown variable,
// 6 order above the cap.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gfp/gfp.hpp"

namespace {

using gfp::OrderedJson;

int nc_cap_from_env() {
    const char* env = std::getenv("GFP_NC_CAP");
    if (!env) return gfp::kDefaultNcCap;
    std::string text(env);
    std::size_t pos = 0;
    int cap = 0;
    try {
        cap = std::stoi(text, &pos);
    } catch (const std::exception&) {
        throw gfp::ParseError("GFP_NC_CAP must be a positive integer");
    }
    if (pos != text.size() || cap < 1) throw gfp::ParseError("GFP_NC_CAP must be a positive integer");
    return cap;
}

void emit(const OrderedJson& doc) { std::cout << doc.dump(2) << "\n"; }

gfp::NoncrossingPartition parse_endpoint(const std::string& text, int n) {
    if (text == "bottom") return gfp::NoncrossingPartition::discrete(n);
    if (text == "top") return gfp::NoncrossingPartition::full(n);
    return gfp::parse_partition(text, n);
}

gfp::VertexSeq split_word(const std::string& text) {
    gfp::VertexSeq seq;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw gfp::ParseError("empty vertex in word \"" + text + "\"");
        seq.push_back(item);
    }
    if (seq.empty()) throw gfp::ParseError("empty word");
    return seq;
}

int exit_code_for(const gfp::Error& e) {
    if (dynamic_cast<const gfp::ParseError*>(&e)) return 2;
    if (dynamic_cast<const gfp::SizeExceedsCap*>(&e)) return 3;
    if (dynamic_cast<const gfp::UnknownVariable*>(&e)) return 5;
    if (dynamic_cast<const gfp::WordTooLong*>(&e)) return 6;
    if (dynamic_cast<const gfp::GraphInvalid*>(&e) || dynamic_cast<const gfp::MissingVertexSpec*>(&e) ||
        dynamic_cast<const gfp::SpecInvalid*>(&e) || dynamic_cast<const gfp::NotAdmissible*>(&e) ||
        dynamic_cast<const gfp::UnknownVertex*>(&e) || dynamic_cast<const gfp::UnknownWord*>(&e) ||
        dynamic_cast<const gfp::VertexContainmentViolated*>(&e) ||
        dynamic_cast<const gfp::ContextMismatch*>(&e))
        return 4;
    return 2;
}

struct NcArgs {
    int n = 0;
    bool count_only = false;
    std::string pi, theta, from, to;
};

int run_nc_enumerate(const NcArgs& a) {
    int cap = nc_cap_from_env();
    gfp::check_nc_cap(a.n, cap);
    OrderedJson doc;
    doc["command"] = "nc.enumerate";
    doc["n"] = a.n;
    std::size_t count = 0;
    OrderedJson list = OrderedJson::array();
    gfp::for_each_noncrossing(a.n, [&](const gfp::Blocks& b) {
        ++count;
        if (!a.count_only) list.push_back(gfp::render_blocks(b));
    });
    doc["count"] = count;
    if (!a.count_only) doc["partitions"] = std::move(list);
    emit(doc);
    return 0;
}

int run_nc_moebius(const NcArgs& a) {
    int cap = nc_cap_from_env();
    auto from = parse_endpoint(a.from, a.n);
    auto to = parse_endpoint(a.to, a.n);
    OrderedJson doc;
    doc["command"] = "nc.moebius";
    doc["n"] = a.n;
    doc["from"] = gfp::render_partition(from);
    doc["to"] = gfp::render_partition(to);
    doc["result"] = gfp::to_string(gfp::moebius(from, to, cap));
    emit(doc);
    return 0;
}

int run_nc_kreweras(const NcArgs& a) {
    gfp::check_nc_cap(a.n, nc_cap_from_env());
    auto pi = gfp::parse_partition(a.pi, a.n);
    OrderedJson doc;
    doc["command"] = "nc.kreweras";
    doc["n"] = a.n;
    doc["pi"] = gfp::render_partition(pi);
    doc["result"] = gfp::render_partition(gfp::kreweras(pi));
    emit(doc);
    return 0;
}

int run_nc_altunion(const NcArgs& a) {
    gfp::check_nc_cap(a.n, nc_cap_from_env());
    auto pi = gfp::parse_partition(a.pi, a.n);
    auto theta = a.theta.empty() ? gfp::kreweras(pi) : gfp::parse_partition(a.theta, a.n);
    OrderedJson doc;
    doc["command"] = "nc.altunion";
    doc["n"] = a.n;
    doc["pi"] = gfp::render_partition(pi);
    doc["theta"] = gfp::render_partition(theta);
    auto joined = gfp::alt_union(pi, theta);
    doc["result"] = gfp::render_blocks(joined);
    doc["noncrossing"] = gfp::is_noncrossing(2 * a.n, joined);
    emit(doc);
    return 0;
}

struct GraphArgs {
    std::string spec_file;
    std::vector<std::string> disjoint;
};

int run_graph(const GraphArgs& a) {
    auto p = gfp::load_problem_file(a.spec_file);
    OrderedJson doc;
    doc["command"] = "graph";
    doc["spec"] = p.echo;
    OrderedJson results;
    if (!a.disjoint.empty()) {
        auto w1 = gfp::canonical_path(p.ctx->graph(), split_word(a.disjoint[0]), p.ctx->mode());
        auto w2 = gfp::canonical_path(p.ctx->graph(), split_word(a.disjoint[1]), p.ctx->mode());
        doc["w1"] = w1.str();
        doc["w2"] = w2.str();
        results["disjoint"] = gfp::are_g_free_structural(*p.ctx, w1, w2);
    } else {
        OrderedJson words = OrderedJson::array();
        for (const auto& w : p.ctx->semigroupoid()) {
            OrderedJson entry;
            entry["word"] = w.str();
            entry["length"] = w.length();
            words.push_back(std::move(entry));
        }
        results["words"] = std::move(words);
        results["count"] = p.ctx->semigroupoid().size();
    }
    doc["results"] = std::move(results);
    emit(doc);
    return 0;
}

struct ComputeArgs {
    std::string spec_file, what;
    int order = 0;
    std::vector<std::string> vars, left, right;
};

std::vector<gfp::GRandomVariable> pick_vars(const gfp::ProblemSpec& p,
                                            const std::vector<std::string>& names) {
    std::vector<gfp::GRandomVariable> out;
    out.reserve(names.size());
    for (const auto& name : names) out.push_back(p.variable(name));
    return out;
}

int run_compute(const ComputeArgs& a) {
    auto p = gfp::load_problem_file(a.spec_file);
    OrderedJson doc;
    doc["command"] = "compute";
    doc["what"] = a.what;
    if (!a.vars.empty()) doc["vars"] = a.vars;
    if (!a.left.empty()) doc["left"] = a.left;
    if (!a.right.empty()) doc["right"] = a.right;
    if (a.what != "expectation") doc["order"] = a.order;
    doc["spec"] = p.echo;

    auto require_arity = [&](const std::vector<std::string>& names, std::size_t lo, std::size_t hi,
                             const std::string& flag) {
        if (names.size() < lo || names.size() > hi)
            throw gfp::ParseError("compute --what " + a.what + " needs " + std::to_string(lo) +
                                  (hi == lo ? "" : ".." + std::to_string(hi)) + " " + flag + " option(s)");
    };

    OrderedJson results;
    if (a.what == "expectation") {
        require_arity(a.vars, 1, 1, "--var");
        results = gfp::render_diagonal(*p.ctx, gfp::expectation(p.variable(a.vars[0])));
    } else if (a.what == "moments" || a.what == "cumulants") {
        require_arity(a.vars, 1, 1, "--var");
        if (a.order < 1) throw gfp::ParseError("--order must be positive");
        const auto& x = p.variable(a.vars[0]);
        for (int n = 1; n <= a.order; ++n) {
            auto d = a.what == "moments"
                         ? gfp::g_moment(x, n)
                         : gfp::g_cumulant(std::vector<gfp::GRandomVariable>(static_cast<std::size_t>(n), x));
            results[std::to_string(n)] = gfp::render_diagonal(*p.ctx, d);
        }
    } else if (a.what == "mseries" || a.what == "rseries") {
        require_arity(a.vars, 1, 8, "--var");
        if (a.order < 1) throw gfp::ParseError("--order must be positive");
        auto xs = pick_vars(p, a.vars);
        auto series = a.what == "mseries" ? gfp::moment_series(xs, a.order) : gfp::r_series(xs, a.order);
        results = gfp::render_series(series);
    } else if (a.what == "boxed") {
        require_arity(a.left, 1, 8, "--left");
        if (a.left.size() != a.right.size())
            throw gfp::ParseError("boxed needs equally many --left and --right variables");
        if (a.order < 1) throw gfp::ParseError("--order must be positive");
        auto rx = gfp::r_series(pick_vars(p, a.left), a.order);
        auto ry = gfp::r_series(pick_vars(p, a.right), a.order);
        results = gfp::render_series(gfp::boxed_g(rx, ry));
    } else {
        throw gfp::ParseError("unknown compute target \"" + a.what + "\"");
    }
    doc["results"] = std::move(results);
    emit(doc);
    return 0;
}

int run_check(const ComputeArgs& a) {
    auto p = gfp::load_problem_file(a.spec_file);
    OrderedJson doc;
    doc["command"] = "check";
    doc["what"] = a.what;
    doc["vars"] = a.vars;
    doc["order"] = a.order;
    doc["spec"] = p.echo;
    if (a.order < 1) throw gfp::ParseError("--order must be positive");

    auto require_arity = [&](std::size_t want) {
        if (a.vars.size() != want)
            throw gfp::ParseError("check --what " + a.what + " needs exactly " + std::to_string(want) +
                                  " --var option(s)");
    };

    OrderedJson results;
    bool holds = false;
    if (a.what == "gfree") {
        require_arity(2);
        auto res = gfp::are_g_free_numerical(p.variable(a.vars[0]), p.variable(a.vars[1]), a.order);
        holds = res.free;
        results["verdict"] = holds ? "free" : "not-free";
        if (res.witness) results["witness"] = gfp::render_witness(*res.witness, a.vars[0], a.vars[1]);
    } else if (a.what == "semicircular") {
        require_arity(1);
        holds = gfp::is_g_semicircular(p.variable(a.vars[0]), a.order);
        results["verdict"] = holds ? "semicircular" : "not-semicircular";
    } else if (a.what == "circular") {
        require_arity(2);
        auto v = gfp::is_g_circular(p.variable(a.vars[0]), p.variable(a.vars[1]), a.order);
        holds = v.circular;
        switch (v.kind) {
            case gfp::CircularKind::w_circular: results["verdict"] = "w-circular"; break;
            case gfp::CircularKind::disjoint_circular: results["verdict"] = "disjoint-circular"; break;
            case gfp::CircularKind::general: results["verdict"] = "circular"; break;
            case gfp::CircularKind::none: results["verdict"] = "not-circular"; break;
        }
    } else if (a.what == "rdiagonal") {
        require_arity(1);
        holds = gfp::is_g_r_diagonal(p.variable(a.vars[0]), a.order);
        results["verdict"] = holds ? "r-diagonal" : "not-r-diagonal";
    } else {
        throw gfp::ParseError("unknown check target \"" + a.what + "\"");
    }
    doc["results"] = std::move(results);
    emit(doc);
    return holds ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact graph free probability engine"};
    app.require_subcommand(1);

    NcArgs nc_args;
    auto* nc = app.add_subcommand("nc", "noncrossing partition lattice utilities");
    nc->require_subcommand(1);
    auto* nc_enum = nc->add_subcommand("enumerate", "list NC(n) in canonical order");
    nc_enum->add_option("--n", nc_args.n)->required();
    nc_enum->add_flag("--count-only", nc_args.count_only);
    auto* nc_moeb = nc->add_subcommand("moebius", "Moebius function of an interval");
    nc_moeb->add_option("--n", nc_args.n)->required();
    nc_moeb->add_option("--from", nc_args.from, "\"bottom\", \"top\" or a partition like \"1,2|3\"")->required();
    nc_moeb->add_option("--to", nc_args.to)->required();
    auto* nc_krew = nc->add_subcommand("kreweras", "Kreweras complement");
    nc_krew->add_option("--n", nc_args.n)->required();
    nc_krew->add_option("--pi", nc_args.pi)->required();
    auto* nc_alt = nc->add_subcommand("altunion", "alternating union on 2n points");
    nc_alt->add_option("--n", nc_args.n)->required();
    nc_alt->add_option("--pi", nc_args.pi)->required();
    nc_alt->add_option("--theta", nc_args.theta, "defaults to the Kreweras complement of --pi");

    GraphArgs graph_args;
    auto* graph = app.add_subcommand("graph", "inspect the free semigroupoid of a problem file");
    graph->add_option("--spec", graph_args.spec_file)->required();
    graph->add_option("--disjoint", graph_args.disjoint, "two words as comma-separated vertex lists")
        ->expected(2);

    ComputeArgs compute_args;
    auto* compute = app.add_subcommand("compute", "evaluate moments, cumulants and series");
    compute->add_option("--spec", compute_args.spec_file)->required();
    compute->add_option("--what", compute_args.what,
                        "expectation|moments|cumulants|mseries|rseries|boxed")->required();
    compute->add_option("--order", compute_args.order);
    compute->add_option("--var", compute_args.vars);
    compute->add_option("--left", compute_args.left);
    compute->add_option("--right", compute_args.right);

    ComputeArgs check_args;
    auto* check = app.add_subcommand("check", "freeness and distribution recognizers");
    check->add_option("--spec", check_args.spec_file)->required();
    check->add_option("--what", check_args.what, "gfree|semicircular|circular|rdiagonal")->required();
    check->add_option("--order", check_args.order)->required();
    check->add_option("--var", check_args.vars);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (nc_enum->parsed()) return run_nc_enumerate(nc_args);
        if (nc_moeb->parsed()) return run_nc_moebius(nc_args);
        if (nc_krew->parsed()) return run_nc_kreweras(nc_args);
        if (nc_alt->parsed()) return run_nc_altunion(nc_args);
        if (graph->parsed()) return run_graph(graph_args);
        if (compute->parsed()) return run_compute(compute_args);
        if (check->parsed()) return run_check(check_args);
    } catch (const gfp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
