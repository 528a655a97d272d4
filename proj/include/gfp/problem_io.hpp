#pragma once

#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "gfp/gfps.hpp"
#include "gfp/rtransform.hpp"

namespace gfp {

// All documents use insertion-ordered JSON so that output is byte-stable.
using OrderedJson = nlohmann::ordered_json;

namespace io_detail {

inline void check_keys(const OrderedJson& obj, const std::set<std::string>& allowed,
                       const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + " must be a JSON object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) throw ParseError(where + " has unknown key \"" + key + "\"");
}

inline void require_keys(const OrderedJson& obj, const std::vector<std::string>& required,
                         const std::string& where) {
    for (const auto& key : required)
        if (!obj.contains(key)) throw ParseError(where + " is missing key \"" + key + "\"");
}

inline long long get_int(const OrderedJson& j, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError(where + " must be an integer");
    return j.get<long long>();
}

inline std::string get_string(const OrderedJson& j, const std::string& where) {
    if (!j.is_string()) throw ParseError(where + " must be a string");
    return j.get<std::string>();
}

inline Rational parse_rational_pair(const OrderedJson& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError(where + " must be a [numerator, denominator] pair");
    return make_rational(get_int(j[0], where + "[0]"), get_int(j[1], where + "[1]"));
}

// [num, den] or [[re_num, re_den], [im_num, im_den]] — rationals stay exact,
// never floats
inline GaussianRational parse_scalar(const OrderedJson& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) throw ParseError(where + " must be a 2-element array");
    if (j[0].is_array() || j[1].is_array())
        return {parse_rational_pair(j[0], where + " real part"),
                parse_rational_pair(j[1], where + " imaginary part")};
    return {parse_rational_pair(j, where)};
}

inline Letter parse_letter(const OrderedJson& j, const std::string& where,
                           const std::string& default_vertex) {
    check_keys(j, {"gen", "star", "vertex"}, where);
    require_keys(j, {"gen"}, where);
    Letter l;
    l.gen = get_string(j["gen"], where + ".gen");
    if (j.contains("star")) {
        if (!j["star"].is_boolean()) throw ParseError(where + ".star must be a boolean");
        l.starred = j["star"].get<bool>();
    }
    if (j.contains("vertex"))
        l.vertex = get_string(j["vertex"], where + ".vertex");
    else if (!default_vertex.empty())
        l.vertex = default_vertex;
    else
        throw ParseError(where + " needs an explicit \"vertex\"");
    return l;
}

}  // namespace io_detail

// A parsed problem file: the context, the named variables, and the original
// document (echoed into every result for reproducibility).
struct ProblemSpec {
    ContextPtr ctx;
    std::map<std::string, GRandomVariable> variables;
    OrderedJson echo;

    const GRandomVariable& variable(const std::string& name) const {
        auto it = variables.find(name);
        if (it == variables.end()) throw UnknownVariable("no variable named \"" + name + "\"");
        return it->second;
    }
};

inline ProblemSpec parse_problem(const OrderedJson& doc) {
    using namespace io_detail;
    check_keys(doc, {"graph", "semigroupoid", "order_cap", "nc_cap", "specs", "variables"}, "document");
    require_keys(doc, {"graph", "semigroupoid", "order_cap", "nc_cap", "specs", "variables"}, "document");

    const auto& jgraph = doc["graph"];
    check_keys(jgraph, {"vertices", "edges"}, "graph");
    require_keys(jgraph, {"vertices", "edges"}, "graph");
    std::vector<std::string> vertices;
    if (!jgraph["vertices"].is_array()) throw ParseError("graph.vertices must be an array");
    for (const auto& v : jgraph["vertices"]) vertices.push_back(get_string(v, "vertex id"));
    std::vector<std::pair<std::string, std::string>> edges;
    if (!jgraph["edges"].is_array()) throw ParseError("graph.edges must be an array");
    for (const auto& e : jgraph["edges"]) {
        if (!e.is_array() || e.size() != 2) throw ParseError("each edge must be a 2-element array");
        edges.emplace_back(get_string(e[0], "edge endpoint"), get_string(e[1], "edge endpoint"));
    }
    SimplicialGraph graph(vertices, edges);

    const auto& jsg = doc["semigroupoid"];
    check_keys(jsg, {"max_len", "mode"}, "semigroupoid");
    require_keys(jsg, {"max_len", "mode"}, "semigroupoid");
    int max_len = static_cast<int>(get_int(jsg["max_len"], "semigroupoid.max_len"));
    if (max_len < 0) throw ParseError("semigroupoid.max_len must be nonnegative");
    PathMode mode = parse_path_mode(get_string(jsg["mode"], "semigroupoid.mode"));

    int order_cap = static_cast<int>(get_int(doc["order_cap"], "order_cap"));
    int nc_cap = static_cast<int>(get_int(doc["nc_cap"], "nc_cap"));
    if (order_cap < 1) throw ParseError("order_cap must be positive");
    if (nc_cap < 1) throw ParseError("nc_cap must be positive");

    VertexSpecs specs;
    if (!doc["specs"].is_object()) throw ParseError("specs must be an object keyed by vertex");
    for (const auto& [vertex, jspec] : doc["specs"].items()) {
        check_keys(jspec, {"selfadjoint", "entries"}, "spec of vertex " + vertex);
        CumulantSpec spec(vertex, order_cap);
        if (jspec.contains("selfadjoint")) {
            if (!jspec["selfadjoint"].is_array()) throw ParseError("selfadjoint must be an array");
            for (const auto& g : jspec["selfadjoint"])
                spec.declare_self_adjoint(get_string(g, "selfadjoint entry"));
        }
        if (jspec.contains("entries")) {
            if (!jspec["entries"].is_array()) throw ParseError("entries must be an array");
            std::size_t index = 0;
            for (const auto& jentry : jspec["entries"]) {
                std::string where = "spec entry " + std::to_string(index++) + " at vertex " + vertex;
                check_keys(jentry, {"letters", "value"}, where);
                require_keys(jentry, {"letters", "value"}, where);
                if (!jentry["letters"].is_array()) throw ParseError(where + ".letters must be an array");
                Word tuple;
                for (const auto& jl : jentry["letters"]) tuple.push_back(parse_letter(jl, where, vertex));
                spec.set(std::move(tuple), parse_scalar(jentry["value"], where + ".value"));
            }
        }
        specs.emplace(vertex, std::move(spec));
    }

    ProblemSpec out;
    out.ctx = build_context(std::move(graph), std::move(specs), max_len, mode, order_cap, nc_cap);
    out.echo = doc;

    if (!doc["variables"].is_object()) throw ParseError("variables must be an object keyed by name");
    for (const auto& [name, jvar] : doc["variables"].items()) {
        check_keys(jvar, {"scalar", "components"}, "variable " + name);
        GRandomVariable x(out.ctx);
        if (jvar.contains("scalar")) x.set_scalar(parse_scalar(jvar["scalar"], name + ".scalar"));
        if (jvar.contains("components")) {
            if (!jvar["components"].is_array()) throw ParseError(name + ".components must be an array");
            for (const auto& jc : jvar["components"]) {
                std::string where = "component of variable " + name;
                check_keys(jc, {"word", "poly"}, where);
                require_keys(jc, {"word", "poly"}, where);
                if (!jc["word"].is_array()) throw ParseError(where + ".word must be an array");
                VertexSeq seq;
                for (const auto& v : jc["word"]) seq.push_back(get_string(v, where + " word vertex"));
                PathWord w = canonical_path(out.ctx->graph(), seq, out.ctx->mode());
                Polynomial poly;
                if (!jc["poly"].is_array()) throw ParseError(where + ".poly must be an array");
                for (const auto& jterm : jc["poly"]) {
                    check_keys(jterm, {"coeff", "letters"}, where + " term");
                    require_keys(jterm, {"coeff", "letters"}, where + " term");
                    auto coeff = io_detail::parse_scalar(jterm["coeff"], where + " coeff");
                    if (!jterm["letters"].is_array()) throw ParseError(where + ".letters must be an array");
                    Word word;
                    for (const auto& jl : jterm["letters"])
                        word.push_back(parse_letter(jl, where + " letter", ""));
                    if (word.empty())
                        poly += Polynomial::constant(coeff);
                    else
                        poly += Polynomial::word(std::move(word), coeff);
                }
                x.set_component(w, x.component(w) + poly);
            }
        }
        out.variables.emplace(name, std::move(x));
    }
    return out;
}

inline ProblemSpec load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open \"" + path + "\"");
    OrderedJson doc;
    try {
        doc = OrderedJson::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("JSON error in \"" + path + "\": " + e.what());
    }
    return parse_problem(doc);
}

// Dense table over the unit coordinate and the enumerated words, in the
// deterministic word order.
inline OrderedJson render_diagonal(const GraphContext& ctx, const DiagonalElement& d) {
    OrderedJson out;
    out["unit"] = to_string(d.unit());
    for (const auto& w : ctx.semigroupoid()) out[w.str()] = to_string(d.coord(w));
    return out;
}

// Series listing. Univariate coefficients are keyed by order so that the
// listing matches per-order cumulant/moment tables byte for byte; multivariate
// coefficients use the "(i1,...,in)" index-word syntax.
inline OrderedJson render_series(const GSeries& s) {
    OrderedJson out;
    for (int n = 1; n <= s.order_cap(); ++n) {
        IndexWord iw(static_cast<std::size_t>(n), 1);
        while (true) {
            std::string key = s.num_vars() == 1 ? std::to_string(n) : to_string(iw);
            out[key] = render_diagonal(*s.context(), s.coefficient(iw));
            int pos = n - 1;
            while (pos >= 0 && iw[static_cast<std::size_t>(pos)] == s.num_vars()) {
                iw[static_cast<std::size_t>(pos)] = 1;
                --pos;
            }
            if (pos < 0) break;
            ++iw[static_cast<std::size_t>(pos)];
        }
    }
    return out;
}

// "k3(x,y*,x)@[1,2]=5/2"
inline std::string render_witness(const GFreeWitness& w, const std::string& x_name,
                                  const std::string& y_name) {
    std::string out = "k" + std::to_string(w.pattern.size()) + "(";
    for (std::size_t i = 0; i < w.pattern.size(); ++i) {
        if (i) out += ",";
        switch (w.pattern[i]) {
            case 0: out += x_name; break;
            case 1: out += x_name + "*"; break;
            case 2: out += y_name; break;
            default: out += y_name + "*"; break;
        }
    }
    out += ")@" + w.coordinate + "=" + to_string(w.value);
    return out;
}

}  // namespace gfp
