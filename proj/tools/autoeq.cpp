#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "autoeq/autoeq.hpp"

using namespace autoeq;
using nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, usage = 1, unknown = 2 };

struct Options {
    std::size_t max_seqs = Limits{}.max_seqs;
    std::size_t max_pairs = Limits{}.max_pairs;
    double timeout_secs = Limits{}.timeout_secs;
    std::uint64_t seed = 0;
    bool json = false;
    bool comm = false;
    bool heuristic = false;
    std::string expr, lhs, rhs, aut, order = "degrevlex", file = "-";

    Limits limits() const { return Limits{max_seqs, max_pairs, timeout_secs}; }
};

ordered_json certificate_json(const Certificate& c) {
    ordered_json j;
    j["result"] = verdict_name(c.verdict);
    j["witness"] = c.witness ? ordered_json(c.witness->to_string()) : ordered_json(nullptr);
    j["lambda"] = c.lambda ? ordered_json(to_string(*c.lambda)) : ordered_json(nullptr);
    j["ideal"] = c.ideal ? ordered_json(c.ideal->to_text()) : ordered_json(nullptr);
    j["trace"] = c.trace;
    return j;
}

int emit_certificate(const Certificate& c, const Options& o) {
    if (o.json)
        std::cout << certificate_json(c).dump(2) << "\n";
    else
        std::cout << c.to_text();
    return c.verdict == Verdict::unknown ? unknown : ok;
}

int emit_value(const std::string& value, const Options& o) {
    if (o.json)
        std::cout << ordered_json{{"result", value}}.dump(2) << "\n";
    else
        std::cout << value << "\n";
    return ok;
}

std::string read_input(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path);
    if (!in) throw error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

MonomialOrder order_of(const std::string& name) {
    if (name == "lex") return MonomialOrder::lex();
    if (name == "degrevlex") return MonomialOrder::degrevlex();
    throw error("unknown order " + name);
}

int cmd_normal_form(const Options& o) { return emit_value(to_comm_basis(parse_free(o.expr)).to_string(), o); }

int cmd_project(const Options& o) { return emit_value(to_string(quotient_project(parse_free(o.expr))), o); }

int cmd_degrees(const Options& o) {
    FreePoly u = parse_free(o.expr);
    if (quotient_project(u).is_zero()) throw error("element lies in V; quotient degrees undefined");
    QuotientDegrees d = quotient_degrees(u);
    if (o.json) {
        std::cout << ordered_json{{"qdeg", d.qdeg}, {"qdeg_x", d.qdeg_x}, {"qdeg_y", d.qdeg_y}, {"biased", d.q_biased}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "qdeg: " << d.qdeg << "\nqdeg_x: " << d.qdeg_x << "\nqdeg_y: " << d.qdeg_y
                  << "\nbiased: " << (d.q_biased ? "yes" : "no") << "\n";
    }
    return ok;
}

int cmd_apply(const Options& o) {
    AutWord phi = parse_aut(o.aut);
    if (o.comm) return emit_value(apply(phi, parse_comm(o.expr)).to_string(), o);
    return emit_value(to_string(apply(phi, parse_free(o.expr))), o);
}

int cmd_simplify(const Options& o) { return emit_value(to_simplified(parse_aut(o.aut)).to_word().to_string(), o); }

int cmd_theta(const Options& o) { return emit_value(to_string(theta(parse_aut(o.aut))), o); }

int cmd_equiv(const Options& o) { return emit_certificate(equiv_decide(parse_free(o.lhs), parse_free(o.rhs), o.limits()), o); }

int cmd_semiinv(const Options& o) { return emit_certificate(semiinv_decide(parse_free(o.expr), o.limits()), o); }

int cmd_comm_equiv(const Options& o) {
    return emit_certificate(comm_equiv_decide(parse_comm(o.lhs), parse_comm(o.rhs), o.limits()), o);
}

int cmd_comm_semiinv(const Options& o) {
    CommPoly u = parse_comm(o.expr);
    if (o.heuristic) {
        HeuristicReport r = comm_semiinv_heuristic(u);
        if (o.json)
            std::cout << ordered_json{{"gcd", r.gcd.to_string()}, {"single_variable", r.single_variable}, {"positive", r.positive}}
                             .dump(2)
                      << "\n";
        else
            std::cout << r.to_text();
        return ok;
    }
    return emit_certificate(comm_semiinv_decide(u, o.limits()), o);
}

int cmd_groebner(const Options& o) {
    AlgebraicSystem sys = parse_system(read_input(o.file));
    Budget budget = Budget::with_timeout(o.timeout_secs, o.max_pairs);
    GroebnerBasis gb = buchberger(sys.equations, order_of(o.order), sys.vars, &budget);
    if (o.json) {
        ordered_json basis = ordered_json::array();
        for (const auto& g : gb.generators) basis.push_back(g.to_string());
        std::cout << ordered_json{{"vars", *gb.vars}, {"basis", basis}, {"trivial", ideal_is_trivial(gb)}}.dump(2) << "\n";
    } else {
        AlgebraicSystem out{gb.vars, gb.generators, std::nullopt};
        std::cout << out.to_text();
    }
    return ok;
}

int cmd_solve(const Options& o) {
    AlgebraicSystem sys = parse_system(read_input(o.file));
    Budget budget = Budget::with_timeout(o.timeout_secs, o.max_pairs);
    bool closure = solvable(sys, MonomialOrder::degrevlex(), &budget);
    std::optional<std::vector<Scalar>> point;
    if (closure) point = rational_point(sys, &budget);
    std::vector<std::pair<std::string, std::string>> assignment;
    if (point)
        for (std::size_t i = 0; i < sys.vars->size(); ++i) assignment.emplace_back((*sys.vars)[i], to_string((*point)[i]));
    if (o.json) {
        ordered_json p = nullptr;
        if (point) {
            p = ordered_json::object();
            for (const auto& [k, v] : assignment) p[k] = v;
        }
        std::cout << ordered_json{{"solvable", closure}, {"point", p}}.dump(2) << "\n";
    } else {
        std::cout << "SOLVABLE: " << (closure ? "yes" : "no") << "\n";
        if (closure) {
            std::cout << "POINT:";
            if (!point) std::cout << " none found";
            for (const auto& [k, v] : assignment) std::cout << " " << k << "=" << v;
            std::cout << "\n";
        }
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Automorphic equivalence and semiinvariants in two variables"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--max-seqs", o.max_seqs, "Maximum number of degree sequences examined");
    app.add_option("--max-pairs", o.max_pairs, "Maximum number of pair reductions");
    app.add_option("--timeout-secs", o.timeout_secs, "Wall-clock limit in seconds");
    app.add_option("--seed", o.seed, "Seed for randomized choices");
    app.add_flag("--json", o.json, "Structured output");

    int (*handler)(const Options&) = nullptr;
    auto sub = [&](const char* name, const char* help, int (*fn)(const Options&)) {
        CLI::App* s = app.add_subcommand(name, help);
        s->callback([&handler, fn] { handler = fn; });
        return s;
    };
    auto expr_arg = [&](CLI::App* s) { s->add_option("expr", o.expr, "Polynomial expression")->required(); };
    auto aut_arg = [&](CLI::App* s) { s->add_option("--aut", o.aut, "Automorphism literal")->required(); };
    auto pair_args = [&](CLI::App* s) {
        s->add_option("--lhs", o.lhs, "Left element")->required();
        s->add_option("--rhs", o.rhs, "Right element")->required();
    };

    expr_arg(sub("normal-form", "Basis form over the commutator powers", cmd_normal_form));
    expr_arg(sub("project", "Representative of the class modulo V", cmd_project));
    expr_arg(sub("degrees", "Quotient degrees and biasedness", cmd_degrees));
    CLI::App* ap = sub("apply", "Image of an element under an automorphism", cmd_apply);
    aut_arg(ap);
    expr_arg(ap);
    ap->add_flag("--comm", o.comm, "Commutative input");
    aut_arg(sub("simplify-aut", "Simplified alternating form", cmd_simplify));
    aut_arg(sub("theta", "Determinant of the linear part", cmd_theta));
    pair_args(sub("equiv", "Decide equivalence in the free algebra", cmd_equiv));
    expr_arg(sub("semiinv", "Decide semiinvariance in the free algebra", cmd_semiinv));
    pair_args(sub("comm-equiv", "Decide equivalence in the polynomial algebra", cmd_comm_equiv));
    CLI::App* cs = sub("comm-semiinv", "Decide semiinvariance in the polynomial algebra", cmd_comm_semiinv);
    expr_arg(cs);
    cs->add_flag("--heuristic", o.heuristic, "Report the partial-derivative test instead");
    CLI::App* gb = sub("groebner", "Reduced Groebner basis of a system", cmd_groebner);
    gb->add_option("file", o.file, "System file, - for standard input");
    gb->add_option("--order", o.order, "lex or degrevlex")->check(CLI::IsMember({"lex", "degrevlex"}));
    sub("solve-system", "Solvability and a rational point", cmd_solve)
        ->add_option("file", o.file, "System file, - for standard input");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }
    try {
        return handler(o);
    } catch (const budget_exceeded& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return unknown;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
}
