// Command line interface: fixture validation, dual-construction reports,
// Maurer-Cartan checks, the additive and gauge actions, orbit comparison,
// and the built-in acceptance suite.
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mchom/acceptance.hpp"
#include "mchom/ce.hpp"
#include "mchom/fixture.hpp"
#include "mchom/fixtures.hpp"
#include "mchom/gauge.hpp"
#include "mchom/homotopy.hpp"

namespace {

using namespace mchom;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// A fixture argument is a file path or the name of a built-in fixture.
std::string fixture_text(const std::string& arg) {
    if (std::ifstream probe(arg); probe) return slurp(arg);
    auto it = fixtures::registry().find(arg);
    if (it != fixtures::registry().end()) return it->second;
    throw ParseError("no such fixture file or built-in fixture: '" + arg + "'");
}

// "(a,b,...)" over the basis slice of the given degree, in basis order.
SparseVec parse_slice_vector(const LInfinityAlgebra& g, std::string text, int degree) {
    if (text.size() >= 2 && text.front() == '(' && text.back() == ')')
        text = text.substr(1, text.size() - 2);
    std::vector<Scalar> coords;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        coords.push_back(parse_scalar(item));
    }
    const auto slice = g.basis().indices_of_degree(degree);
    if (coords.size() != slice.size())
        throw ParseError("expected " + std::to_string(slice.size()) +
                         " coordinates for the degree " + std::to_string(degree) + " slice");
    SparseVec v;
    for (std::size_t i = 0; i < slice.size(); ++i)
        if (coords[i] != 0) v[slice[i]] = coords[i];
    return v;
}

std::string slice_vector_str(const LInfinityAlgebra& g, const SparseVec& v, int degree) {
    std::string out = "(";
    bool first = true;
    for (int i : g.basis().indices_of_degree(degree)) {
        if (!first) out += ",";
        first = false;
        out += scalar_str(v.count(i) ? v.at(i) : Scalar(0));
    }
    return out + ")";
}

int cmd_check(const std::string& fixture) {
    auto g = load_algebra(fixture_text(fixture));
    std::cout << "fixture valid: " << g.dim() << " basis elements, arity cap " << g.arity_cap()
              << (g.is_dgla() ? ", dg Lie algebra" : "") << "\n";
    const auto f = lower_central_series(g);
    std::cout << "lower central series dims:";
    for (int k = 1; k <= f.chain_length(); ++k) std::cout << " " << f.at(k).dim();
    std::cout << "\n";
    std::map<int, char> degrees;
    for (int i = 0; i < g.dim(); ++i) degrees[g.degree_of(i)] = 1;
    for (const auto& [d, unused] : degrees) {
        (void)unused;
        const auto bound = nilpotency_bound(g, f, d);
        std::cout << "degree " << d << ": nilpotency bound "
                  << (bound ? std::to_string(*bound) : std::string("unbounded")) << "\n";
    }
    return 0;
}

int cmd_ce(const std::string& fixture) {
    auto g = load_algebra(fixture_text(fixture));
    auto ce = chevalley_eilenberg(g);
    const FreeCDGA& A = *ce.algebra;
    std::cout << "dual construction on " << A.num_generators() << " generators\n";
    for (int i = 0; i < A.num_generators(); ++i)
        std::cout << "  " << A.symbol_of(i) << "  degree " << A.degree_of(i) << "  stage "
                  << ce.order.stage[static_cast<std::size_t>(i)] << "  d -> "
                  << A.str(A.differential_of(i)) << "\n";
    std::cout << "filtration vanishes at F^" << ce.filtration.vanishing_index << "\n";
    return 0;
}

int cmd_mc_verify(const std::string& fixture, const std::string& vec) {
    auto g = load_algebra(fixture_text(fixture));
    const SparseVec x = parse_slice_vector(g, vec, -1);
    const SparseVec r = mc_residual(g, x);
    std::cout << "residual: " << g.str(r) << "\n";
    return r.empty() ? 0 : 1;
}

int cmd_act(const std::string& fixture, const std::string& mc_vec, const std::string& g0_vec) {
    auto g = load_algebra(fixture_text(fixture));
    auto ce = chevalley_eilenberg(g);
    const SparseVec x = parse_slice_vector(g, mc_vec, -1);
    const SparseVec xi = parse_slice_vector(g, g0_vec, 0);
    const auto phi = mc_to_morphism(ce, x);
    const auto psi = gs_act(*ce.algebra, ce.order, ground_interval(), phi, gs_from_g0(ce, xi));
    const SparseVec y = morphism_to_mc(ce, psi);
    std::cout << slice_vector_str(g, y, -1) << "\n";
    return 0;
}

int cmd_gauge(const std::string& fixture, const std::string& mc_vec, const std::string& g0_vec) {
    auto g = load_algebra(fixture_text(fixture));
    auto ce = chevalley_eilenberg(g);
    const SparseVec x = parse_slice_vector(g, mc_vec, -1);
    const SparseVec xi = parse_slice_vector(g, g0_vec, 0);
    const SparseVec y = gauge_act(g, xi, x);
    const auto witness = gauge_to_additive(g, ce, xi, x);
    std::cout << "gauge endpoint: " << slice_vector_str(g, y, -1) << "\n";
    std::cout << "additive witness (degree 0 coordinates): "
              << slice_vector_str(g, g0_from_gs(ce, witness), 0) << "\n";
    std::cout << "witness verified: yes\n";
    return 0;
}

int cmd_orbit(const std::string& fixture, int samples, std::uint64_t seed) {
    auto g = load_algebra(fixture_text(fixture));
    auto ce = chevalley_eilenberg(g);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    auto rand_vec = [&](int degree) {
        SparseVec v;
        for (int i : g.basis().indices_of_degree(degree))
            if (int n = num(rng)) v[i] = Scalar(n, den(rng));
        return v;
    };
    std::vector<SparseVec> xs, gauge_samples, additive_samples;
    for (int i = 0; i < samples; ++i) {
        SparseVec x = rand_vec(-1);
        if (!mc_residual(g, x).empty()) x.clear();
        xs.push_back(x);
        gauge_samples.push_back(rand_vec(0));
        additive_samples.push_back(rand_vec(0));
    }
    const auto report = orbit_compare(g, ce, xs, gauge_samples, additive_samples);
    for (const auto& e : report.gauge_entries)
        std::cout << "gauge    " << slice_vector_str(g, e.x, -1) << " . "
                  << slice_vector_str(g, e.xi, 0) << " -> " << slice_vector_str(g, e.result, -1)
                  << "  witness " << slice_vector_str(g, e.witness_g0, 0) << " verified\n";
    for (const auto& e : report.additive_entries)
        std::cout << "additive " << slice_vector_str(g, e.x, -1) << " . "
                  << slice_vector_str(g, e.xi, 0) << " -> " << slice_vector_str(g, e.result, -1)
                  << "\n";
    std::cout << report.gauge_entries.size() << " gauge motions reproduced additively, "
              << report.additive_entries.size() << " additive motions recorded\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact homotopy machinery for Sullivan algebras and Maurer-Cartan moduli"};
    app.require_subcommand(1);

    std::string fixture, mc_vec, g0_vec;
    int samples = 5;
    std::uint64_t seed = 1;

    auto* check = app.add_subcommand("check", "validate a fixture and report nilpotency");
    check->add_option("fixture", fixture)->required();

    auto* ce = app.add_subcommand("ce", "print the dual construction and Sullivan stages");
    ce->add_option("fixture", fixture)->required();

    auto* mc = app.add_subcommand("mc", "Maurer-Cartan checks");
    auto* verify = mc->add_subcommand("verify", "evaluate the MC residual of a vector");
    verify->add_option("fixture", fixture)->required();
    verify->add_option("vector", mc_vec)->required();
    mc->require_subcommand(1);

    auto* act = app.add_subcommand("act", "additive action through the full homotopy pipeline");
    act->add_option("fixture", fixture)->required();
    act->add_option("mc-vector", mc_vec)->required();
    act->add_option("g0-vector", g0_vec)->required();

    auto* gauge = app.add_subcommand("gauge", "gauge action plus its additive witness");
    gauge->add_option("fixture", fixture)->required();
    gauge->add_option("mc-vector", mc_vec)->required();
    gauge->add_option("g0-vector", g0_vec)->required();

    auto* orbit = app.add_subcommand("orbit", "compare gauge and additive orbits on samples");
    orbit->add_option("fixture", fixture)->required();
    orbit->add_option("--samples", samples)->default_val(5);
    orbit->add_option("--seed", seed)->default_val(1);

    app.add_subcommand("selftest", "run the full acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) return cmd_check(fixture);
        if (ce->parsed()) return cmd_ce(fixture);
        if (mc->parsed()) return cmd_mc_verify(fixture, mc_vec);
        if (act->parsed()) return cmd_act(fixture, mc_vec, g0_vec);
        if (gauge->parsed()) return cmd_gauge(fixture, mc_vec, g0_vec);
        if (orbit->parsed()) return cmd_orbit(fixture, samples, seed);
        return mchom::acceptance::run_all(std::cout) ? 0 : 1;
    } catch (const mchom::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const mchom::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
