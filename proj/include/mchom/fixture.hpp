#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mchom/ce.hpp"
#include "mchom/linf.hpp"

namespace mchom {

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

// Line-oriented fixture text:
//   # comment
//   basis <symbol> <degree>
//   flag dgla
//   op <n> [<sym> ... <sym>] -> <coef>*<sym> + <coef>*<sym> ...
// Coefficients are "p" or "p/q".  Unspecified brackets are zero; permuted
// keys are inferred by graded (anti)symmetry and never stored twice.  With
// the dgla flag the op lines are read in antisymmetric bracket notation and
// converted to the symmetric storage with the standard suspension signs.
struct Fixture {
    struct Op {
        int arity = 0;
        std::vector<int> key;  // sorted basis indices
        SparseVec value;       // in the *input* notation, key-normalized
        int line = 0;
    };

    std::string name;
    std::vector<BasisEntry> basis;
    bool dgla = false;
    std::vector<Op> ops;
};

namespace detail {

inline int fixture_normalize_key(const Fixture& fx, std::vector<int>& key, int line) {
    std::vector<int> degs;
    for (int i : key) degs.push_back(fx.basis[static_cast<std::size_t>(i)].degree);
    int sign = 1;
    if (fx.dgla) {
        // wedge convention: adjacent transposition contributes -(-1)^{|a||b|}
        const std::size_t n = key.size();
        for (std::size_t a = 0; a + 1 < n; ++a)
            for (std::size_t b = 0; b + 1 < n - a; ++b)
                if (key[b] > key[b + 1]) {
                    sign = -sign;
                    if (parity(degs[b]) == 1 && parity(degs[b + 1]) == 1) sign = -sign;
                    std::swap(key[b], key[b + 1]);
                    std::swap(degs[b], degs[b + 1]);
                }
    } else {
        for (auto& d : degs) d += 1;  // suspended degrees
        sign = koszul_sort_with_degrees(key, degs);
    }
    for (std::size_t a = 0; a + 1 < key.size(); ++a)
        if (key[a] == key[a + 1] &&
            parity(fx.basis[static_cast<std::size_t>(key[a])].degree) == 0)
            throw ParseError("line " + std::to_string(line) +
                             ": repeated even-degree input forces this bracket to vanish");
    return sign;
}

}  // namespace detail

inline Fixture parse_fixture(const std::string& text) {
    Fixture fx;
    std::map<std::string, int> index;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool ops_started = false;
    auto fail = [&](const std::string& msg) -> void {
        throw ParseError("line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "basis") {
            if (ops_started) fail("basis lines must precede op lines");
            std::string sym;
            int deg;
            if (!(ls >> sym >> deg)) fail("expected 'basis <symbol> <degree>'");
            if (index.count(sym)) fail("duplicate basis symbol '" + sym + "'");
            index[sym] = static_cast<int>(fx.basis.size());
            fx.basis.push_back({sym, deg});
        } else if (word == "flag") {
            std::string flag;
            if (!(ls >> flag)) fail("expected 'flag <name>'");
            if (flag == "dgla")
                fx.dgla = true;
            else
                fail("unknown flag '" + flag + "'");
        } else if (word == "op") {
            ops_started = true;
            int arity;
            if (!(ls >> arity) || arity < 1) fail("expected 'op <n> [...] -> ...'");
            std::string tok;
            if (!(ls >> tok) || tok != "[") fail("expected '[' after the arity");
            std::vector<int> key;
            while (ls >> tok && tok != "]") {
                auto it = index.find(tok);
                if (it == index.end()) fail("unknown symbol '" + tok + "'");
                key.push_back(it->second);
            }
            if (tok != "]") fail("missing ']'");
            if (static_cast<int>(key.size()) != arity) fail("input count does not match the arity");
            if (!(ls >> tok) || tok != "->") fail("expected '->'");
            Fixture::Op op;
            op.arity = arity;
            op.line = lineno;
            bool expect_term = true;
            SparseVec value;
            while (ls >> tok) {
                if (tok == "+") {
                    if (expect_term) fail("misplaced '+'");
                    expect_term = true;
                    continue;
                }
                if (!expect_term) fail("expected '+' between terms");
                const auto star = tok.find('*');
                if (star == std::string::npos) fail("expected '<coef>*<symbol>' term");
                Scalar c;
                try {
                    c = parse_scalar(tok.substr(0, star));
                } catch (const Error& e) {
                    fail(e.what());
                }
                const std::string sym = tok.substr(star + 1);
                auto it = index.find(sym);
                if (it == index.end()) fail("unknown symbol '" + sym + "'");
                sparse_add(value, SparseVec{{it->second, c}});
                expect_term = false;
            }
            if (expect_term) fail("empty op value");
            const int sign = detail::fixture_normalize_key(fx, key, lineno);
            if (sign < 0)
                for (auto& [i, c] : value) c = -c;
            op.key = std::move(key);
            op.value = std::move(value);
            for (const auto& prev : fx.ops)
                if (prev.arity == op.arity && prev.key == op.key)
                    fail("duplicate op for this input multiset");
            fx.ops.push_back(std::move(op));
        } else {
            fail("unknown directive '" + word + "'");
        }
    }
    if (fx.basis.empty()) throw ParseError("fixture declares no basis");
    return fx;
}

inline std::string print_fixture(const Fixture& fx) {
    std::ostringstream out;
    for (const auto& e : fx.basis) out << "basis " << e.symbol << " " << e.degree << "\n";
    if (fx.dgla) out << "flag dgla\n";
    auto ops = fx.ops;
    std::sort(ops.begin(), ops.end(), [](const Fixture::Op& a, const Fixture::Op& b) {
        return std::tie(a.arity, a.key) < std::tie(b.arity, b.key);
    });
    for (const auto& op : ops) {
        out << "op " << op.arity << " [";
        for (int k : op.key) out << " " << fx.basis[static_cast<std::size_t>(k)].symbol;
        out << " ] ->";
        bool first = true;
        for (const auto& [i, c] : op.value) {
            out << (first ? " " : " + ") << scalar_str(c) << "*"
                << fx.basis[static_cast<std::size_t>(i)].symbol;
            first = false;
        }
        out << "\n";
    }
    return out.str();
}

// Builds the L-infinity algebra: symmetric storage, with dgla-notation
// brackets converted through l2(x1,x2) |-> (-1)^{|x1|+1} [x1,x2].
inline LInfinityAlgebra fixture_to_algebra(const Fixture& fx) {
    int cap = 2;
    for (const auto& op : fx.ops) cap = std::max(cap, op.arity);
    if (fx.dgla && cap > 2)
        throw ParseError("dgla fixtures admit only arities 1 and 2");
    LInfinityAlgebra g(GradedBasis(fx.basis, Convention::homological), cap);
    for (const auto& op : fx.ops) {
        SparseVec value = op.value;
        if (fx.dgla && op.arity == 2) {
            const int d1 = fx.basis[static_cast<std::size_t>(op.key[0])].degree;
            if (parity(d1 + 1) == 1)
                for (auto& [i, c] : value) c = -c;
        }
        try {
            g.add_op(op.arity, op.key, value);
        } catch (const Error& e) {
            throw ParseError("line " + std::to_string(op.line) + ": " + e.what());
        }
    }
    return g;
}

// Parse, build, and eagerly run the dual d^2 (generalized Jacobi) check.
inline LInfinityAlgebra load_algebra(const std::string& text) {
    const Fixture fx = parse_fixture(text);
    LInfinityAlgebra g = fixture_to_algebra(fx);
    ce_jacobi_check(g);
    return g;
}

}  // namespace mchom
