#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mchom/ce.hpp"
#include "mchom/homotopy.hpp"
#include "mchom/linf.hpp"

namespace mchom {

// A gauge-certified 1-simplex: a polynomial Maurer-Cartan path with constant
// (or polynomial) degree 0 part, revalidated through mc_residual_path.
struct MCPath {
    GPath path;
    SparseVec start, end;
};

inline MCPath certify_path(const LInfinityAlgebra& g, GPath path) {
    if (!mc_residual_path(g, path).is_zero())
        throw Error("certify_path: path violates the Maurer-Cartan equation");
    MCPath p;
    p.start = path.x_at(Scalar(0));
    p.end = path.x_at(Scalar(1));
    p.path = std::move(path);
    return p;
}

namespace detail {

// Right-nested bracket [w_0, [w_1, [..., w_{m-1}]...]] of a word in {x, y}.
inline SparseVec dynkin_bracket(const LInfinityAlgebra& g, const std::vector<const SparseVec*>& word) {
    SparseVec acc = *word.back();
    for (std::size_t i = word.size() - 1; i-- > 0;) acc = g.dgla_bracket(*word[i], acc);
    return acc;
}

}  // namespace detail

// Exact truncated Baker-Campbell-Hausdorff product on the nilpotent degree 0
// part, by the Dynkin series
//   sum_{n>=1} (-1)^{n-1}/n sum [x^{p_1} y^{q_1} ... ] / (m prod p_i! q_i!),
// truncated at word length m < nilpotency bound of degree 0.
inline SparseVec bch(const LInfinityAlgebra& g, const SparseVec& xi, const SparseVec& eta) {
    for (const auto* v : {&xi, &eta})
        for (const auto& [i, c] : *v)
            if (g.degree_of(i) != 0) throw Error("bch: arguments must lie in degree 0");
    const auto bound = nilpotency_bound(g, 0);
    if (!bound) throw Error("bch: degree 0 part is not nilpotent");
    const int max_len = *bound - 1;

    SparseVec out;
    // blocks: sequence of (p_i, q_i) with p_i + q_i >= 1
    std::vector<std::pair<int, int>> blocks;
    std::function<void(int)> rec = [&](int used) {
        if (!blocks.empty()) {
            const int n = static_cast<int>(blocks.size());
            const int m = used;
            if (blocks.back().first + blocks.back().second >= 1) {
                Scalar denom = Scalar(n) * Scalar(m);
                for (const auto& [p, q] : blocks)
                    denom *= factorial(static_cast<unsigned>(p)) * factorial(static_cast<unsigned>(q));
                Scalar coef = Scalar((n - 1) % 2 == 0 ? 1 : -1) / denom;
                std::vector<const SparseVec*> word;
                for (const auto& [p, q] : blocks) {
                    for (int a = 0; a < p; ++a) word.push_back(&xi);
                    for (int a = 0; a < q; ++a) word.push_back(&eta);
                }
                sparse_add(out, detail::dynkin_bracket(g, word), coef);
            }
        }
        if (used >= max_len) return;
        for (int p = 0; p + used <= max_len; ++p)
            for (int q = (p == 0 ? 1 : 0); p + q + used <= max_len; ++q) {
                blocks.push_back({p, q});
                rec(used + p + q);
                blocks.pop_back();
            }
    };
    rec(0);
    return out;
}

// Flow of a constant degree 0 element xi through the Maurer-Cartan moduli:
// the unique polynomial solution of the dt component of the MC equation in
// g (x) Lambda(t,dt),  x'(t) = l_1(xi) + l_2(xi, x(t)),  with x(0) = x.
// The output carries a zero-residual certificate.
inline MCPath gauge_flow(const LInfinityAlgebra& g, const SparseVec& xi, const SparseVec& x) {
    if (!g.is_dgla()) throw Error("gauge_flow: structure maps of arity >= 3 present");
    for (const auto& [i, c] : xi)
        if (g.degree_of(i) != 0) throw Error("gauge_flow: xi must lie in degree 0");
    for (const auto& [i, c] : x)
        if (g.degree_of(i) != -1) throw Error("gauge_flow: x must lie in degree -1");
    const auto b0 = nilpotency_bound(g, 0), b1 = nilpotency_bound(g, -1), b2 = nilpotency_bound(g, -2);
    if (!b0 || !b1 || !b2)
        throw Error("gauge_flow: lower central series unbounded in degrees 0, -1 or -2");

    std::map<int, Poly> coeffs;  // x_k per basis index
    for (const auto& [i, c] : x) coeffs[i] = Poly{c};
    SparseVec xk = x;
    for (int k = 0;; ++k) {
        SparseVec rhs = g.eval_multi(2, {xi, xk});
        if (k == 0) sparse_add(rhs, g.eval_multi(1, {xi}));
        if (rhs.empty()) break;
        SparseVec next;
        for (const auto& [i, c] : rhs) next[i] = c / Scalar(k + 1);
        for (const auto& [i, c] : next) {
            auto& p = coeffs[i];
            p.resize(static_cast<std::size_t>(k + 2), Scalar(0));
            p[static_cast<std::size_t>(k + 1)] = c;
        }
        xk = next;
        if (k > *b1 + 2) throw Error("gauge_flow: flow fails to terminate (internal error)");
    }
    GPath path;
    for (auto& [i, p] : coeffs) {
        poly_trim(p);
        if (!poly_is_zero(p)) path.x[i] = p;
    }
    for (const auto& [i, c] : xi) path.xi[i] = Poly{c};
    auto certified = certify_path(g, std::move(path));
    if (!mc_residual(g, certified.start).empty() || !mc_residual(g, certified.end).empty())
        throw Error("gauge_flow: endpoint fails the MC equation (internal error)");
    return certified;
}

inline SparseVec gauge_act(const LInfinityAlgebra& g, const SparseVec& xi, const SparseVec& x) {
    return gauge_flow(g, xi, x).end;
}

// The identification g_0 ~ G_S(C^*(g), k): a degree 0 element xi maps to the
// degree -1 functional with value ce_pairing() * xi_e on the dual of s e.
inline GSElement<GroundField> gs_from_g0(const CEPresentation& ce, const SparseVec& xi) {
    GSElement<GroundField> b;
    b.map.assign(static_cast<std::size_t>(ce.algebra->num_generators()), ground().zero());
    for (const auto& [e, c] : xi) {
        if (ce.g->degree_of(e) != 0) throw Error("gs_from_g0: vector not in degree 0");
        b.map[static_cast<std::size_t>(ce.gen_of_basis(e))] = ground().unit(ce_pairing() * c);
    }
    return b;
}

inline SparseVec g0_from_gs(const CEPresentation& ce, const GSElement<GroundField>& b) {
    SparseVec xi;
    for (int e = 0; e < ce.g->dim(); ++e) {
        if (ce.g->degree_of(e) != 0) continue;
        const Scalar c = b.map[static_cast<std::size_t>(ce.gen_of_basis(e))].value / ce_pairing();
        if (c != 0) xi[e] = c;
    }
    return xi;
}

// Additive witness of a certified path: the chain path -> homotopy ->
// theta_inverse -> gs_collapse.  The witness is verified against the path
// endpoints through gs_act before it is returned.
inline GSElement<GroundField> additive_witness_from_path(const CEPresentation& ce, const MCPath& p) {
    const auto h = path_to_homotopy(ce, p.path);
    auto [gl, phi0] = theta_inverse(*ce.algebra, ground_interval(), h);
    GSElement<GroundField> b = gs_collapse(*ce.algebra, ground(), gl);
    const auto phi_start = mc_to_morphism(ce, p.start);
    const auto phi_end = mc_to_morphism(ce, p.end);
    const auto acted = gs_act(*ce.algebra, ce.order, ground_interval(), phi_start, b);
    if (!(acted == phi_end))
        throw Error("additive_witness_from_path: witness verification failed (internal error)");
    return b;
}

inline GSElement<GroundField> gauge_to_additive(const LInfinityAlgebra& g, const CEPresentation& ce,
                                                const SparseVec& xi, const SparseVec& x) {
    return additive_witness_from_path(ce, gauge_flow(g, xi, x));
}

struct OrbitReport {
    struct GaugeEntry {
        SparseVec x, xi, result;
        SparseVec witness_g0;  // additive witness, in g_0 coordinates
    };
    struct AdditiveEntry {
        SparseVec x, xi, result;
    };
    std::vector<GaugeEntry> gauge_entries;
    std::vector<AdditiveEntry> additive_entries;
};

// Checks, with witnesses, that every sampled gauge motion is reproduced by
// the additive action, and records the additive orbit of every sampled
// degree 0 element.  Witness verification failures are hard errors.
inline OrbitReport orbit_compare(const LInfinityAlgebra& g, const CEPresentation& ce,
                                 const std::vector<SparseVec>& xs,
                                 const std::vector<SparseVec>& gauge_samples,
                                 const std::vector<SparseVec>& additive_samples) {
    OrbitReport report;
    for (const auto& x : xs) {
        if (!mc_residual(g, x).empty()) throw Error("orbit_compare: sample point is not Maurer-Cartan");
        for (const auto& xi : gauge_samples) {
            OrbitReport::GaugeEntry e;
            e.x = x;
            e.xi = xi;
            e.result = gauge_act(g, xi, x);
            e.witness_g0 = g0_from_gs(ce, gauge_to_additive(g, ce, xi, x));
            report.gauge_entries.push_back(std::move(e));
        }
        for (const auto& xi : additive_samples) {
            OrbitReport::AdditiveEntry e;
            e.x = x;
            e.xi = xi;
            const auto psi = gs_act(*ce.algebra, ce.order, ground_interval(),
                                    mc_to_morphism(ce, x), gs_from_g0(ce, xi));
            e.result = morphism_to_mc(ce, psi);
            report.additive_entries.push_back(std::move(e));
        }
    }
    return report;
}

}  // namespace mchom
