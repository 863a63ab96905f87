#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mchom/cdga.hpp"
#include "mchom/interval.hpp"
#include "mchom/linalg.hpp"
#include "mchom/linf.hpp"

namespace mchom {

// Normalization of the Chevalley-Eilenberg differential.  The arity-n
// contribution carries rho^{n-1} with rho = -2, and Maurer-Cartan elements
// pair with dual generators through the scalar 1/rho = -1/2.  This is the
// unique geometric family of per-arity factors for which (i) the morphism
// conditions cut out exactly the Maurer-Cartan set under a single uniform
// pairing, and (ii) the one-generator quadratic example takes the monic
// form db = a^2 - a with morphism solution set {0, 1}.
inline const Scalar& ce_rho() {
    static const Scalar rho(-2);
    return rho;
}
inline const Scalar& ce_pairing() {
    static const Scalar r = Scalar(-1) / 2;
    return r;
}

inline const IntervalAlgebra<GroundField>& ground_interval() {
    static const IntervalAlgebra<GroundField> ia(&ground());
    return ia;
}

namespace detail {

// Dual suspended generator basis in the given order of g-basis indices.
inline GradedBasis ce_generator_basis(const LInfinityAlgebra& g, const std::vector<int>& order) {
    std::vector<BasisEntry> hom;
    for (int b : order) hom.push_back(g.basis().at(b));
    return dualize(suspend(GradedBasis(hom, Convention::homological)));
}

// Lambda((sg)^v) with d g^_w = -sum_n rho^{n-1} sum_M (1/prod mult!) A^w_M g^M,
// where A are the stored symmetric structure constants on sorted multisets
// and the monomial is multiplied out in key order (the product supplies the
// Koszul signs of reordering to canonical form).
inline std::unique_ptr<FreeCDGA> build_ce_algebra(const LInfinityAlgebra& g,
                                                  const std::vector<int>& order,
                                                  std::vector<int>* gen_to_basis_out) {
    auto algebra = std::make_unique<FreeCDGA>(ce_generator_basis(g, order));
    std::vector<int> basis_to_gen(static_cast<std::size_t>(g.dim()), -1);
    for (std::size_t i = 0; i < order.size(); ++i)
        basis_to_gen[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    std::vector<Element> diffs;
    for (int i = 0; i < g.dim(); ++i) diffs.push_back(algebra->zero());
    for (const auto& [n, table] : g.ops()) {
        for (const auto& [key, out] : table) {
            // multiplicity normalization of the sorted key
            Scalar mult_fact = 1;
            for (std::size_t a = 0; a < key.size();) {
                std::size_t b = a;
                while (b < key.size() && key[b] == key[a]) ++b;
                mult_fact *= factorial(static_cast<unsigned>(b - a));
                a = b;
            }
            Element mono = algebra->unit(Scalar(1));
            for (int b : key) mono = algebra->multiply(mono, algebra->gen(basis_to_gen[static_cast<std::size_t>(b)]));
            const Scalar factor = Scalar(-1) * scalar_pow(ce_rho(), static_cast<unsigned>(n - 1)) / mult_fact;
            for (const auto& [w, c] : out) {
                const int gen = basis_to_gen[static_cast<std::size_t>(w)];
                diffs[static_cast<std::size_t>(gen)] =
                    algebra->add(diffs[static_cast<std::size_t>(gen)], algebra->scale(mono, factor * c));
            }
        }
    }
    for (std::size_t i = 0; i < order.size(); ++i)
        algebra->set_differential(static_cast<int>(i), std::move(diffs[i]));
    if (gen_to_basis_out) *gen_to_basis_out = order;
    return algebra;
}

}  // namespace detail

// Builds the dual dg algebra in plain basis order and checks d^2 = 0 on all
// generators; this is the generalized-Jacobi validation of the structure
// constants and needs no nilpotency.  Throws naming the failing generator.
inline void ce_jacobi_check(const LInfinityAlgebra& g) {
    std::vector<int> order;
    for (int i = 0; i < g.dim(); ++i) order.push_back(i);
    auto algebra = detail::build_ce_algebra(g, order, nullptr);
    algebra->validate();
}

// The Sullivan filtration data of the dual construction: the composite-map
// sets S_k, the spans F^k of their images, the annihilator filtration
// V(i) = Ann(sF^i), and the resulting stage of each dual generator.
struct CEFiltrationReport {
    std::vector<std::vector<std::string>> s_sets;       // descriptors of S_1..S_n
    std::vector<RowSpan> f_spans;                       // F^1..F^n, last one zero
    std::vector<std::map<int, Mat>> annihilator_bases;  // V(i), per degree, slice coords
    SullivanOrder dual_stage;                           // stage per g-basis index
    int vanishing_index = 0;                            // first n with F^n = 0
};

inline CEFiltrationReport ce_sullivan_filtration(const LInfinityAlgebra& g) {
    const std::size_t dim = static_cast<std::size_t>(g.dim());
    CEFiltrationReport rep;

    // F^1 = span of the images of every structure map; the stored output
    // vectors span it since evaluation off the sorted keys only changes sign.
    std::vector<std::string> s1;
    RowSpan f1(dim);
    for (const auto& [n, table] : g.ops()) {
        if (!table.empty()) s1.push_back("l" + std::to_string(n));
        for (const auto& [key, out] : table) f1.insert(sparse_to_vec(out, dim));
    }
    rep.s_sets.push_back(s1);
    rep.f_spans.push_back(f1);

    const int cap = g.dim() + 2;
    while (rep.f_spans.back().dim() > 0) {
        if (static_cast<int>(rep.f_spans.size()) > cap)
            throw Error("ce_sullivan_filtration: F^k fails to vanish; the algebra is not nilpotent");
        const RowSpan& prev = rep.f_spans.back();
        std::vector<std::string> sk;
        for (int n = 1; n <= g.arity_cap(); ++n) {
            auto it = g.ops().find(n);
            if (it == g.ops().end() || it->second.empty()) continue;
            for (const auto& f : rep.s_sets.back()) {
                std::string d = "l" + std::to_string(n) + "o(" + f;
                for (int s = 1; s < n; ++s) d += "^Id";
                d += ")";
                sk.push_back(d);
            }
        }
        RowSpan fk = detail::one_step_images(g, prev);
        rep.s_sets.push_back(sk);
        rep.f_spans.push_back(fk);
        if (static_cast<int>(rep.f_spans.size()) >= 2 &&
            fk == rep.f_spans[rep.f_spans.size() - 2] && fk.dim() > 0)
            throw Error("ce_sullivan_filtration: F^k stationary nonzero; the algebra is not nilpotent");
    }
    rep.vanishing_index = static_cast<int>(rep.f_spans.size());

    // V(i) annihilators per degree; V(0) = 0.
    std::map<int, std::vector<int>> slices;  // degree -> basis indices
    for (int i = 0; i < g.dim(); ++i) slices[g.degree_of(i)].push_back(i);
    rep.annihilator_bases.resize(rep.f_spans.size() + 1);
    for (std::size_t i = 1; i <= rep.f_spans.size(); ++i) {
        const RowSpan& f = rep.f_spans[i - 1];
        for (const auto& [deg, idxs] : slices) {
            Mat m;
            for (const auto& row : f.rows()) {
                bool in_slice = false;
                for (int b : idxs)
                    if (row[static_cast<std::size_t>(b)] != 0) in_slice = true;
                if (!in_slice) continue;
                Vec v;
                for (int b : idxs) v.push_back(row[static_cast<std::size_t>(b)]);
                m.push_back(std::move(v));
            }
            rep.annihilator_bases[i][deg] = null_space(std::move(m), idxs.size());
        }
    }

    // Stage of the dual of basis element v: first i with every F^i row
    // vanishing in the v coordinate.
    rep.dual_stage.stage.assign(dim, 0);
    for (std::size_t b = 0; b < dim; ++b) {
        for (std::size_t i = 1; i <= rep.f_spans.size(); ++i) {
            bool annihilated = true;
            for (const auto& row : rep.f_spans[i - 1].rows())
                if (row[b] != 0) annihilated = false;
            if (annihilated) {
                rep.dual_stage.stage[b] = static_cast<int>(i);
                break;
            }
        }
        if (rep.dual_stage.stage[b] == 0)
            throw Error("ce_sullivan_filtration: generator " + g.symbol_of(static_cast<int>(b)) +
                        " never annihilates the filtration");
    }
    return rep;
}

// The decompleted dual construction: free graded-commutative algebra on the
// dual suspended basis, generators emitted in filtration-stage order, with
// the normalized differential.  Positive degrees are truncated away first;
// d^2 = 0 is verified on every generator.
struct CEPresentation {
    std::unique_ptr<LInfinityAlgebra> truncated;  // set when truncation was applied
    const LInfinityAlgebra* g = nullptr;          // the algebra actually dualized
    std::unique_ptr<FreeCDGA> algebra;
    std::vector<int> gen_to_basis;  // CE generator index -> g basis index
    std::vector<int> basis_to_gen;
    SullivanOrder order;  // per CE generator
    CEFiltrationReport filtration;
    // The recorded pairing between generators and dual suspended basis
    // elements: <gen_i, s v> = ce_pairing() on the matched pair.
    std::unique_ptr<GradedMap> identification;

    int gen_of_basis(int b) const { return basis_to_gen.at(static_cast<std::size_t>(b)); }
};

inline CEPresentation chevalley_eilenberg(const LInfinityAlgebra& g_in) {
    CEPresentation ce;
    bool positive = false;
    for (int i = 0; i < g_in.dim(); ++i)
        if (g_in.degree_of(i) > 0) positive = true;
    if (positive) {
        ce.truncated = std::make_unique<LInfinityAlgebra>(brutal_truncate(g_in));
        ce.g = ce.truncated.get();
    } else {
        ce.g = &g_in;
    }
    const LInfinityAlgebra& g = *ce.g;
    ce.filtration = ce_sullivan_filtration(g);

    std::vector<int> order;
    for (int i = 0; i < g.dim(); ++i) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return ce.filtration.dual_stage.stage[static_cast<std::size_t>(a)] <
               ce.filtration.dual_stage.stage[static_cast<std::size_t>(b)];
    });
    ce.algebra = detail::build_ce_algebra(g, order, &ce.gen_to_basis);
    ce.basis_to_gen.assign(static_cast<std::size_t>(g.dim()), -1);
    for (std::size_t i = 0; i < order.size(); ++i)
        ce.basis_to_gen[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    ce.order.stage.clear();
    for (int b : order)
        ce.order.stage.push_back(ce.filtration.dual_stage.stage[static_cast<std::size_t>(b)]);
    ce.algebra->validate();
    ce.identification = std::make_unique<GradedMap>(ce.algebra->generators(),
                                                    dualize(suspend(g.basis())), 0);
    for (int i = 0; i < ce.algebra->num_generators(); ++i)
        ce.identification->set(ce.algebra->symbol_of(i),
                               "^s" + g.symbol_of(ce.gen_to_basis[static_cast<std::size_t>(i)]),
                               ce_pairing());
    return ce;
}

// Subalgebra membership: rewrites x in generators adapted to the subspace
// spanned by `span_rows` (each a vector over the generator space) and checks
// that no complement generator occurs.
inline bool in_subalgebra_of_span(const FreeCDGA& A, const Element& x, const Mat& span_rows) {
    const std::size_t n = static_cast<std::size_t>(A.num_generators());
    RowSpan span(n);
    Mat adapted;
    for (const auto& r : span_rows)
        if (span.insert(r)) adapted.push_back(r);
    const std::size_t sub_dim = adapted.size();
    for (std::size_t j = 0; j < n; ++j) {
        Vec e(n, Scalar(0));
        e[j] = 1;
        if (span.insert(e)) adapted.push_back(std::move(e));
    }
    // Invert: express original generators in the adapted basis.
    Mat aug(n, Vec(2 * n, Scalar(0)));
    for (std::size_t col = 0; col < n; ++col)
        for (std::size_t k = 0; k < n; ++k) aug[k][col] = adapted[col][k];
    for (std::size_t k = 0; k < n; ++k) aug[k][n + k] = 1;
    rref(aug);
    // adapted-basis generators, degrees taken from the span vectors
    std::vector<BasisEntry> gens;
    for (std::size_t k = 0; k < n; ++k) {
        int deg = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (adapted[k][j] != 0) deg = A.degree_of(static_cast<int>(j));
        gens.push_back({"w" + std::to_string(k), deg});
    }
    FreeCDGA adapted_alg{GradedBasis(gens, Convention::cohomological)};
    AlgebraMorphism<FreeCDGA> subst;
    subst.source = &A;
    subst.target = &adapted_alg;
    for (std::size_t j = 0; j < n; ++j) {
        Element v = adapted_alg.zero();
        for (std::size_t k = 0; k < n; ++k)
            if (aug[j][n + k] != 0) v = adapted_alg.add(v, adapted_alg.scale(adapted_alg.gen(static_cast<int>(k)), aug[j][n + k]));
        subst.values.push_back(std::move(v));
    }
    Element rewritten = subst.apply(x);
    for (const auto& [m, c] : rewritten.terms())
        for (const auto& [gidx, e] : m.factors)
            if (static_cast<std::size_t>(gidx) >= sub_dim) return false;
    return true;
}

// d V(i) must land in the subalgebra generated by V(i-1).
inline bool verify_annihilator_stage_condition(const CEPresentation& ce) {
    const LInfinityAlgebra& g = *ce.g;
    const FreeCDGA& A = *ce.algebra;
    std::map<int, std::vector<int>> slices;
    for (int i = 0; i < g.dim(); ++i) slices[g.degree_of(i)].push_back(i);
    const auto functional_rows = [&](std::size_t level) {
        Mat rows;
        if (level == 0) return rows;
        for (const auto& [deg, basis_vectors] : ce.filtration.annihilator_bases[level]) {
            const auto& idxs = slices.at(deg);
            for (const auto& fv : basis_vectors) {
                Vec row(static_cast<std::size_t>(A.num_generators()), Scalar(0));
                for (std::size_t k = 0; k < idxs.size(); ++k)
                    row[static_cast<std::size_t>(ce.gen_of_basis(idxs[k]))] = fv[k];
                rows.push_back(std::move(row));
            }
        }
        return rows;
    };
    for (std::size_t i = 1; i < ce.filtration.annihilator_bases.size(); ++i) {
        const Mat lower = functional_rows(i - 1);
        for (const auto& row : functional_rows(i)) {
            Element v = A.zero();
            for (std::size_t k = 0; k < row.size(); ++k)
                if (row[k] != 0) v = A.add(v, A.scale(A.gen(static_cast<int>(k)), row[k]));
            if (!in_subalgebra_of_span(A, A.differential(v), lower)) return false;
        }
    }
    return true;
}

// Maurer-Cartan element -> dg algebra morphism C^*(g) -> k: dual generators
// of the degree -1 slice pair with the coefficients through ce_pairing().
inline AlgebraMorphism<GroundField> mc_to_morphism(const CEPresentation& ce, const SparseVec& x) {
    const SparseVec residual = mc_residual(*ce.g, x);
    if (!residual.empty())
        throw Error("mc_to_morphism: input is not Maurer-Cartan; residual = " + ce.g->str(residual));
    AlgebraMorphism<GroundField> phi;
    phi.source = ce.algebra.get();
    phi.target = &ground();
    phi.values.assign(static_cast<std::size_t>(ce.algebra->num_generators()), ground().zero());
    for (const auto& [v, c] : x)
        phi.values[static_cast<std::size_t>(ce.gen_of_basis(v))] = ground().unit(ce_pairing() * c);
    return phi;
}

inline SparseVec morphism_to_mc(const CEPresentation& ce, const AlgebraMorphism<GroundField>& phi) {
    auto cert = check_morphism(phi);
    if (!cert.ok) throw Error("morphism_to_mc: assignment is not a dg algebra morphism");
    SparseVec x;
    for (int b = 0; b < ce.g->dim(); ++b) {
        if (ce.g->degree_of(b) != -1) continue;
        const Scalar c = phi.values[static_cast<std::size_t>(ce.gen_of_basis(b))].value / ce_pairing();
        if (c != 0) x[b] = c;
    }
    return x;
}

// Maurer-Cartan path -> morphism C^*(g) -> Lambda(t,dt).  Degree -1 duals
// receive r*x_v(t); degree 0 duals receive -r*xi_e(t) dt (the Koszul sign of
// pairing a degree 1 functional across dt).
inline AlgebraMorphism<IntervalAlgebra<GroundField>> path_to_homotopy(const CEPresentation& ce,
                                                                      const GPath& X) {
    auto residual = mc_residual_path(*ce.g, X);
    if (!residual.is_zero()) throw Error("path_to_homotopy: path does not satisfy the MC equation");
    const auto& IA = ground_interval();
    AlgebraMorphism<IntervalAlgebra<GroundField>> h;
    h.source = ce.algebra.get();
    h.target = &IA;
    h.values.assign(static_cast<std::size_t>(ce.algebra->num_generators()), IA.zero());
    for (const auto& [v, p] : X.x) {
        auto e = IA.zero();
        for (std::size_t j = 0; j < p.size(); ++j)
            if (p[j] != 0) e.set_t_coeff(j, ground().unit(ce_pairing() * p[j]));
        h.values[static_cast<std::size_t>(ce.gen_of_basis(v))] = std::move(e);
    }
    for (const auto& [v, p] : X.xi) {
        auto e = IA.zero();
        for (std::size_t j = 0; j < p.size(); ++j)
            if (p[j] != 0) e.set_dt_coeff(j, ground().unit(-ce_pairing() * p[j]));
        h.values[static_cast<std::size_t>(ce.gen_of_basis(v))] = std::move(e);
    }
    return h;
}

inline GPath homotopy_to_path(const CEPresentation& ce,
                              const AlgebraMorphism<IntervalAlgebra<GroundField>>& h) {
    auto cert = check_morphism(h);
    if (!cert.ok) throw Error("homotopy_to_path: not a dg algebra morphism");
    GPath X;
    for (int b = 0; b < ce.g->dim(); ++b) {
        const auto& val = h.values[static_cast<std::size_t>(ce.gen_of_basis(b))];
        if (ce.g->degree_of(b) == -1) {
            Poly p;
            for (std::size_t j = 0; j < val.t_size(); ++j) p.push_back(val.t_coeff(j).value / ce_pairing());
            poly_trim(p);
            if (!poly_is_zero(p)) X.x[b] = std::move(p);
        } else if (ce.g->degree_of(b) == 0) {
            Poly p;
            for (std::size_t j = 0; j < val.dt_size(); ++j) p.push_back(val.dt_coeff(j).value / -ce_pairing());
            poly_trim(p);
            if (!poly_is_zero(p)) X.xi[b] = std::move(p);
        }
    }
    return X;
}

}  // namespace mchom
