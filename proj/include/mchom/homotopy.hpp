#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mchom/cdga.hpp"
#include "mchom/interval.hpp"

namespace mchom {

// Element of G_L(A,B): a finitely supported sequence (b_0, b_1, ...) of
// degree -1 linear maps V -> B, each stored by generator values.
template <class B>
struct GLElement {
    std::vector<std::vector<typename B::Element>> maps;

    std::size_t support() const { return maps.size(); }
};

// Element of G_S(A,B): a single degree -1 linear map V -> B.
template <class B>
struct GSElement {
    std::vector<typename B::Element> map;
};

template <class B>
GLElement<B> gl_zero(const FreeCDGA& A, const B& target, std::size_t support) {
    GLElement<B> g;
    g.maps.assign(support, std::vector<typename B::Element>(
                               static_cast<std::size_t>(A.num_generators()), target.zero()));
    return g;
}

template <class B>
GLElement<B> gl_add(const FreeCDGA& A, const B& target, const GLElement<B>& a, const GLElement<B>& b) {
    GLElement<B> r = gl_zero(A, target, std::max(a.maps.size(), b.maps.size()));
    for (std::size_t i = 0; i < r.maps.size(); ++i)
        for (std::size_t g = 0; g < r.maps[i].size(); ++g) {
            auto v = target.zero();
            if (i < a.maps.size()) v = target.add(v, a.maps[i][g]);
            if (i < b.maps.size()) v = target.add(v, b.maps[i][g]);
            r.maps[i][g] = std::move(v);
        }
    return r;
}

template <class B>
bool gl_equal(const FreeCDGA& A, const B& target, const GLElement<B>& a, const GLElement<B>& b) {
    const std::size_t n = std::max(a.maps.size(), b.maps.size());
    for (std::size_t i = 0; i < n; ++i)
        for (int g = 0; g < A.num_generators(); ++g) {
            auto va = i < a.maps.size() ? a.maps[i][static_cast<std::size_t>(g)] : target.zero();
            auto vb = i < b.maps.size() ? b.maps[i][static_cast<std::size_t>(g)] : target.zero();
            if (!target.equal(va, vb)) return false;
        }
    return true;
}

template <class B>
GLElement<B> gs_embed(const FreeCDGA& A, const B& target, const GSElement<B>& b) {
    GLElement<B> g = gl_zero(A, target, 1);
    g.maps[0] = b.map;
    return g;
}

// A homotopy is a morphism A -> B (x) Lambda(t,dt); its phi / alpha_j /
// beta_i decomposition is recovered by coefficient extraction.
template <class B>
using Homotopy = AlgebraMorphism<IntervalAlgebra<B>>;

// Coefficient functionals of the decomposition h = phi + sum alpha_j t^j +
// sum beta_i t^i dt.  alpha_j is the plain t^j coefficient; beta_i carries
// the Koszul sign of its degree, beta_i(x) = (-1)^{|x|} (t^i dt coefficient
// of h(x)) per homogeneous component.  They satisfy ev_0 h = phi and
// -j alpha_j = d beta_{j-1} + beta_{j-1} d.
template <class B>
typename B::Element homotopy_alpha(const IntervalAlgebra<B>& IB, const Homotopy<B>& h,
                                   const Element& x, std::size_t j) {
    (void)IB;
    return h.apply(x).t_coeff(j);
}
template <class B>
typename B::Element homotopy_beta(const IntervalAlgebra<B>& IB, const Homotopy<B>& h,
                                  const Element& x, std::size_t i) {
    const B& target = IB.base();
    typename B::Element out = target.zero();
    for (const auto& [deg, comp] : h.source->components(x)) {
        auto c = h.apply(comp).dt_coeff(i);
        if (parity(deg) == 1) c = target.scale(c, Scalar(-1));
        out = target.add(out, c);
    }
    return out;
}

namespace detail {

// Partial morphism used while the stagewise construction is in flight.
template <class B>
class PartialMorphism {
  public:
    PartialMorphism(const FreeCDGA& A, const B& target)
        : A_(A), target_(target),
          values_(static_cast<std::size_t>(A.num_generators()), target.zero()),
          defined_(static_cast<std::size_t>(A.num_generators()), false) {}

    void define(int g, typename B::Element v) {
        values_[static_cast<std::size_t>(g)] = std::move(v);
        defined_[static_cast<std::size_t>(g)] = true;
    }

    typename B::Element apply(const Element& x) const {
        typename B::Element out = target_.zero();
        for (const auto& [m, c] : x.terms()) {
            auto prod = target_.unit(Scalar(1));
            for (const auto& [g, e] : m.factors) {
                if (!defined_[static_cast<std::size_t>(g)])
                    throw Error("theta: differential references generator '" + A_.symbol_of(g) +
                                "' outside the given Sullivan order");
                for (int k = 0; k < e; ++k) prod = target_.multiply(prod, values_[static_cast<std::size_t>(g)]);
            }
            out = target_.add(out, target_.scale(prod, c));
        }
        return out;
    }

    std::vector<typename B::Element> take() { return std::move(values_); }

  private:
    const FreeCDGA& A_;
    const B& target_;
    std::vector<typename B::Element> values_;
    std::vector<bool> defined_;
};

template <class B>
void validate_gl(const FreeCDGA& A, const B& target, const GLElement<B>& gl) {
    for (const auto& map : gl.maps)
        for (int g = 0; g < A.num_generators(); ++g)
            for (const auto& [d, comp] : target.components(map.at(static_cast<std::size_t>(g))))
                if (d != A.degree_of(g) - 1)
                    throw Error("theta: group element is not a degree -1 map on generator " +
                                A.symbol_of(g));
}

}  // namespace detail

// The stagewise bijection Theta: ({b_i}, phi) |-> homotopy h with
// ev_0 h = phi and beta_i|_V = b_i.  Each generator v receives
//   h(v) = phi(v) - sum_j (d b_{j-1}(v) + beta_{j-1}(dv)) / j * t^j
//          + (-1)^{|v|} sum_i b_i(v) t^i dt,
// where beta_{j-1}(dv) is the t^{j-1} dt coefficient of the already-built
// image of dv from lower stages.
template <class B>
Homotopy<B> theta(const FreeCDGA& A, const SullivanOrder& order, const IntervalAlgebra<B>& IB,
                  const AlgebraMorphism<B>& phi, const GLElement<B>& gl) {
    const B& target = IB.base();
    if (phi.source != &A || phi.target != &target) throw Error("theta: morphism over wrong algebras");
    if (static_cast<int>(order.stage.size()) != A.num_generators())
        throw Error("theta: order does not cover all generators");
    for (int s : order.stage)
        if (s < 1) throw Error("theta: order missing a generator");
    detail::validate_gl(A, target, gl);

    detail::PartialMorphism<IntervalAlgebra<B>> partial(A, IB);
    for (int g : order.ordered()) {
        const Element& dv = A.differential_of(g);
        const auto h_dv = partial.apply(dv);
        std::size_t top = gl.maps.size();
        if (h_dv.dt_size() > top) top = h_dv.dt_size();

        // beta_{j-1}(dv) = (-1)^{|dv|} * (t^{j-1} dt coefficient of h(dv));
        // the coefficient functionals carry the Koszul sign of their degree.
        const Scalar beta_sign = parity(A.degree_of(g) + 1) == 1 ? -1 : 1;
        auto value = IB.from_base(phi.values[static_cast<std::size_t>(g)]);
        for (std::size_t j = 1; j <= top; ++j) {
            auto num = target.scale(h_dv.dt_coeff(j - 1), beta_sign);
            if (j - 1 < gl.maps.size())
                num = target.add(num, target.differential(gl.maps[j - 1][static_cast<std::size_t>(g)]));
            if (target.is_zero(num)) continue;
            value = IB.add(value, IB.t_power(j, target.scale(num, Scalar(-1) / Scalar(static_cast<int>(j)))));
        }
        const Scalar sign = parity(A.degree_of(g)) == 1 ? -1 : 1;
        for (std::size_t i = 0; i < gl.maps.size(); ++i) {
            const auto& bi = gl.maps[i][static_cast<std::size_t>(g)];
            if (!target.is_zero(bi)) value = IB.add(value, IB.dt_power(i, target.scale(bi, sign)));
        }
        partial.define(g, std::move(value));
    }

    Homotopy<B> h;
    h.source = &A;
    h.target = &IB;
    h.values = partial.take();
    return h;
}

// phi = ev_0 h; b_i = the t^i dt coefficient of h on each generator.
template <class B>
std::pair<GLElement<B>, AlgebraMorphism<B>> theta_inverse(const FreeCDGA& A,
                                                          const IntervalAlgebra<B>& IB,
                                                          const Homotopy<B>& h) {
    if (h.source != &A || h.target != &IB) throw Error("theta_inverse: morphism over wrong algebras");
    const B& target = IB.base();
    AlgebraMorphism<B> phi;
    phi.source = &A;
    phi.target = &target;
    std::size_t support = 0;
    for (const auto& v : h.values) support = std::max(support, v.dt_size());
    GLElement<B> gl = gl_zero(A, target, support);
    for (int g = 0; g < A.num_generators(); ++g) {
        const auto& val = h.values[static_cast<std::size_t>(g)];
        phi.values.push_back(IB.ev(val, Scalar(0)));
        const Scalar sign = parity(A.degree_of(g)) == 1 ? -1 : 1;
        for (std::size_t i = 0; i < val.dt_size(); ++i)
            gl.maps[i][static_cast<std::size_t>(g)] = target.scale(val.dt_coeff(i), sign);
    }
    return {std::move(gl), std::move(phi)};
}

// The G_L action: ({b_i}, phi) |-> ev_1(Theta({b_i}, phi)).
template <class B>
AlgebraMorphism<B> gl_act(const FreeCDGA& A, const SullivanOrder& order,
                          const IntervalAlgebra<B>& IB, const AlgebraMorphism<B>& phi,
                          const GLElement<B>& gl) {
    const auto h = theta(A, order, IB, phi, gl);
    AlgebraMorphism<B> psi;
    psi.source = &A;
    psi.target = &IB.base();
    for (const auto& v : h.values) psi.values.push_back(IB.ev(v, Scalar(1)));
    return psi;
}

// Collapse (b_0, b_1, b_2, ...) |-> sum_i b_i / (i+1); acting through the
// embedding G_S -> G_L this reproduces the full G_L action.
template <class B>
GSElement<B> gs_collapse(const FreeCDGA& A, const B& target, const GLElement<B>& gl) {
    GSElement<B> b;
    b.map.assign(static_cast<std::size_t>(A.num_generators()), target.zero());
    for (std::size_t i = 0; i < gl.maps.size(); ++i)
        for (std::size_t g = 0; g < b.map.size(); ++g)
            b.map[g] = target.add(b.map[g],
                                  target.scale(gl.maps[i][g], Scalar(1) / Scalar(static_cast<int>(i) + 1)));
    return b;
}

template <class B>
AlgebraMorphism<B> gs_act(const FreeCDGA& A, const SullivanOrder& order,
                          const IntervalAlgebra<B>& IB, const AlgebraMorphism<B>& phi,
                          const GSElement<B>& b) {
    return gl_act(A, order, IB, phi, gs_embed(A, IB.base(), b));
}

// Composition of homotopies through the collapse chi(s) = chi(t) = u: builds
// the homotopy of homotopies H = Theta({b'_i} lifted over B (x) Lambda(t,dt), h)
// and collapses.  The result equals Theta({b_i + b'_i}, phi) exactly.
template <class B>
Homotopy<B> compose_homotopies(const FreeCDGA& A, const SullivanOrder& order,
                               const IntervalAlgebra<B>& IB,
                               const IntervalAlgebra<IntervalAlgebra<B>>& IIB,
                               const Homotopy<B>& h, const Homotopy<B>& h2) {
    const B& target = IB.base();
    for (int g = 0; g < A.num_generators(); ++g) {
        const auto end = IB.ev(h.values[static_cast<std::size_t>(g)], Scalar(1));
        const auto start = IB.ev(h2.values[static_cast<std::size_t>(g)], Scalar(0));
        if (!target.equal(end, start))
            throw Error("compose_homotopies: ev_1 of the first homotopy differs from ev_0 of the second");
    }
    auto [gl2, phi2] = theta_inverse(A, IB, h2);
    GLElement<IntervalAlgebra<B>> lifted = gl_zero(A, IB, gl2.maps.size());
    for (std::size_t i = 0; i < gl2.maps.size(); ++i)
        for (std::size_t g = 0; g < gl2.maps[i].size(); ++g)
            lifted.maps[i][g] = IB.from_base(gl2.maps[i][g]);
    const auto H = theta(A, order, IIB, h, lifted);
    Homotopy<B> out;
    out.source = &A;
    out.target = &IB;
    for (const auto& v : H.values) out.values.push_back(chi_collapse(IIB, v));
    return out;
}

}  // namespace mchom
