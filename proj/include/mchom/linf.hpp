#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mchom/graded.hpp"
#include "mchom/linalg.hpp"
#include "mchom/scalar.hpp"

namespace mchom {

using SparseVec = std::map<int, Scalar>;  // basis index -> coefficient

inline void sparse_add(SparseVec& a, const SparseVec& b, const Scalar& factor = Scalar(1)) {
    if (factor == 0) return;
    for (const auto& [i, c] : b) {
        auto it = a.find(i);
        if (it == a.end()) {
            if (c * factor != 0) a[i] = c * factor;
        } else {
            it->second += c * factor;
            if (it->second == 0) a.erase(it);
        }
    }
}

// Polynomials in t with exact coefficients, dense up to the top term.
using Poly = std::vector<Scalar>;

inline void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
inline bool poly_is_zero(const Poly& p) {
    for (const auto& c : p)
        if (c != 0) return false;
    return true;
}
inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Scalar(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    poly_trim(r);
    return r;
}
inline Poly poly_scale(const Poly& a, const Scalar& c) {
    if (c == 0) return {};
    Poly r = a;
    for (auto& x : r) x *= c;
    return r;
}
inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    poly_trim(r);
    return r;
}
inline Poly poly_derivative(const Poly& a) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<int>(i);
    poly_trim(r);
    return r;
}
inline Scalar poly_eval(const Poly& a, const Scalar& t) {
    Scalar r = 0, p = 1;
    for (const auto& c : a) {
        r += c * p;
        p *= t;
    }
    return r;
}

// Finite-type L-infinity algebra over the homological convention, with
// structure maps stored graded-symmetrically on sorted basis multisets.
// Evaluation on an unsorted tuple multiplies by the Koszul sign computed on
// the suspended degrees (|x|+1); a key repeating a suspended-odd element is
// identically zero.  dgla fixtures are converted to this storage with the
// standard suspension signs by the loader.
class LInfinityAlgebra {
  public:
    LInfinityAlgebra(GradedBasis basis, int arity_cap)
        : basis_(std::move(basis)), arity_cap_(arity_cap) {
        if (basis_.convention() != Convention::homological)
            throw Error("LInfinityAlgebra: basis must be homological");
        if (arity_cap_ < 1) throw Error("LInfinityAlgebra: arity cap must be >= 1");
    }

    const GradedBasis& basis() const { return basis_; }
    int dim() const { return basis_.size(); }
    int degree_of(int i) const { return basis_.at(i).degree; }
    int suspended_degree_of(int i) const { return basis_.at(i).degree + 1; }
    const std::string& symbol_of(int i) const { return basis_.at(i).symbol; }
    int arity_cap() const { return arity_cap_; }

    // True iff no structure map of arity >= 3 is present.
    bool is_dgla() const {
        for (const auto& [n, table] : ops_)
            if (n >= 3 && !table.empty()) return false;
        return true;
    }

    const std::map<int, std::map<std::vector<int>, SparseVec>>& ops() const { return ops_; }

    // Registers l_n on an input multiset (given in any order).  The key is
    // Koszul-normalized on suspended degrees; the recorded sign is folded
    // into the output so round-trips are exact.
    void add_op(int arity, std::vector<int> inputs, SparseVec output) {
        if (arity < 1 || arity > arity_cap_) throw Error("add_op: arity outside cap");
        if (static_cast<int>(inputs.size()) != arity) throw Error("add_op: wrong number of inputs");
        std::vector<int> sdeg;
        sdeg.reserve(inputs.size());
        int in_degree = 0;
        for (int i : inputs) {
            sdeg.push_back(suspended_degree_of(i));
            in_degree += degree_of(i);
        }
        const int sign = koszul_sort_with_degrees(inputs, sdeg);
        for (std::size_t k = 0; k + 1 < inputs.size(); ++k)
            if (inputs[k] == inputs[k + 1] && parity(suspended_degree_of(inputs[k])) == 1)
                throw Error("add_op: repeated suspended-odd input forces the value to vanish");
        for (auto it = output.begin(); it != output.end();) {
            if (it->second == 0)
                it = output.erase(it);
            else
                ++it;
        }
        if (output.empty()) return;
        for (const auto& [out, c] : output)
            if (degree_of(out) != in_degree + arity - 2)
                throw Error("add_op: output " + symbol_of(out) + " violates the degree rule");
        if (sign < 0)
            for (auto& [out, c] : output) c = -c;
        auto& table = ops_[arity];
        if (!table.emplace(std::move(inputs), std::move(output)).second)
            throw Error("add_op: duplicate structure map key");
    }

    // l_arity on an ordered tuple of basis elements.
    SparseVec eval_basis(int arity, std::vector<int> inputs) const {
        if (arity > arity_cap_) return {};
        auto table_it = ops_.find(arity);
        if (table_it == ops_.end()) return {};
        std::vector<int> sdeg;
        sdeg.reserve(inputs.size());
        for (int i : inputs) sdeg.push_back(suspended_degree_of(i));
        const int sign = koszul_sort_with_degrees(inputs, sdeg);
        for (std::size_t k = 0; k + 1 < inputs.size(); ++k)
            if (inputs[k] == inputs[k + 1] && parity(suspended_degree_of(inputs[k])) == 1)
                return {};
        auto it = table_it->second.find(inputs);
        if (it == table_it->second.end()) return {};
        SparseVec out = it->second;
        if (sign < 0)
            for (auto& [i, c] : out) c = -c;
        return out;
    }

    // Multilinear extension to sparse vectors.  The expansion handles
    // coefficients (even scalars) without extra signs; basis reordering
    // signs come from eval_basis.
    SparseVec eval_multi(int arity, const std::vector<SparseVec>& inputs) const {
        if (static_cast<int>(inputs.size()) != arity) throw Error("eval_multi: arity mismatch");
        SparseVec out;
        std::vector<std::pair<int, Scalar>> choice(static_cast<std::size_t>(arity));
        eval_multi_rec(arity, inputs, 0, Scalar(1), choice, out);
        return out;
    }

    // Plain antisymmetric-convention binary bracket recovered from the
    // stored symmetric constants: [x1,x2] = (-1)^{|x1|+1} l_2(x1,x2).
    SparseVec dgla_bracket(const SparseVec& a, const SparseVec& b) const {
        SparseVec out;
        for (const auto& [i, ca] : a)
            for (const auto& [j, cb] : b) {
                Scalar f = ca * cb;
                if (parity(degree_of(i) + 1) == 1) f = -f;
                sparse_add(out, eval_basis(2, {i, j}), f);
            }
        return out;
    }

    std::string str(const SparseVec& v) const {
        if (v.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [i, c] : v) {
            Scalar x = c;
            if (!first) {
                out << (x < 0 ? " - " : " + ");
                if (x < 0) x = -x;
            }
            first = false;
            if (x != 1) out << scalar_str(x) << "*";
            out << symbol_of(i);
        }
        return out.str();
    }

  private:
    void eval_multi_rec(int arity, const std::vector<SparseVec>& inputs, int slot, Scalar factor,
                        std::vector<std::pair<int, Scalar>>& choice, SparseVec& out) const {
        if (slot == arity) {
            std::vector<int> idx;
            idx.reserve(static_cast<std::size_t>(arity));
            for (const auto& [i, c] : choice) idx.push_back(i);
            sparse_add(out, eval_basis(arity, idx), factor);
            return;
        }
        for (const auto& [i, c] : inputs[static_cast<std::size_t>(slot)]) {
            choice[static_cast<std::size_t>(slot)] = {i, c};
            eval_multi_rec(arity, inputs, slot + 1, factor * c, choice, out);
        }
    }

    GradedBasis basis_;
    int arity_cap_;
    std::map<int, std::map<std::vector<int>, SparseVec>> ops_;
};

// Lower central series as exact spans in full basis coordinates; inserted
// vectors are degree-homogeneous, so rows stay degree-homogeneous.
struct Filtration {
    std::vector<RowSpan> gamma;  // gamma[k-1] = Gamma^k

    const RowSpan& at(int k) const {
        const std::size_t i = static_cast<std::size_t>(k - 1);
        return i < gamma.size() ? gamma[i] : gamma.back();
    }
    int chain_length() const { return static_cast<int>(gamma.size()); }
};

inline Vec sparse_to_vec(const SparseVec& v, std::size_t dim) {
    Vec out(dim, Scalar(0));
    for (const auto& [i, c] : v) out[static_cast<std::size_t>(i)] = c;
    return out;
}
inline SparseVec vec_to_sparse(const Vec& v) {
    SparseVec out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) out[static_cast<int>(i)] = v[i];
    return out;
}

inline int span_degree_dim(const LInfinityAlgebra& g, const RowSpan& span, int degree) {
    int n = 0;
    for (const auto& row : span.rows()) {
        for (std::size_t i = 0; i < row.size(); ++i)
            if (row[i] != 0) {
                if (g.degree_of(static_cast<int>(i)) == degree) ++n;
                break;
            }
    }
    return n;
}

namespace detail {

// Images of one application: R(T) = sum_{n>=2} l_n(T, g, ..., g) + l_1(T).
inline RowSpan one_step_images(const LInfinityAlgebra& g, const RowSpan& t) {
    const std::size_t dim = static_cast<std::size_t>(g.dim());
    RowSpan out(dim);
    for (const auto& row : t.rows()) {
        const SparseVec u = vec_to_sparse(row);
        {
            SparseVec img = g.eval_multi(1, {u});
            if (!img.empty()) out.insert(sparse_to_vec(img, dim));
        }
        for (int n = 2; n <= g.arity_cap(); ++n) {
            std::vector<int> slots(static_cast<std::size_t>(n - 1), 0);
            std::function<void(int, int)> rec = [&](int s, int start) {
                if (s == n - 1) {
                    std::vector<SparseVec> args{u};
                    for (int b : slots) args.push_back(SparseVec{{b, Scalar(1)}});
                    SparseVec img = g.eval_multi(n, args);
                    if (!img.empty()) out.insert(sparse_to_vec(img, dim));
                    return;
                }
                for (int b = start; b < g.dim(); ++b) {
                    slots[static_cast<std::size_t>(s)] = b;
                    rec(s + 1, b);
                }
            };
            rec(0, 0);
        }
    }
    return out;
}

// Greatest subspace T with T inside R(T): exactly the span of values of
// arbitrarily deep bracket expressions (iterated l_1 steps strictly drop
// the degree, so an endless unfolding forces unboundedly many elements).
// The lower central series descends to this span and stays there.
inline RowSpan productive_span(const LInfinityAlgebra& g) {
    const std::size_t dim = static_cast<std::size_t>(g.dim());
    RowSpan t(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        Vec v(dim, Scalar(0));
        v[i] = 1;
        t.insert(std::move(v));
    }
    for (int iter = 0; iter <= g.dim() + 2; ++iter) {
        RowSpan next = span_intersection(t, one_step_images(g, t));
        if (next == t) return t;
        t = std::move(next);
    }
    throw Error("productive_span: fixpoint iteration cap exceeded (internal error)");
}

}  // namespace detail

// Gamma^k is spanned by all bracket expressions built from at least k
// elements.  Each step seeds with l_n applied to earlier stages along
// compositions summing to >= k and closes under l_1 to a fixed point.
// The chain may plateau before it settles, so it is iterated until it
// reaches the productive span (the exact infinite tail) or vanishes.
inline Filtration lower_central_series(const LInfinityAlgebra& g) {
    const std::size_t dim = static_cast<std::size_t>(g.dim());
    Filtration f;
    RowSpan full(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        Vec v(dim, Scalar(0));
        v[i] = 1;
        full.insert(std::move(v));
    }
    f.gamma.push_back(full);
    const RowSpan tail = detail::productive_span(g);
    const int closure_cap = g.dim() + 2;
    for (int k = 2;; ++k) {
        RowSpan next(dim);
        // Seed: sorted compositions (k_1 >= ... >= k_n), entries in [1, k-1],
        // sum >= k; symmetry of l_n makes sorted tuples sufficient.
        for (int n = 2; n <= g.arity_cap(); ++n) {
            // enumerate non-increasing composition tuples
            std::vector<int> tuple;
            std::function<void(int, int)> rec = [&](int slot, int max_part) {
                if (slot == n) {
                    int sum = 0;
                    for (int p : tuple) sum += p;
                    if (sum < k) return;
                    // spanning vectors of each Gamma^{k_i}
                    std::vector<const Mat*> sources;
                    for (int p : tuple) sources.push_back(&f.gamma[static_cast<std::size_t>(p - 1)].rows());
                    std::vector<const Vec*> pick(static_cast<std::size_t>(n));
                    std::function<void(int)> prod = [&](int s) {
                        if (s == n) {
                            std::vector<SparseVec> args;
                            for (const Vec* v : pick) args.push_back(vec_to_sparse(*v));
                            SparseVec img = g.eval_multi(n, args);
                            if (!img.empty()) next.insert(sparse_to_vec(img, dim));
                            return;
                        }
                        for (const Vec& v : *sources[static_cast<std::size_t>(s)]) {
                            pick[static_cast<std::size_t>(s)] = &v;
                            prod(s + 1);
                        }
                    };
                    prod(0);
                    return;
                }
                for (int p = std::min(max_part, k - 1); p >= 1; --p) {
                    tuple.push_back(p);
                    rec(slot + 1, p);
                    tuple.pop_back();
                }
            };
            rec(0, k - 1);
        }
        // Close under l_1 (a unary map does not change the element count).
        for (int iter = 0;; ++iter) {
            if (iter > closure_cap) throw Error("lower_central_series: closure iteration cap exceeded");
            bool grew = false;
            Mat rows = next.rows();
            for (const auto& row : rows) {
                SparseVec img = g.eval_multi(1, {vec_to_sparse(row)});
                if (!img.empty() && next.insert(sparse_to_vec(img, dim))) grew = true;
            }
            if (!grew) break;
        }
        const bool at_tail = next == tail;
        f.gamma.push_back(std::move(next));
        if (at_tail || f.gamma.back().dim() == 0) break;
        // a plateau of multiplicative length arity_cap forces the tail, so
        // the chain settles well within this bound
        if (k > g.arity_cap() * (g.dim() + 2) + 2)
            throw Error("lower_central_series: chain failed to settle (internal error)");
    }
    return f;
}

// Smallest k with (Gamma^k)_degree = 0; nullopt when the series goes
// stationary while still nonzero in that degree.
inline std::optional<int> nilpotency_bound(const LInfinityAlgebra& g, const Filtration& f, int degree) {
    for (int k = 1; k <= f.chain_length(); ++k)
        if (span_degree_dim(g, f.at(k), degree) == 0) return k;
    // The chain only ends stationary or zero; stationary nonzero in this
    // degree means the slice never dies.
    return std::nullopt;
}

inline std::optional<int> nilpotency_bound(const LInfinityAlgebra& g, int degree) {
    return nilpotency_bound(g, lower_central_series(g), degree);
}

// sigma_{<=0}: keep degrees <= 0 and every structure-map output of degree
// <= 0 whose inputs survive.  Preserves Maurer-Cartan data exactly.
inline LInfinityAlgebra brutal_truncate(const LInfinityAlgebra& g) {
    std::vector<BasisEntry> kept;
    std::map<int, int> remap;
    for (int i = 0; i < g.dim(); ++i)
        if (g.degree_of(i) <= 0) {
            remap[i] = static_cast<int>(kept.size());
            kept.push_back(g.basis().at(i));
        }
    LInfinityAlgebra out(GradedBasis(kept, Convention::homological), g.arity_cap());
    for (const auto& [n, table] : g.ops())
        for (const auto& [key, val] : table) {
            bool inputs_ok = true;
            std::vector<int> new_key;
            for (int i : key) {
                auto it = remap.find(i);
                if (it == remap.end()) {
                    inputs_ok = false;
                    break;
                }
                new_key.push_back(it->second);
            }
            if (!inputs_ok) continue;
            SparseVec new_val;
            for (const auto& [o, c] : val) {
                auto it = remap.find(o);
                if (it != remap.end()) new_val[it->second] = c;
            }
            if (!new_val.empty()) out.add_op(n, new_key, new_val);
        }
    return out;
}

// Maurer-Cartan residual sum_{n>=1} (1/n!) l_n(x,...,x) for x in degree -1.
inline SparseVec mc_residual(const LInfinityAlgebra& g, const SparseVec& x) {
    for (const auto& [i, c] : x)
        if (g.degree_of(i) != -1) throw Error("mc_residual: input not concentrated in degree -1");
    if (!nilpotency_bound(g, -2))
        throw Error("mc_residual: lower central series unbounded in degree -2");
    SparseVec out;
    for (int n = 1; n <= g.arity_cap(); ++n) {
        std::vector<SparseVec> args(static_cast<std::size_t>(n), x);
        sparse_add(out, g.eval_multi(n, args), Scalar(1) / factorial(static_cast<unsigned>(n)));
    }
    return out;
}

inline bool is_mc(const LInfinityAlgebra& g, const SparseVec& x) { return mc_residual(g, x).empty(); }

// A degree -1 element of g (x) Lambda(t,dt): x(t) over the degree -1 slice
// plus xi(t) dt over the degree 0 slice.
struct GPath {
    std::map<int, Poly> x;
    std::map<int, Poly> xi;

    static GPath constant(const SparseVec& point) {
        GPath p;
        for (const auto& [i, c] : point) p.x[i] = Poly{c};
        return p;
    }

    SparseVec x_at(const Scalar& t) const {
        SparseVec out;
        for (const auto& [i, p] : x) {
            Scalar v = poly_eval(p, t);
            if (v != 0) out[i] = v;
        }
        return out;
    }
};

struct PathResidual {
    std::map<int, Poly> t_component;   // over the degree -2 slice
    std::map<int, Poly> dt_component;  // over the degree -1 slice

    bool is_zero() const {
        for (const auto& [i, p] : t_component)
            if (!poly_is_zero(p)) return false;
        for (const auto& [i, p] : dt_component)
            if (!poly_is_zero(p)) return false;
        return true;
    }
};

namespace detail {
// Multilinear evaluation where each argument is a polynomial-coefficient
// vector; inputs sit in suspended-even degree except for at most one
// suspended-odd slot, so no Koszul signs arise beyond eval_basis.
inline std::map<int, Poly> eval_multi_poly(const LInfinityAlgebra& g, int arity,
                                           const std::vector<const std::map<int, Poly>*>& inputs) {
    std::map<int, Poly> out;
    std::vector<int> idx(static_cast<std::size_t>(arity));
    std::vector<const Poly*> polys(static_cast<std::size_t>(arity));
    std::function<void(int)> rec = [&](int slot) {
        if (slot == arity) {
            SparseVec val = g.eval_basis(arity, idx);
            if (val.empty()) return;
            Poly prod{Scalar(1)};
            for (const Poly* p : polys) prod = poly_mul(prod, *p);
            if (poly_is_zero(prod)) return;
            for (const auto& [o, c] : val) {
                auto& acc = out[o];
                acc = poly_add(acc, poly_scale(prod, c));
            }
            return;
        }
        for (const auto& [i, p] : *inputs[static_cast<std::size_t>(slot)]) {
            idx[static_cast<std::size_t>(slot)] = i;
            polys[static_cast<std::size_t>(slot)] = &p;
            rec(slot + 1);
        }
    };
    rec(0);
    for (auto it = out.begin(); it != out.end();) {
        poly_trim(it->second);
        if (it->second.empty())
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}
}  // namespace detail

// Maurer-Cartan residual of x(t) + xi(t) dt in g (x) Lambda(t,dt).  The t
// component is the pointwise MC sum of x(t); the dt component is the flow
// equation x'(t) - sum_{n>=1} l_n(xi(t), x(t)^{n-1})/(n-1)!.
inline PathResidual mc_residual_path(const LInfinityAlgebra& g, const GPath& X) {
    for (const auto& [i, p] : X.x)
        if (g.degree_of(i) != -1) throw Error("mc_residual_path: x(t) not in degree -1");
    for (const auto& [i, p] : X.xi)
        if (g.degree_of(i) != 0) throw Error("mc_residual_path: xi(t) not in degree 0");
    if (!nilpotency_bound(g, -2) || !nilpotency_bound(g, -1))
        throw Error("mc_residual_path: lower central series unbounded in degree -1 or -2");
    PathResidual r;
    for (int n = 1; n <= g.arity_cap(); ++n) {
        std::vector<const std::map<int, Poly>*> args(static_cast<std::size_t>(n), &X.x);
        auto term = detail::eval_multi_poly(g, n, args);
        const Scalar f = Scalar(1) / factorial(static_cast<unsigned>(n));
        for (const auto& [o, p] : term) r.t_component[o] = poly_add(r.t_component[o], poly_scale(p, f));
    }
    for (const auto& [i, p] : X.x) {
        Poly d = poly_derivative(p);
        if (!poly_is_zero(d)) r.dt_component[i] = poly_add(r.dt_component[i], d);
    }
    for (int n = 1; n <= g.arity_cap(); ++n) {
        std::vector<const std::map<int, Poly>*> args;
        args.push_back(&X.xi);
        for (int s = 1; s < n; ++s) args.push_back(&X.x);
        auto term = detail::eval_multi_poly(g, n, args);
        const Scalar f = Scalar(-1) / factorial(static_cast<unsigned>(n - 1));
        for (const auto& [o, p] : term) r.dt_component[o] = poly_add(r.dt_component[o], poly_scale(p, f));
    }
    for (auto* comp : {&r.t_component, &r.dt_component})
        for (auto it = comp->begin(); it != comp->end();) {
            poly_trim(it->second);
            if (it->second.empty())
                it = comp->erase(it);
            else
                ++it;
        }
    return r;
}

}  // namespace mchom
