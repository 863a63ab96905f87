#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mchom/graded.hpp"
#include "mchom/linalg.hpp"
#include "mchom/scalar.hpp"

namespace mchom {

// Monomial over the generators of a free graded-commutative algebra:
// sorted (generator index, exponent) pairs, exponents of odd generators <= 1.
struct Monomial {
    std::vector<std::pair<int, int>> factors;

    bool operator<(const Monomial& o) const { return factors < o.factors; }
    bool operator==(const Monomial& o) const { return factors == o.factors; }
    bool is_unit() const { return factors.empty(); }
    int word_length() const {
        int n = 0;
        for (const auto& [g, e] : factors) n += e;
        return n;
    }
};

class FreeCDGA;

// Sparse sign-normalized sum of monomials with exact rational coefficients.
class Element {
  public:
    Element() = default;
    explicit Element(const FreeCDGA* owner) : owner_(owner) {}

    const FreeCDGA* owner() const { return owner_; }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& m, const Scalar& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    bool operator==(const Element& o) const { return owner_ == o.owner_ && terms_ == o.terms_; }

  private:
    const FreeCDGA* owner_ = nullptr;
    std::map<Monomial, Scalar> terms_;
};

// Free graded-commutative dg algebra Lambda(V) on finitely many generators,
// with a degree +1 differential given on generators.  Immutable once built;
// elements carry a pointer to their ambient algebra.
class FreeCDGA {
  public:
    using Element = mchom::Element;

    explicit FreeCDGA(GradedBasis generators) : generators_(std::move(generators)) {
        if (generators_.convention() != Convention::cohomological)
            throw Error("FreeCDGA: generators must use the cohomological convention");
        diffs_.assign(static_cast<std::size_t>(generators_.size()), Element(this));
    }

    FreeCDGA(const FreeCDGA&) = delete;
    FreeCDGA& operator=(const FreeCDGA&) = delete;

    const GradedBasis& generators() const { return generators_; }
    int num_generators() const { return generators_.size(); }
    int degree_of(int gen) const { return generators_.at(gen).degree; }
    const std::string& symbol_of(int gen) const { return generators_.at(gen).symbol; }

    void set_differential(int gen, Element value) {
        if (value.owner() != this) throw Error("set_differential: element from another algebra");
        diffs_.at(static_cast<std::size_t>(gen)) = std::move(value);
    }
    const Element& differential_of(int gen) const { return diffs_.at(static_cast<std::size_t>(gen)); }

    // d must raise degree by exactly one and square to zero on generators.
    // Returns the violating generator index on failure.
    void validate() const {
        for (int g = 0; g < num_generators(); ++g) {
            const Element& dv = diffs_[static_cast<std::size_t>(g)];
            for (const auto& [m, c] : dv.terms())
                if (monomial_degree(m) != degree_of(g) + 1)
                    throw Error("FreeCDGA: d(" + symbol_of(g) + ") is not homogeneous of degree +1");
            if (!is_zero(differential(dv)))
                throw Error("FreeCDGA: d^2 != 0 on generator " + symbol_of(g));
        }
    }

    Element zero() const { return Element(this); }
    Element unit(const Scalar& c) const {
        Element e(this);
        e.add_term(Monomial{}, c);
        return e;
    }
    Element gen(int i) const {
        Element e(this);
        e.add_term(Monomial{{{i, 1}}}, Scalar(1));
        return e;
    }

    int monomial_degree(const Monomial& m) const {
        int d = 0;
        for (const auto& [g, e] : m.factors) d += degree_of(g) * e;
        return d;
    }

    Element add(const Element& a, const Element& b) const {
        check_owner(a), check_owner(b);
        Element r = a;
        for (const auto& [m, c] : b.terms()) r.add_term(m, c);
        return r;
    }
    Element sub(const Element& a, const Element& b) const { return add(a, scale(b, Scalar(-1))); }
    Element scale(const Element& a, const Scalar& c) const {
        check_owner(a);
        Element r(this);
        if (c == 0) return r;
        for (const auto& [m, k] : a.terms()) r.add_term(m, k * c);
        return r;
    }

    // Graded-commutative product with Koszul signs; odd generators square to 0.
    Element multiply(const Element& a, const Element& b) const {
        check_owner(a), check_owner(b);
        Element r(this);
        for (const auto& [ma, ca] : a.terms())
            for (const auto& [mb, cb] : b.terms()) {
                auto [m, sign, zero] = merge_monomials(ma, mb);
                if (zero) continue;
                r.add_term(m, ca * cb * sign);
            }
        return r;
    }

    Element power(const Element& a, int n) const {
        Element r = unit(Scalar(1));
        for (int i = 0; i < n; ++i) r = multiply(r, a);
        return r;
    }

    // Degree +1 derivation extending the generator differentials.
    Element differential(const Element& x) const {
        check_owner(x);
        Element r(this);
        for (const auto& [m, c] : x.terms()) {
            int prefix_parity = 0;
            for (std::size_t pos = 0; pos < m.factors.size(); ++pos) {
                const auto [g, e] = m.factors[pos];
                const Element& dg = diffs_[static_cast<std::size_t>(g)];
                if (!dg.is_zero()) {
                    // m = P * g^e * S;  d contributes (-1)^{|P|} e * P g^{e-1} dg S.
                    Monomial left;
                    left.factors.assign(m.factors.begin(), m.factors.begin() + static_cast<std::ptrdiff_t>(pos));
                    if (e > 1) left.factors.push_back({g, e - 1});
                    Monomial right;
                    right.factors.assign(m.factors.begin() + static_cast<std::ptrdiff_t>(pos) + 1, m.factors.end());
                    Element term(this);
                    term.add_term(left, Scalar(1));
                    term = multiply(term, dg);
                    Element rm(this);
                    rm.add_term(right, Scalar(1));
                    term = multiply(term, rm);
                    Scalar coef = c * e;
                    if (parity(prefix_parity) == 1) coef = -coef;
                    r = add(r, scale(term, coef));
                }
                prefix_parity += degree_of(g) * e;
            }
        }
        return r;
    }

    bool is_zero(const Element& x) const { return x.is_zero(); }
    bool equal(const Element& a, const Element& b) const { return a == b; }

    std::vector<std::pair<int, Element>> components(const Element& x) const {
        check_owner(x);
        std::map<int, Element> by_degree;
        for (const auto& [m, c] : x.terms()) {
            const int d = monomial_degree(m);
            auto it = by_degree.find(d);
            if (it == by_degree.end()) it = by_degree.emplace(d, Element(this)).first;
            it->second.add_term(m, c);
        }
        return {by_degree.begin(), by_degree.end()};
    }

    std::string str(const Element& x) const {
        if (x.is_zero()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [m, c] : x.terms()) {
            Scalar v = c;
            if (first) {
                if (v < 0) {
                    out << "-";
                    v = -v;
                }
            } else {
                out << (v < 0 ? " - " : " + ");
                if (v < 0) v = -v;
            }
            first = false;
            if (m.is_unit()) {
                out << scalar_str(v);
                continue;
            }
            if (v != 1) out << scalar_str(v) << "*";
            bool fg = true;
            for (const auto& [g, e] : m.factors) {
                if (!fg) out << "*";
                fg = false;
                out << symbol_of(g);
                if (e > 1) out << "^" << e;
            }
        }
        return out.str();
    }

  private:
    void check_owner(const Element& x) const {
        if (x.owner() != this) throw Error("FreeCDGA: element belongs to a different algebra");
    }

    // Merge two sorted monomials; returns (monomial, koszul sign, vanished).
    std::tuple<Monomial, int, bool> merge_monomials(const Monomial& a, const Monomial& b) const {
        Monomial out;
        int sign = 1;
        int suffix_parity = 0;  // parity of the not-yet-consumed part of a
        for (const auto& [g, e] : a.factors) suffix_parity += degree_of(g) * e;
        std::size_t i = 0, j = 0;
        while (i < a.factors.size() || j < b.factors.size()) {
            const bool take_a =
                j == b.factors.size() ||
                (i < a.factors.size() && a.factors[i].first <= b.factors[j].first);
            if (take_a && j < b.factors.size() && a.factors[i].first == b.factors[j].first) {
                const auto [g, ea] = a.factors[i];
                const int eb = b.factors[j].second;
                if (parity(degree_of(g)) == 1 && ea + eb > 1) return {Monomial{}, 1, true};
                // b's block crosses the suffix of a strictly after this block;
                // its parity is even whenever it survives, so no sign.
                out.factors.push_back({g, ea + eb});
                suffix_parity -= degree_of(g) * ea;
                ++i, ++j;
            } else if (take_a) {
                const auto [g, e] = a.factors[i];
                out.factors.push_back({g, e});
                suffix_parity -= degree_of(g) * e;
                ++i;
            } else {
                const auto [g, e] = b.factors[j];
                if (parity(degree_of(g) * e) == 1 && parity(suffix_parity) == 1) sign = -sign;
                out.factors.push_back({g, e});
                ++j;
            }
        }
        return {out, sign, false};
    }

    GradedBasis generators_;
    std::vector<Element> diffs_;
};

// The ground field as a dg algebra concentrated in degree zero.
struct FieldElement {
    Scalar value = 0;
    bool operator==(const FieldElement& o) const { return value == o.value; }
};

class GroundField {
  public:
    using Element = FieldElement;

    Element zero() const { return {}; }
    Element unit(const Scalar& c) const { return {c}; }
    Element add(const Element& a, const Element& b) const { return {a.value + b.value}; }
    Element sub(const Element& a, const Element& b) const { return {a.value - b.value}; }
    Element scale(const Element& a, const Scalar& c) const { return {a.value * c}; }
    Element multiply(const Element& a, const Element& b) const { return {a.value * b.value}; }
    Element differential(const Element&) const { return {}; }
    bool is_zero(const Element& a) const { return a.value == 0; }
    bool equal(const Element& a, const Element& b) const { return a.value == b.value; }
    std::vector<std::pair<int, Element>> components(const Element& a) const {
        if (a.value == 0) return {};
        return {{0, a}};
    }
    std::string str(const Element& a) const { return scalar_str(a.value); }
};

inline const GroundField& ground() {
    static const GroundField k;
    return k;
}

// Morphism of dg algebras out of a FreeCDGA, given by generator values in an
// arbitrary target algebra (another FreeCDGA, the ground field, or an
// interval algebra).
template <class Target>
struct AlgebraMorphism {
    const FreeCDGA* source = nullptr;
    const Target* target = nullptr;
    std::vector<typename Target::Element> values;

    typename Target::Element apply(const Element& x) const {
        if (x.owner() != source) throw Error("AlgebraMorphism: element not from the source algebra");
        typename Target::Element out = target->zero();
        for (const auto& [m, c] : x.terms()) {
            typename Target::Element prod = target->unit(Scalar(1));
            for (const auto& [g, e] : m.factors)
                for (int k = 0; k < e; ++k)
                    prod = target->multiply(prod, values.at(static_cast<std::size_t>(g)));
            out = target->add(out, target->scale(prod, c));
        }
        return out;
    }

    bool operator==(const AlgebraMorphism& o) const {
        if (source != o.source || target != o.target || values.size() != o.values.size())
            return false;
        for (std::size_t i = 0; i < values.size(); ++i)
            if (!target->equal(values[i], o.values[i])) return false;
        return true;
    }
};

template <class Target>
struct MorphismCertificate {
    bool ok = true;
    // Nonzero residuals phi(dv) - d(phi(v)), by generator index.
    std::vector<std::pair<int, typename Target::Element>> residuals;
};

// Residual check phi(dv) = d(phi(v)) on every generator.  Degree mismatches
// in the assignment are hard errors; nonzero residuals are reported.
template <class Target>
MorphismCertificate<Target> check_morphism(const AlgebraMorphism<Target>& phi) {
    if (!phi.source || !phi.target) throw Error("check_morphism: unbound morphism");
    if (static_cast<int>(phi.values.size()) != phi.source->num_generators())
        throw Error("check_morphism: assignment does not cover all generators");
    for (int g = 0; g < phi.source->num_generators(); ++g) {
        for (const auto& [d, comp] : phi.target->components(phi.values[static_cast<std::size_t>(g)]))
            if (d != phi.source->degree_of(g))
                throw Error("check_morphism: value of " + phi.source->symbol_of(g) +
                            " is not homogeneous of degree " + std::to_string(phi.source->degree_of(g)));
    }
    MorphismCertificate<Target> cert;
    for (int g = 0; g < phi.source->num_generators(); ++g) {
        auto lhs = phi.apply(phi.source->differential_of(g));
        auto rhs = phi.target->differential(phi.values[static_cast<std::size_t>(g)]);
        auto res = phi.target->sub(lhs, rhs);
        if (!phi.target->is_zero(res)) {
            cert.ok = false;
            cert.residuals.push_back({g, std::move(res)});
        }
    }
    return cert;
}

template <class Target>
AlgebraMorphism<Target> make_morphism(const FreeCDGA& source, const Target& target,
                                      std::vector<typename Target::Element> values) {
    AlgebraMorphism<Target> phi{&source, &target, std::move(values)};
    auto cert = check_morphism(phi);
    if (!cert.ok)
        throw Error("make_morphism: assignment does not commute with differentials (generator " +
                    source.symbol_of(cert.residuals.front().first) + ")");
    return phi;
}

// Stage assignment of generators: d of a stage-i generator expands in
// generators of stages strictly below i.
struct SullivanOrder {
    std::vector<int> stage;  // per generator, >= 1

    int max_stage() const {
        int m = 0;
        for (int s : stage) m = std::max(m, s);
        return m;
    }
    // Generator indices sorted by (stage, index).
    std::vector<int> ordered() const {
        std::vector<int> idx(stage.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int a, int b) { return stage[static_cast<std::size_t>(a)] < stage[static_cast<std::size_t>(b)]; });
        return idx;
    }
};

struct SullivanOrderResult {
    bool ok = false;
    SullivanOrder order;
    std::vector<int> stuck;  // generator indices that never became eligible
};

// Greedy saturation: stage 1 holds the closed generators, stage i+1 the ones
// whose differential expands entirely in stages <= i.
inline SullivanOrderResult sullivan_order(const FreeCDGA& A) {
    const int n = A.num_generators();
    SullivanOrderResult res;
    res.order.stage.assign(static_cast<std::size_t>(n), 0);
    int assigned = 0;
    for (int stage = 1; assigned < n; ++stage) {
        bool progress = false;
        for (int g = 0; g < n; ++g) {
            if (res.order.stage[static_cast<std::size_t>(g)] != 0) continue;
            bool eligible = true;
            for (const auto& [m, c] : A.differential_of(g).terms())
                for (const auto& [h, e] : m.factors)
                    if (res.order.stage[static_cast<std::size_t>(h)] == 0 ||
                        res.order.stage[static_cast<std::size_t>(h)] >= stage)
                        eligible = false;
            if (stage == 1) eligible = A.differential_of(g).is_zero();
            if (eligible) {
                res.order.stage[static_cast<std::size_t>(g)] = stage;
                ++assigned, progress = true;
            }
        }
        if (!progress) {
            for (int g = 0; g < n; ++g)
                if (res.order.stage[static_cast<std::size_t>(g)] == 0) res.stuck.push_back(g);
            return res;
        }
    }
    res.ok = true;
    return res;
}

// Literal stage condition for a given assignment.
inline bool check_stage_condition(const FreeCDGA& A, const SullivanOrder& order) {
    for (int g = 0; g < A.num_generators(); ++g)
        for (const auto& [m, c] : A.differential_of(g).terms())
            for (const auto& [h, e] : m.factors)
                if (order.stage[static_cast<std::size_t>(h)] >= order.stage[static_cast<std::size_t>(g)])
                    return false;
    return true;
}

inline void enumerate_monomials_rec(const FreeCDGA& A, int gen, int budget, Monomial& cur,
                                    std::vector<Monomial>& out) {
    if (gen == A.num_generators()) {
        out.push_back(cur);
        return;
    }
    enumerate_monomials_rec(A, gen + 1, budget, cur, out);
    const int max_e = parity(A.degree_of(gen)) == 1 ? 1 : budget;
    for (int e = 1; e <= max_e && e <= budget; ++e) {
        cur.factors.push_back({gen, e});
        enumerate_monomials_rec(A, gen + 1, budget - e, cur, out);
        cur.factors.pop_back();
    }
}

// All monomials of word length <= cap (including 1), in canonical order.
inline std::vector<Monomial> enumerate_monomials(const FreeCDGA& A, int cap) {
    std::vector<Monomial> out;
    Monomial cur;
    enumerate_monomials_rec(A, 0, cap, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

struct CohomologyDims {
    std::vector<int> dims;  // per word-length cap 1..max_cap
    bool stabilized = false;
};

// Dimension of ker d / im d in one cohomological degree, restricted to the
// span of monomials of word length <= cap.  The differential does not
// preserve word length, so the result is honest only together with the
// stabilization flag (last three caps agree).
inline CohomologyDims cohomology_dim(const FreeCDGA& A, int degree, int max_cap) {
    if (max_cap < 1) throw Error("cohomology_dim: cap must be >= 1");
    CohomologyDims out;
    for (int cap = 1; cap <= max_cap; ++cap) {
        const auto all = enumerate_monomials(A, cap);
        std::vector<Monomial> dom, below;
        for (const auto& m : all) {
            if (m.word_length() <= cap && A.monomial_degree(m) == degree) dom.push_back(m);
            if (m.word_length() <= cap && A.monomial_degree(m) == degree - 1) below.push_back(m);
        }
        // Column space for images: every monomial that shows up.
        std::map<Monomial, std::size_t> col;
        auto image_of = [&](const Monomial& m) {
            Element e(&A);
            e.add_term(m, Scalar(1));
            return A.differential(e);
        };
        std::vector<Element> dom_images, below_images;
        for (const auto& m : dom) dom_images.push_back(image_of(m));
        for (const auto& m : below) below_images.push_back(image_of(m));
        for (const auto& e : dom_images)
            for (const auto& [m, c] : e.terms()) col.emplace(m, col.size());
        std::map<Monomial, std::size_t> col2;
        for (const auto& e : below_images)
            for (const auto& [m, c] : e.terms()) col2.emplace(m, col2.size());

        // ker(d) within the cap span.
        Mat dmat;
        for (const auto& e : dom_images) {
            Vec v(col.size(), Scalar(0));
            for (const auto& [m, c] : e.terms()) v[col.at(m)] = c;
            dmat.push_back(std::move(v));
        }
        const int ker_dim = static_cast<int>(dom.size()) - rank(dmat);

        // im(d from one degree below, cap span) intersected with the cap span.
        std::map<Monomial, std::size_t> inside;
        for (const auto& m : dom) inside.emplace(m, inside.size());
        Mat full, outside;
        for (const auto& e : below_images) {
            Vec v(col2.size(), Scalar(0));
            Vec w;
            for (const auto& [m, c] : e.terms()) v[col2.at(m)] = c;
            for (const auto& [m, i] : col2)
                if (!inside.count(m)) w.push_back(v[i]);
            full.push_back(std::move(v));
            outside.push_back(std::move(w));
        }
        const int im_dim = rank(full) - rank(outside);
        out.dims.push_back(ker_dim - im_dim);
    }
    const std::size_t n = out.dims.size();
    out.stabilized = n >= 3 && out.dims[n - 1] == out.dims[n - 2] && out.dims[n - 2] == out.dims[n - 3];
    return out;
}

// Sum of cohomology_dim over every degree realized by monomials within the
// cap, with a shared stabilization flag.
inline CohomologyDims cohomology_total(const FreeCDGA& A, int max_cap) {
    std::map<int, char> degrees;
    for (const auto& m : enumerate_monomials(A, max_cap))
        degrees[A.monomial_degree(m)] = 1;
    CohomologyDims out;
    out.dims.assign(static_cast<std::size_t>(max_cap), 0);
    out.stabilized = true;
    for (const auto& [deg, unused] : degrees) {
        const auto d = cohomology_dim(A, deg, max_cap);
        for (int c = 0; c < max_cap; ++c) out.dims[static_cast<std::size_t>(c)] += d.dims[static_cast<std::size_t>(c)];
    }
    const std::size_t n = out.dims.size();
    out.stabilized = n >= 3 && out.dims[n - 1] == out.dims[n - 2] && out.dims[n - 2] == out.dims[n - 3];
    return out;
}

}  // namespace mchom
