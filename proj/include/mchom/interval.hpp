#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mchom/cdga.hpp"
#include "mchom/scalar.hpp"

namespace mchom {

template <class B>
class IntervalAlgebra;

// Element of B (x) Lambda(t,dt): a t-polynomial part and a dt part, each a
// dense-up-to-top list of B-coefficients.  Canonical form keeps the B
// coefficient to the left of the power of t and of dt.
template <class B>
class IntervalElement {
  public:
    IntervalElement() = default;
    explicit IntervalElement(const B* base) : base_(base) {}

    const B* base() const { return base_; }

    const std::vector<typename B::Element>& t_part() const { return t_; }
    const std::vector<typename B::Element>& dt_part() const { return dt_; }

    typename B::Element t_coeff(std::size_t j) const {
        return j < t_.size() ? t_[j] : base_->zero();
    }
    typename B::Element dt_coeff(std::size_t i) const {
        return i < dt_.size() ? dt_[i] : base_->zero();
    }

    void set_t_coeff(std::size_t j, typename B::Element v) {
        if (t_.size() <= j) t_.resize(j + 1, base_->zero());
        t_[j] = std::move(v);
        trim();
    }
    void set_dt_coeff(std::size_t i, typename B::Element v) {
        if (dt_.size() <= i) dt_.resize(i + 1, base_->zero());
        dt_[i] = std::move(v);
        trim();
    }

    std::size_t t_size() const { return t_.size(); }
    std::size_t dt_size() const { return dt_.size(); }

    void trim() {
        while (!t_.empty() && base_->is_zero(t_.back())) t_.pop_back();
        while (!dt_.empty() && base_->is_zero(dt_.back())) dt_.pop_back();
    }

  private:
    const B* base_ = nullptr;
    std::vector<typename B::Element> t_, dt_;

    friend class IntervalAlgebra<B>;
};

// The dg algebra B (x) Lambda(t,dt).  t is central of degree 0, dt has degree
// +1 and anticommutes with odd B-components; d(b t^j) = (db) t^j +
// (-1)^{|b|} j b t^{j-1} dt and d(b t^i dt) = (db) t^i dt.
template <class B>
class IntervalAlgebra {
  public:
    using Element = IntervalElement<B>;

    explicit IntervalAlgebra(const B* base) : base_(base) {}

    const B& base() const { return *base_; }

    Element zero() const { return Element(base_); }
    Element unit(const Scalar& c) const {
        Element e(base_);
        if (c != 0) e.set_t_coeff(0, base_->unit(c));
        return e;
    }
    Element from_base(typename B::Element b) const {
        Element e(base_);
        e.set_t_coeff(0, std::move(b));
        return e;
    }
    Element t_power(std::size_t j, typename B::Element b) const {
        Element e(base_);
        e.set_t_coeff(j, std::move(b));
        return e;
    }
    Element dt_power(std::size_t i, typename B::Element b) const {
        Element e(base_);
        e.set_dt_coeff(i, std::move(b));
        return e;
    }

    Element add(const Element& x, const Element& y) const {
        check(x), check(y);
        Element r(base_);
        r.t_.resize(std::max(x.t_.size(), y.t_.size()), base_->zero());
        r.dt_.resize(std::max(x.dt_.size(), y.dt_.size()), base_->zero());
        for (std::size_t j = 0; j < r.t_.size(); ++j) r.t_[j] = base_->add(x.t_coeff(j), y.t_coeff(j));
        for (std::size_t i = 0; i < r.dt_.size(); ++i) r.dt_[i] = base_->add(x.dt_coeff(i), y.dt_coeff(i));
        r.trim();
        return r;
    }
    Element sub(const Element& x, const Element& y) const { return add(x, scale(y, Scalar(-1))); }
    Element scale(const Element& x, const Scalar& c) const {
        check(x);
        Element r(base_);
        if (c == 0) return r;
        r.t_.reserve(x.t_.size());
        r.dt_.reserve(x.dt_.size());
        for (const auto& b : x.t_) r.t_.push_back(base_->scale(b, c));
        for (const auto& b : x.dt_) r.dt_.push_back(base_->scale(b, c));
        r.trim();
        return r;
    }

    Element multiply(const Element& x, const Element& y) const {
        check(x), check(y);
        Element r(base_);
        // (a t^j)(b t^k) and (a t^j)(b t^k dt): no crossing.
        for (std::size_t j = 0; j < x.t_.size(); ++j) {
            if (base_->is_zero(x.t_[j])) continue;
            for (std::size_t k = 0; k < y.t_.size(); ++k)
                accumulate_t(r, j + k, base_->multiply(x.t_[j], y.t_[k]));
            for (std::size_t k = 0; k < y.dt_.size(); ++k)
                accumulate_dt(r, j + k, base_->multiply(x.t_[j], y.dt_[k]));
        }
        // (a t^j dt)(b t^k): dt crosses b, picking up (-1)^{|b|}.
        for (std::size_t j = 0; j < x.dt_.size(); ++j) {
            if (base_->is_zero(x.dt_[j])) continue;
            for (std::size_t k = 0; k < y.t_.size(); ++k)
                for (const auto& [deg, comp] : base_->components(y.t_[k])) {
                    auto prod = base_->multiply(x.dt_[j], comp);
                    if (parity(deg) == 1) prod = base_->scale(prod, Scalar(-1));
                    accumulate_dt(r, j + k, std::move(prod));
                }
            // (a dt)(b dt) = 0.
        }
        r.trim();
        return r;
    }

    Element differential(const Element& x) const {
        check(x);
        Element r(base_);
        for (std::size_t j = 0; j < x.t_.size(); ++j) {
            if (base_->is_zero(x.t_[j])) continue;
            accumulate_t(r, j, base_->differential(x.t_[j]));
            if (j >= 1)
                for (const auto& [deg, comp] : base_->components(x.t_[j])) {
                    auto term = base_->scale(comp, Scalar(static_cast<int>(j)));
                    if (parity(deg) == 1) term = base_->scale(term, Scalar(-1));
                    accumulate_dt(r, j - 1, std::move(term));
                }
        }
        for (std::size_t i = 0; i < x.dt_.size(); ++i)
            if (!base_->is_zero(x.dt_[i])) accumulate_dt(r, i, base_->differential(x.dt_[i]));
        r.trim();
        return r;
    }

    bool is_zero(const Element& x) const {
        for (const auto& b : x.t_)
            if (!base_->is_zero(b)) return false;
        for (const auto& b : x.dt_)
            if (!base_->is_zero(b)) return false;
        return true;
    }
    bool equal(const Element& x, const Element& y) const { return is_zero(sub(x, y)); }

    // Homogeneous decomposition; a dt carries degree +1.
    std::vector<std::pair<int, Element>> components(const Element& x) const {
        check(x);
        std::map<int, Element> by_degree;
        auto slot = [&](int d) -> Element& {
            auto it = by_degree.find(d);
            if (it == by_degree.end()) it = by_degree.emplace(d, Element(base_)).first;
            return it->second;
        };
        for (std::size_t j = 0; j < x.t_.size(); ++j)
            for (const auto& [deg, comp] : base_->components(x.t_[j])) {
                auto& e = slot(deg);
                e.set_t_coeff(j, base_->add(e.t_coeff(j), comp));
            }
        for (std::size_t i = 0; i < x.dt_.size(); ++i)
            for (const auto& [deg, comp] : base_->components(x.dt_[i])) {
                auto& e = slot(deg + 1);
                e.set_dt_coeff(i, base_->add(e.dt_coeff(i), comp));
            }
        std::vector<std::pair<int, Element>> out;
        for (auto& [d, e] : by_degree) {
            e.trim();
            if (!is_zero(e)) out.push_back({d, std::move(e)});
        }
        return out;
    }

    std::string str(const Element& x) const {
        if (is_zero(x)) return "0";
        std::ostringstream out;
        bool first = true;
        auto emit = [&](const std::string& coeff, std::size_t power, bool dt) {
            if (!first) out << " + ";
            first = false;
            out << "(" << coeff << ")";
            if (power > 0) {
                out << "*t";
                if (power > 1) out << "^" << power;
            }
            if (dt) out << "*dt";
        };
        for (std::size_t j = 0; j < x.t_part().size(); ++j)
            if (!base_->is_zero(x.t_part()[j])) emit(base_->str(x.t_part()[j]), j, false);
        for (std::size_t i = 0; i < x.dt_part().size(); ++i)
            if (!base_->is_zero(x.dt_part()[i])) emit(base_->str(x.dt_part()[i]), i, true);
        return out.str();
    }

    // Substitutes t := value, dt := 0; a dg algebra morphism for any value.
    typename B::Element ev(const Element& x, const Scalar& value) const {
        check(x);
        typename B::Element out = base_->zero();
        Scalar p = 1;
        for (std::size_t j = 0; j < x.t_.size(); ++j) {
            out = base_->add(out, base_->scale(x.t_[j], p));
            p *= value;
        }
        return out;
    }

    // The reparametrization t |-> t^{n+1}, dt |-> (n+1) t^n dt; an algebra
    // endomorphism commuting with the differential.
    Element reparam_rho(int n, const Element& x) const {
        if (n < 0) throw Error("reparam_rho: n must be >= 0");
        check(x);
        Element r(base_);
        const std::size_t step = static_cast<std::size_t>(n) + 1;
        for (std::size_t j = 0; j < x.t_.size(); ++j)
            if (!base_->is_zero(x.t_[j])) accumulate_t(r, j * step, x.t_[j]);
        for (std::size_t i = 0; i < x.dt_.size(); ++i)
            if (!base_->is_zero(x.dt_[i]))
                accumulate_dt(r, i * step + static_cast<std::size_t>(n),
                              base_->scale(x.dt_[i], Scalar(static_cast<int>(step))));
        r.trim();
        return r;
    }

  private:
    void check(const Element& x) const {
        if (x.base() != base_) throw Error("IntervalAlgebra: element over a different base algebra");
    }
    void accumulate_t(Element& r, std::size_t j, typename B::Element v) const {
        r.set_t_coeff(j, base_->add(r.t_coeff(j), std::move(v)));
    }
    void accumulate_dt(Element& r, std::size_t i, typename B::Element v) const {
        r.set_dt_coeff(i, base_->add(r.dt_coeff(i), std::move(v)));
    }

    const B* base_;
};

// B (x) Lambda(t,dt) (x) Lambda(s,ds), with s outermost: coefficients of
// s^k and s^k ds live in B (x) Lambda(t,dt).  dt*ds is retained.
template <class B>
using BiIntervalElement = IntervalElement<IntervalAlgebra<B>>;

// Collapse morphism chi: t |-> u, s |-> u, dt |-> du, ds |-> du, dt*ds |-> 0.
// The result lives in B (x) Lambda(u,du), represented by the same interval
// type in the variable u.
template <class B>
IntervalElement<B> chi_collapse(const IntervalAlgebra<IntervalAlgebra<B>>& outer,
                                const BiIntervalElement<B>& x) {
    const IntervalAlgebra<B>& inner = outer.base();
    IntervalElement<B> out = inner.zero();
    IntervalElement<B> du = inner.dt_power(0, inner.base().unit(Scalar(1)));
    for (std::size_t k = 0; k < x.t_part().size(); ++k) {
        // coefficient of s^k, already an element of B (x) Lambda(t,dt);
        // renaming t to u is the identity on the representation.
        IntervalElement<B> term = x.t_part()[k];
        IntervalElement<B> uk = inner.t_power(k, inner.base().unit(Scalar(1)));
        out = inner.add(out, inner.multiply(term, uk));
    }
    for (std::size_t k = 0; k < x.dt_part().size(); ++k) {
        IntervalElement<B> term = x.dt_part()[k];
        IntervalElement<B> uk = inner.t_power(k, inner.base().unit(Scalar(1)));
        out = inner.add(out, inner.multiply(inner.multiply(term, uk), du));
    }
    return out;
}

}  // namespace mchom
