#pragma once

#include <map>
#include <vector>

#include "mchom/scalar.hpp"

namespace mchom {

using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>;

// In-place reduced row echelon form; returns the pivot column of each
// surviving row.  Zero rows are dropped.
inline std::vector<int> rref(Mat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        const Scalar inv = Scalar(1) / m[row][col];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            const Scalar f = m[r][col];
            for (std::size_t c = 0; c < cols; ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(static_cast<int>(col));
        ++row;
    }
    m.resize(row);
    return pivots;
}

inline int rank(Mat m) {
    return static_cast<int>(rref(m).size());
}

// Basis of the null space of m (vectors x with m.x = 0), columns = `cols`.
inline Mat null_space(Mat m, std::size_t cols) {
    const std::vector<int> pivots = rref(m);
    std::vector<char> is_pivot(cols, 0);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = 1;
    Mat basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        Vec v(cols, Scalar(0));
        v[free_col] = 1;
        for (std::size_t r = 0; r < m.size(); ++r)
            v[static_cast<std::size_t>(pivots[r])] = -m[r][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

class RowSpan;
inline RowSpan span_intersection(const RowSpan& a, const RowSpan& b);

// An exact subspace kept in reduced row echelon form.
class RowSpan {
  public:
    RowSpan() = default;
    explicit RowSpan(std::size_t cols) : cols_(cols) {}

    std::size_t cols() const { return cols_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    const Mat& rows() const { return rows_; }

    // Returns true if the vector enlarged the span.
    bool insert(Vec v) {
        if (v.size() != cols_) throw Error("RowSpan: dimension mismatch");
        reduce(v);
        bool zero = true;
        for (const auto& x : v)
            if (x != 0) { zero = false; break; }
        if (zero) return false;
        std::size_t lead = 0;
        while (v[lead] == 0) ++lead;
        const Scalar inv = Scalar(1) / v[lead];
        for (auto& x : v) x *= inv;
        for (auto& r : rows_) {
            if (r[lead] == 0) continue;
            const Scalar f = r[lead];
            for (std::size_t c = 0; c < cols_; ++c) r[c] -= f * v[c];
        }
        std::size_t pos = 0;
        while (pos < rows_.size() && lead_of(rows_[pos]) < lead) ++pos;
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
        return true;
    }

    bool contains(Vec v) const {
        if (v.size() != cols_) throw Error("RowSpan: dimension mismatch");
        reduce(v);
        for (const auto& x : v)
            if (x != 0) return false;
        return true;
    }

    bool contains_span(const RowSpan& other) const {
        for (const auto& r : other.rows_)
            if (!contains(r)) return false;
        return true;
    }

    bool operator==(const RowSpan& other) const {
        return dim() == other.dim() && contains_span(other);
    }

  private:
    static std::size_t lead_of(const Vec& r) {
        std::size_t i = 0;
        while (i < r.size() && r[i] == 0) ++i;
        return i;
    }

    void reduce(Vec& v) const {
        for (const auto& r : rows_) {
            const std::size_t lead = lead_of(r);
            if (lead >= cols_ || v[lead] == 0) continue;
            const Scalar f = v[lead];
            for (std::size_t c = 0; c < cols_; ++c) v[c] -= f * r[c];
        }
    }

    std::size_t cols_ = 0;
    Mat rows_;
};

// Exact intersection of two spans: solve U^T a = V^T b and collect U^T a.
inline RowSpan span_intersection(const RowSpan& a, const RowSpan& b) {
    if (a.cols() != b.cols()) throw Error("span_intersection: dimension mismatch");
    const std::size_t dim = a.cols();
    const std::size_t na = a.rows().size(), nb = b.rows().size();
    RowSpan out(dim);
    if (na == 0 || nb == 0) return out;
    Mat sys(dim, Vec(na + nb, Scalar(0)));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t c = 0; c < dim; ++c) sys[c][i] = a.rows()[i][c];
    for (std::size_t j = 0; j < nb; ++j)
        for (std::size_t c = 0; c < dim; ++c) sys[c][na + j] = -b.rows()[j][c];
    for (const auto& coeffs : null_space(std::move(sys), na + nb)) {
        Vec v(dim, Scalar(0));
        for (std::size_t i = 0; i < na; ++i)
            for (std::size_t c = 0; c < dim; ++c) v[c] += coeffs[i] * a.rows()[i][c];
        out.insert(std::move(v));
    }
    return out;
}

}  // namespace mchom
