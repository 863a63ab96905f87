#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mchom/scalar.hpp"

namespace mchom {

enum class Convention { homological, cohomological };

struct BasisEntry {
    std::string symbol;
    int degree = 0;
};

// A finite ordered basis of a graded vector space.  Degrees are read in the
// declared convention; flipping the convention negates nothing here, it only
// changes how operations interpret the numbers.
class GradedBasis {
  public:
    GradedBasis() = default;
    GradedBasis(std::vector<BasisEntry> entries, Convention convention)
        : entries_(std::move(entries)), convention_(convention) {
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (!index_.emplace(entries_[i].symbol, static_cast<int>(i)).second)
                throw Error("duplicate basis symbol '" + entries_[i].symbol + "'");
        }
    }

    Convention convention() const { return convention_; }
    int size() const { return static_cast<int>(entries_.size()); }
    const BasisEntry& at(int i) const { return entries_.at(static_cast<std::size_t>(i)); }
    const std::vector<BasisEntry>& entries() const { return entries_; }

    std::optional<int> find(const std::string& symbol) const {
        auto it = index_.find(symbol);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    int index_of(const std::string& symbol) const {
        auto i = find(symbol);
        if (!i) throw Error("unknown basis symbol '" + symbol + "'");
        return *i;
    }

    std::vector<int> indices_of_degree(int degree) const {
        std::vector<int> out;
        for (int i = 0; i < size(); ++i)
            if (entries_[static_cast<std::size_t>(i)].degree == degree) out.push_back(i);
        return out;
    }

    bool operator==(const GradedBasis& other) const {
        if (convention_ != other.convention_ || size() != other.size()) return false;
        for (int i = 0; i < size(); ++i)
            if (at(i).symbol != other.at(i).symbol || at(i).degree != other.at(i).degree)
                return false;
        return true;
    }

  private:
    std::vector<BasisEntry> entries_;
    Convention convention_ = Convention::homological;
    std::map<std::string, int> index_;
};

// Sign of reordering a tuple (x_0,...,x_{n-1}) into (x_{p[0]},...,x_{p[n-1]}):
// each crossing of two odd-degree elements contributes -1.
inline int koszul_sign(const std::vector<int>& permutation, const std::vector<int>& degrees) {
    if (permutation.size() != degrees.size())
        throw Error("koszul_sign: permutation/degree length mismatch");
    const int n = static_cast<int>(permutation.size());
    {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        for (int v : permutation) {
            if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
                throw Error("koszul_sign: not a permutation");
            seen[static_cast<std::size_t>(v)] = 1;
        }
    }
    int sign = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (permutation[static_cast<std::size_t>(i)] > permutation[static_cast<std::size_t>(j)] &&
                parity(degrees[static_cast<std::size_t>(permutation[static_cast<std::size_t>(i)])]) == 1 &&
                parity(degrees[static_cast<std::size_t>(permutation[static_cast<std::size_t>(j)])]) == 1)
                sign = -sign;
    return sign;
}

// Sorts `indices` ascending by bubble sort and returns the Koszul sign of the
// reordering, where the element currently at slot j carries degrees[j].
// Used for symmetric-key normalization.
inline int koszul_sort_with_degrees(std::vector<int>& indices, std::vector<int>& degrees) {
    int sign = 1;
    const std::size_t n = indices.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j + 1 < n - i; ++j)
            if (indices[j] > indices[j + 1]) {
                if (parity(degrees[j]) == 1 && parity(degrees[j + 1]) == 1) sign = -sign;
                std::swap(indices[j], indices[j + 1]);
                std::swap(degrees[j], degrees[j + 1]);
            }
    return sign;
}

// (sg)_n = g_{n-1}: degrees go up by one, symbols get the "s" prefix.
inline GradedBasis suspend(const GradedBasis& b) {
    if (b.convention() != Convention::homological)
        throw Error("suspend: expected a homological basis");
    std::vector<BasisEntry> out;
    out.reserve(static_cast<std::size_t>(b.size()));
    for (const auto& e : b.entries()) out.push_back({"s" + e.symbol, e.degree + 1});
    return GradedBasis(std::move(out), Convention::homological);
}

// The dual of a homological degree-m element sits in cohomological degree m,
// so the dual of (sg)_n = g_{n-1} lands in cohomological degree n.
inline GradedBasis dualize(const GradedBasis& b) {
    if (b.convention() != Convention::homological)
        throw Error("dualize: expected a homological basis");
    std::vector<BasisEntry> out;
    out.reserve(static_cast<std::size_t>(b.size()));
    for (const auto& e : b.entries()) out.push_back({"^" + e.symbol, e.degree});
    return GradedBasis(std::move(out), Convention::cohomological);
}

// Degree-homogeneous linear map between graded bases, stored sparsely.
// Every nonzero entry must respect the declared degree shift exactly.
class GradedMap {
  public:
    GradedMap(GradedBasis source, GradedBasis target, int degree_shift)
        : source_(std::move(source)), target_(std::move(target)), shift_(degree_shift) {}

    void set(const std::string& src, const std::string& tgt, const Scalar& value) {
        const int i = source_.index_of(src);
        const int j = target_.index_of(tgt);
        if (value == 0) {
            entries_.erase({i, j});
            return;
        }
        if (target_.at(j).degree != source_.at(i).degree + shift_)
            throw Error("GradedMap: entry (" + src + " -> " + tgt + ") violates degree shift");
        entries_[{i, j}] = value;
    }

    Scalar get(const std::string& src, const std::string& tgt) const {
        auto it = entries_.find({source_.index_of(src), target_.index_of(tgt)});
        return it == entries_.end() ? Scalar(0) : it->second;
    }

    const GradedBasis& source() const { return source_; }
    const GradedBasis& target() const { return target_; }
    int shift() const { return shift_; }
    const std::map<std::pair<int, int>, Scalar>& entries() const { return entries_; }

    // Image of a source basis vector, as (target index -> coefficient).
    std::map<int, Scalar> apply(int source_index) const {
        std::map<int, Scalar> out;
        for (const auto& [key, val] : entries_)
            if (key.first == source_index) out[key.second] = val;
        return out;
    }

  private:
    GradedBasis source_;
    GradedBasis target_;
    int shift_ = 0;
    std::map<std::pair<int, int>, Scalar> entries_;
};

}  // namespace mchom
