#pragma once

// Sparse exact linear algebra over Q and F2: column-echelon reduction,
// rank, membership in a column space, and the filtration level search.
//
// The level search is persistence-style: order the rows of the target
// stratum by descending phi and column-reduce the boundary matrix so all
// column lows are distinct.  Reducing the cycle against those columns then
// minimizes its low position, i.e. maximizes the smallest phi over the
// support among all representatives of the class.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "khb/rational.hpp"

namespace khb::linalg {

struct QF {
    using Elem = Rat;
    static Elem from_int(long v) { return Rat(v); }
    static bool is_zero(const Elem& e) { return e == 0; }
    static Elem neg(const Elem& e) { return -e; }
    static Elem mul(const Elem& a, const Elem& b) { return a * b; }
    static Elem div(const Elem& a, const Elem& b) { return a / b; }
    static Elem add(const Elem& a, const Elem& b) { return a + b; }
};

struct F2 {
    using Elem = uint8_t;
    static Elem from_int(long v) { return static_cast<Elem>(v & 1); }
    static bool is_zero(Elem e) { return e == 0; }
    static Elem neg(Elem e) { return e; }
    static Elem mul(Elem a, Elem b) { return a & b; }
    static Elem div(Elem a, Elem b) {
        if (!b) throw std::domain_error("division by zero in F2");
        return a;
    }
    static Elem add(Elem a, Elem b) { return a ^ b; }
};

// entries sorted by row index
template <class F>
using SparseVec = std::vector<std::pair<int64_t, typename F::Elem>>;

template <class F>
void axpy(SparseVec<F>& y, const typename F::Elem& c, const SparseVec<F>& x) {
    SparseVec<F> out;
    out.reserve(y.size() + x.size());
    size_t a = 0, b = 0;
    while (a < y.size() || b < x.size()) {
        if (b == x.size() || (a < y.size() && y[a].first < x[b].first)) {
            out.push_back(y[a++]);
        } else if (a == y.size() || x[b].first < y[a].first) {
            auto e = F::mul(c, x[b].second);
            if (!F::is_zero(e)) out.emplace_back(x[b].first, e);
            ++b;
        } else {
            auto e = F::add(y[a].second, F::mul(c, x[b].second));
            if (!F::is_zero(e)) out.emplace_back(y[a].first, e);
            ++a, ++b;
        }
    }
    y.swap(out);
}

// Column-echelon accumulator with unique lows.
template <class F>
struct Reducer {
    std::vector<SparseVec<F>> cols;
    std::vector<SparseVec<F>> combos;  // cols[i] = D * combos[i], kept when tracking
    std::unordered_map<int64_t, size_t> low_of;
    bool track = false;

    // Reduces v in place against the stored columns; if combo is nonnull it
    // accumulates the applied combination of original columns.
    void reduce(SparseVec<F>& v, SparseVec<F>* combo = nullptr) const {
        while (!v.empty()) {
            auto it = low_of.find(v.back().first);
            if (it == low_of.end()) return;
            const auto& c = cols[it->second];
            auto f = F::neg(F::div(v.back().second, c.back().second));
            axpy<F>(v, f, c);
            if (combo && track) axpy<F>(*combo, f, combos[it->second]);
        }
    }

    // Adds the column D e_k. Returns false if it reduced to zero.
    bool add(SparseVec<F> v, int64_t k) {
        SparseVec<F> combo;
        if (track) combo.emplace_back(k, F::from_int(1));
        reduce(v, &combo);
        if (v.empty()) return false;
        low_of[v.back().first] = cols.size();
        cols.push_back(std::move(v));
        if (track) combos.push_back(std::move(combo));
        return true;
    }

    size_t rank() const { return cols.size(); }
};

template <class F>
int64_t rank(const std::vector<SparseVec<F>>& columns) {
    Reducer<F> r;
    for (size_t k = 0; k < columns.size(); ++k) r.add(columns[k], static_cast<int64_t>(k));
    return static_cast<int64_t>(r.rank());
}

template <class F>
bool in_column_space(const std::vector<SparseVec<F>>& columns, SparseVec<F> z) {
    Reducer<F> r;
    for (size_t k = 0; k < columns.size(); ++k) r.add(columns[k], static_cast<int64_t>(k));
    r.reduce(z);
    return z.empty();
}

// Solves D y = z; returns false when unsolvable.
template <class F>
bool solve(const std::vector<SparseVec<F>>& columns, SparseVec<F> z, SparseVec<F>& y) {
    Reducer<F> r;
    r.track = true;
    for (size_t k = 0; k < columns.size(); ++k) r.add(columns[k], static_cast<int64_t>(k));
    SparseVec<F> combo;
    r.reduce(z, &combo);
    if (!z.empty()) return false;
    y.clear();
    for (auto& [k, e] : combo) y.emplace_back(k, F::neg(e));
    return true;
}

// max over representatives z + D y of (min phi over the support), where phi
// is given per row of the target space.  Throws std::domain_error when the
// class of z is zero (every level is attainable).  If support is nonnull it
// receives the witness representative's rows.
template <class F>
Rat filtration_level_raw(const std::vector<Rat>& phi, const std::vector<SparseVec<F>>& columns,
                         const SparseVec<F>& z, std::vector<int64_t>* support = nullptr) {
    const int64_t nrows = static_cast<int64_t>(phi.size());
    std::vector<int64_t> order(nrows);
    for (int64_t r = 0; r < nrows; ++r) order[r] = r;
    std::sort(order.begin(), order.end(), [&](int64_t a, int64_t b) {
        if (phi[a] != phi[b]) return phi[a] > phi[b];
        return a < b;
    });
    std::vector<int64_t> pos(nrows);
    for (int64_t r = 0; r < nrows; ++r) pos[order[r]] = r;

    auto remap = [&](const SparseVec<F>& v) {
        SparseVec<F> out;
        out.reserve(v.size());
        for (auto& [r, e] : v) out.emplace_back(pos[r], e);
        std::sort(out.begin(), out.end());
        return out;
    };

    Reducer<F> red;
    for (size_t k = 0; k < columns.size(); ++k) red.add(remap(columns[k]), static_cast<int64_t>(k));
    SparseVec<F> w = remap(z);
    red.reduce(w);
    if (w.empty()) throw std::domain_error("filtration level of a vanishing class");
    if (support) {
        support->clear();
        for (auto& [r, e] : w) support->push_back(order[r]);
    }
    return phi[order[w.back().first]];
}

}  // namespace khb::linalg
