#pragma once

#include <map>

#include "gpml/pairs.hpp"

namespace gpml {

/// Sparse non-negative primal weights keyed by feature index; absent = zero.
struct SparseWeights {
    std::map<int, double> w;

    double get(int k) const {
        auto it = w.find(k);
        return it == w.end() ? 0.0 : it->second;
    }
    void set(int k, double v) {
        if (v > 0.0)
            w[k] = v;
        else
            w.erase(k);
    }
    int nonzeros() const { return static_cast<int>(w.size()); }
    bool empty() const { return w.empty(); }
};

/// Learned squared distance between two sparse feature vectors.
inline double learned_distance(const SparseWeights& m, const SparseVec& f, const SparseVec& fp) {
    double d = 0.0;
    auto ia = f.begin();
    auto ib = fp.begin();
    while (ia != f.end() || ib != fp.end()) {
        int k;
        double diff;
        if (ib == fp.end() || (ia != f.end() && ia->first < ib->first)) {
            k = ia->first;
            diff = ia->second;
            ++ia;
        } else if (ia == f.end() || ib->first < ia->first) {
            k = ib->first;
            diff = -ib->second;
            ++ib;
        } else {
            k = ia->first;
            diff = ia->second - ib->second;
            ++ia, ++ib;
        }
        double w = m.get(k);
        if (w != 0.0 && diff != 0.0) d += w * diff * diff;
    }
    return d;
}

/// Per-feature reductions against the dual column space. C rows are never
/// materialized densely; every value is a sum over the columns touched by the
/// sparse feature column.
struct ColumnCache {
    std::vector<std::pair<int, double>> crow;  // (column, C_{k,col}) nonzeros
    double norm = 0.0;                         // ||C_{k,:}||_2

    // first pruning term: (column, max-bound^2) over cross-class / triplet columns
    std::vector<std::pair<int, double>> prune_dot;
    double prune_norm = 0.0;  // sqrt(sum of max-bound^4 over all columns)

    // tighter bounds for binary features (pairwise loss only)
    struct BinaryOwner {
        int owner;
        double xi;
        std::vector<int> d_cols_one;  // cross-class columns of this owner with x_partner = 1
        std::vector<int> s_cols_one;  // same-class columns of this owner with x_partner = 1
    };
    std::vector<BinaryOwner> bin_owners;
    double bin_norm = 0.0;  // sqrt(sum of max-bounds over all columns)
    bool has_binary = false;

    double dot(const std::vector<double>& q) const {
        double s = 0.0;
        for (const auto& [col, v] : crow) s += v * q[col];
        return s;
    }
};

/// Scratch space reused across cache builds.
struct ColumnWorkspace {
    std::vector<double> x;      // dense feature values per sample
    std::vector<int> col_mark;  // epoch stamps
    std::vector<int> own_mark;
    int epoch = 0;
};

inline ColumnCache build_column_cache(const PairColumnSpace& sp, const SparseVec& column,
                                      bool binary_features, ColumnWorkspace& ws) {
    if (ws.x.size() != static_cast<size_t>(sp.n)) {
        ws.x.assign(sp.n, 0.0);
        ws.col_mark.assign(sp.dim(), 0);
        ws.own_mark.assign(sp.n, 0);
        ws.epoch = 0;
    }
    ++ws.epoch;
    for (const auto& [s, v] : column) ws.x[s] = v;

    std::vector<int> touched;
    for (const auto& [s, v] : column) {
        (void)v;
        for (int col : sp.incident[s]) {
            if (ws.col_mark[col] == ws.epoch) continue;
            ws.col_mark[col] = ws.epoch;
            touched.push_back(col);
        }
    }
    std::sort(touched.begin(), touched.end());

    ColumnCache c;
    double norm2 = 0.0, pnorm4 = 0.0, bnorm = 0.0;
    for (int col : touched) {
        double value, dot_bound, norm_bound;
        if (sp.kind == PairColumnSpace::Kind::pairwise) {
            int i = sp.pairs.owner(col), p = sp.pairs.partner(col);
            double xi = ws.x[i], xp = ws.x[p];
            double d2 = sq(xi - xp);
            double mx = std::max(xi, xp);
            if (sp.pairs.is_same_col(col)) {
                value = -d2;
                dot_bound = 0.0;
            } else {
                value = d2;
                dot_bound = sq(mx);
            }
            norm_bound = sq(sq(mx));
            bnorm += mx;  // binary: max^4 = max
        } else {
            const auto& t = sp.triplets.triplets[col];
            double xi = ws.x[t.i], xj = ws.x[t.j], xl = ws.x[t.l];
            value = sq(xi - xl) - sq(xi - xj);
            dot_bound = sq(std::max(xi, xl));
            // the norm bound must also cover the subtracted same-class term
            norm_bound = sq(sq(std::max({xi, xj, xl})));
        }
        if (value != 0.0) {
            c.crow.emplace_back(col, value);
            norm2 += sq(value);
        }
        if (dot_bound != 0.0) c.prune_dot.emplace_back(col, dot_bound);
        pnorm4 += norm_bound;
    }
    c.norm = std::sqrt(norm2);
    c.prune_norm = std::sqrt(pnorm4);

    if (binary_features && sp.kind == PairColumnSpace::Kind::pairwise) {
        c.has_binary = true;
        c.bin_norm = std::sqrt(bnorm);
        std::vector<int> owners;
        for (const auto& [s, v] : column) {
            (void)v;
            if (ws.own_mark[s] != ws.epoch) {
                ws.own_mark[s] = ws.epoch;
                owners.push_back(s);
            }
        }
        for (int col : touched) {
            int i = sp.pairs.owner(col);
            if (ws.own_mark[i] != ws.epoch) {
                ws.own_mark[i] = ws.epoch;
                owners.push_back(i);
            }
        }
        std::sort(owners.begin(), owners.end());
        const auto& pr = sp.pairs;
        for (int i : owners) {
            ColumnCache::BinaryOwner bo;
            bo.owner = i;
            bo.xi = ws.x[i];
            for (int r = 0; r < pr.K; ++r) {
                if (ws.x[pr.D[i][r]] > 0.0) bo.d_cols_one.push_back(pr.d_col(i, r));
                if (ws.x[pr.S[i][r]] > 0.0) bo.s_cols_one.push_back(pr.s_col(i, r));
            }
            if (bo.xi > 0.0 || !bo.d_cols_one.empty() || !bo.s_cols_one.empty())
                c.bin_owners.push_back(std::move(bo));
        }
    }

    for (const auto& [s, v] : column) {
        (void)v;
        ws.x[s] = 0.0;
    }
    return c;
}

/// First term of the subtree bound: general form sums q over cross-class
/// columns weighted by max{x_i,x_partner}^2; the binary form takes the
/// per-sample max of the cross-class mass against the same-class slack.
inline double prune_dot_term(const ColumnCache& c, const PairColumnSpace& sp,
                             const std::vector<double>& q, bool binary) {
    if (!binary || !c.has_binary) {
        double s = 0.0;
        for (const auto& [col, w] : c.prune_dot) s += q[col] * w;
        return s;
    }
    const auto& pr = sp.pairs;
    double total = 0.0;
    for (const auto& bo : c.bin_owners) {
        double a = 0.0;
        for (int col : bo.d_cols_one) a += q[col];
        double b = 0.0;
        if (bo.xi > 0.0) {
            double qd = 0.0, qs_zero = 0.0;
            for (int r = 0; r < pr.K; ++r) {
                qd += q[pr.d_col(bo.owner, r)];
                qs_zero += q[pr.s_col(bo.owner, r)];
            }
            for (int col : bo.s_cols_one) qs_zero -= q[col];
            b = bo.xi * (qd - qs_zero);
        }
        total += std::max(a, b);
    }
    return total;
}

inline double prune_norm_term(const ColumnCache& c, bool binary) {
    return binary && c.has_binary ? c.bin_norm : c.prune_norm;
}

/// Subtree elimination bound: any descendant k' satisfies
/// C_{k',:} q + r ||C_{k',:}|| <= subtree_bound(k | q, r). Callers own the
/// q >= 0 contract; the screening layer exposes the checked entry point.
inline double subtree_bound(const ColumnCache& c, const PairColumnSpace& sp,
                            const std::vector<double>& q, double r, bool binary) {
    return prune_dot_term(c, sp, q, binary) + r * prune_norm_term(c, binary);
}

}  // namespace gpml
