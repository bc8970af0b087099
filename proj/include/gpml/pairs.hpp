#pragma once

#include <algorithm>
#include <vector>

#include "gpml/kernels.hpp"

namespace gpml {

/// Per-sample neighbor pair sets. Column order of the 2nK dual space: all
/// cross-class (i,l) pairs first (sample-major), then all same-class (i,j)
/// pairs; the sign convention is +c_il for the first block and -c_ij for the
/// second. Targets are L on the first block and -U on the second.
struct PairSystem {
    int n = 0;
    int K = 0;
    double L = 1.0;
    double U = 0.0;
    std::vector<std::vector<int>> S;  // same-class neighbor indices, |S_i| = K
    std::vector<std::vector<int>> D;  // different-class neighbor indices, |D_i| = K

    int dim() const { return 2 * n * K; }
    bool is_same_col(int col) const { return col >= n * K; }
    int owner(int col) const { return (col % (n * K)) / K; }
    int partner(int col) const {
        int i = owner(col), r = col % K;
        return is_same_col(col) ? S[i][r] : D[i][r];
    }
    double target(int col) const { return is_same_col(col) ? -U : L; }
    int d_col(int i, int r) const { return i * K + r; }
    int s_col(int i, int r) const { return n * K + i * K + r; }
};

/// Selects the K nearest same-class and K nearest different-class samples for
/// every sample under the kernel-induced distance. Ties broken by smaller
/// sample index.
inline PairSystem select_pair_sets(const KernelMatrix& kernel, const std::vector<int>& class_labels,
                                   int K, double L, double U) {
    const int n = static_cast<int>(class_labels.size());
    if (K < 1) throw config_error("select_pair_sets: K must be >= 1");
    if (U < 0.0 || L < U) throw config_error("select_pair_sets: need 0 <= U <= L");
    if (static_cast<int>(kernel.size()) != n)
        throw config_error("select_pair_sets: kernel size does not match label count");

    std::map<int, int> class_count;
    for (int y : class_labels) ++class_count[y];
    for (const auto& [y, c] : class_count)
        if (c <= K)
            throw config_error("select_pair_sets: class " + std::to_string(y) + " has " +
                               std::to_string(c) + " members, needs more than K=" + std::to_string(K));

    PairSystem ps;
    ps.n = n;
    ps.K = K;
    ps.L = L;
    ps.U = U;
    ps.S.resize(n);
    ps.D.resize(n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            double da = kernel_distance(kernel, i, a), db = kernel_distance(kernel, i, b);
            return da != db ? da < db : a < b;
        });
        for (int j : order) {
            if (j == i) continue;
            if (class_labels[j] == class_labels[i]) {
                if (static_cast<int>(ps.S[i].size()) < K) ps.S[i].push_back(j);
            } else {
                if (static_cast<int>(ps.D[i].size()) < K) ps.D[i].push_back(j);
            }
            if (static_cast<int>(ps.S[i].size()) == K && static_cast<int>(ps.D[i].size()) == K) break;
        }
    }
    return ps;
}

/// Index set of triplets (i, j, l) with y_j = y_i and y_l != y_i.
struct TripletSet {
    struct Triplet {
        int i, j, l;
    };
    int n = 0;
    std::vector<Triplet> triplets;
};

/// Samples k_trip same-class and k_trip different-class neighbors per sample
/// (nearest under the kernel distance) and forms all k_trip^2 combinations.
inline TripletSet build_triplet_set(const KernelMatrix& kernel, const std::vector<int>& class_labels,
                                    int k_trip) {
    PairSystem ps = select_pair_sets(kernel, class_labels, k_trip, 1.0, 0.0);
    TripletSet ts;
    ts.n = ps.n;
    for (int i = 0; i < ps.n; ++i)
        for (int j : ps.S[i])
            for (int l : ps.D[i]) ts.triplets.push_back({i, j, l});
    return ts;
}

/// Unified dual-column space shared by the pairwise and triplet losses.
/// Pairwise: 2nK columns of C = [..., c_il, ..., -c_ij, ...]; triplet: |T|
/// columns c_ijl = c_il - c_ij with targets all 1 (L=1, U=0 semantics).
struct PairColumnSpace {
    enum class Kind { pairwise, triplet };
    Kind kind = Kind::pairwise;
    int n = 0;
    PairSystem pairs;      // valid when kind == pairwise
    TripletSet triplets;   // valid when kind == triplet

    // incidence: for each sample, the columns its feature value touches
    std::vector<std::vector<int>> incident;

    static PairColumnSpace make_pairwise(PairSystem ps) {
        PairColumnSpace sp;
        sp.kind = Kind::pairwise;
        sp.n = ps.n;
        sp.pairs = std::move(ps);
        sp.incident.assign(sp.n, {});
        for (int col = 0; col < sp.pairs.dim(); ++col) {
            sp.incident[sp.pairs.owner(col)].push_back(col);
            sp.incident[sp.pairs.partner(col)].push_back(col);
        }
        return sp;
    }

    static PairColumnSpace make_triplet(TripletSet ts) {
        PairColumnSpace sp;
        sp.kind = Kind::triplet;
        sp.n = ts.n;
        sp.triplets = std::move(ts);
        sp.incident.assign(sp.n, {});
        for (size_t c = 0; c < sp.triplets.triplets.size(); ++c) {
            const auto& t = sp.triplets.triplets[c];
            sp.incident[t.i].push_back(static_cast<int>(c));
            sp.incident[t.j].push_back(static_cast<int>(c));
            sp.incident[t.l].push_back(static_cast<int>(c));
        }
        return sp;
    }

    int dim() const {
        return kind == Kind::pairwise ? pairs.dim() : static_cast<int>(triplets.triplets.size());
    }

    double target(int col) const { return kind == Kind::pairwise ? pairs.target(col) : 1.0; }

    double loss_threshold_L() const { return kind == Kind::pairwise ? pairs.L : 1.0; }
    double loss_threshold_U() const { return kind == Kind::pairwise ? pairs.U : 0.0; }

    /// Dual point mapped from m = 0: 2L on positive-polarity columns, 0 on
    /// same-class columns.
    std::vector<double> alpha_at_zero() const {
        std::vector<double> a(dim(), 0.0);
        for (int col = 0; col < dim(); ++col)
            a[col] = 2.0 * pos(target(col));
        return a;
    }
};

}  // namespace gpml
