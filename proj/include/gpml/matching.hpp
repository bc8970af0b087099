#pragma once

#include <functional>
#include <tuple>
#include <vector>

#include "gpml/common.hpp"

namespace gpml {

/// Maximum bipartite matching (Kuhn's augmenting paths) between [0,m) and
/// [0,n) given the admissible pairs.
inline int max_bipartite_matching(int m, int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(m);
    for (const auto& [a, b] : edges) adj[a].push_back(b);
    std::vector<int> match_right(n, -1);
    std::vector<char> used(n, 0);
    std::function<bool(int)> try_kuhn = [&](int a) -> bool {
        for (int b : adj[a]) {
            if (used[b]) continue;
            used[b] = 1;
            if (match_right[b] < 0 || try_kuhn(match_right[b])) {
                match_right[b] = a;
                return true;
            }
        }
        return false;
    };
    int matched = 0;
    for (int a = 0; a < m; ++a) {
        std::fill(used.begin(), used.end(), 0);
        if (try_kuhn(a)) ++matched;
    }
    return matched;
}

/// Minimum-cost injection of [0,m) into [0,n): every left vertex must be
/// assigned to a distinct right vertex along one of the given weighted edges.
/// Returns +inf when no complete assignment exists. Successive shortest paths
/// on the flow network, Bellman-Ford labels.
inline double min_cost_injection(int m, int n,
                                 const std::vector<std::tuple<int, int, double>>& edges) {
    if (m == 0) return 0.0;
    if (m > n) return kInf;
    struct Arc {
        int to, rev;
        int cap;
        double cost;
    };
    const int V = m + n + 2, src = m + n, snk = m + n + 1;
    std::vector<std::vector<Arc>> g(V);
    auto add = [&](int a, int b, int cap, double cost) {
        g[a].push_back({b, static_cast<int>(g[b].size()), cap, cost});
        g[b].push_back({a, static_cast<int>(g[a].size()) - 1, 0, -cost});
    };
    for (const auto& [a, b, c] : edges)
        if (std::isfinite(c)) add(a, m + b, 1, c);
    for (int a = 0; a < m; ++a) add(src, a, 1, 0.0);
    for (int b = 0; b < n; ++b) add(m + b, snk, 1, 0.0);

    double total = 0.0;
    int flow = m;
    std::vector<double> dist(V);
    std::vector<int> prev_v(V), prev_e(V);
    while (flow > 0) {
        std::fill(dist.begin(), dist.end(), kInf);
        dist[src] = 0.0;
        bool update = true;
        while (update) {
            update = false;
            for (int v = 0; v < V; ++v) {
                if (!std::isfinite(dist[v])) continue;
                for (size_t i = 0; i < g[v].size(); ++i) {
                    const Arc& a = g[v][i];
                    if (a.cap > 0 && dist[a.to] > dist[v] + a.cost + 1e-12) {
                        dist[a.to] = dist[v] + a.cost;
                        prev_v[a.to] = v;
                        prev_e[a.to] = static_cast<int>(i);
                        update = true;
                    }
                }
            }
        }
        if (!std::isfinite(dist[snk])) return kInf;
        for (int v = snk; v != src; v = prev_v[v]) {
            Arc& a = g[prev_v[v]][prev_e[v]];
            --a.cap;
            ++g[v][a.rev].cap;
        }
        total += dist[snk];
        --flow;
    }
    return total;
}

}  // namespace gpml
