#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "gpml/common.hpp"

namespace gpml {

/// Undirected graph with discrete vertex labels and optional edge labels.
/// Invariants kept by all constructors/loaders: no self-loops, no duplicate
/// edges, connected.
struct VertexLabeledGraph {
    std::vector<int> vertex_labels;               // dense label ids
    std::vector<std::pair<int, int>> edges;       // u < v
    std::vector<int> edge_labels;                 // parallel to edges
    std::vector<std::vector<int>> adjacency;      // vertex -> incident edge ids

    int vertex_count() const { return static_cast<int>(vertex_labels.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    int other_end(int edge_id, int v) const {
        const auto& [a, b] = edges[edge_id];
        return a == v ? b : a;
    }

    void finalize() {
        adjacency.assign(vertex_labels.size(), {});
        for (int e = 0; e < edge_count(); ++e) {
            adjacency[edges[e].first].push_back(e);
            adjacency[edges[e].second].push_back(e);
        }
    }
};

/// Builds a graph from raw vertex labels and an edge list; drops self-loops,
/// merges duplicate edges, and keeps only the largest connected component
/// (ties broken by the component containing the smallest vertex id).
inline VertexLabeledGraph make_graph(const std::vector<int>& labels,
                                     const std::vector<std::pair<int, int>>& raw_edges,
                                     const std::vector<int>& raw_edge_labels = {}) {
    const int n = static_cast<int>(labels.size());
    if (n == 0) {
        VertexLabeledGraph empty;
        empty.finalize();
        return empty;
    }
    std::map<std::pair<int, int>, int> uniq;
    for (size_t i = 0; i < raw_edges.size(); ++i) {
        auto [u, v] = raw_edges[i];
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        int el = raw_edge_labels.empty() ? 0 : raw_edge_labels[i];
        uniq.emplace(std::pair{u, v}, el);
    }

    // connected components by union-find
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [uv, el] : uniq) {
        (void)el;
        int a = find(uv.first), b = find(uv.second);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int> comp_size(n, 0);
    for (int v = 0; v < n; ++v) ++comp_size[find(v)];
    int best = 0;
    for (int v = 1; v < n; ++v)
        if (comp_size[find(v)] > comp_size[find(best)]) best = find(v);
    best = find(best);

    std::vector<int> remap(n, -1);
    VertexLabeledGraph g;
    for (int v = 0; v < n; ++v) {
        if (find(v) == best) {
            remap[v] = g.vertex_count();
            g.vertex_labels.push_back(labels[v]);
        }
    }
    for (const auto& [uv, el] : uniq) {
        if (remap[uv.first] < 0 || remap[uv.second] < 0) continue;
        g.edges.emplace_back(remap[uv.first], remap[uv.second]);
        g.edge_labels.push_back(el);
    }
    g.finalize();
    return g;
}

/// Labeled graph dataset. Vertex/edge labels are remapped to dense ids; the
/// original values are kept for export.
struct GraphDataset {
    std::vector<VertexLabeledGraph> graphs;
    std::vector<int> class_labels;
    std::vector<long> vertex_label_values;  // dense id -> original value
    std::vector<long> edge_label_values;

    int size() const { return static_cast<int>(graphs.size()); }
    int vertex_alphabet() const { return static_cast<int>(vertex_label_values.size()); }
};

/// Itemset dataset: each sample is a set of item ids.
struct ItemsetDataset {
    std::vector<std::vector<int>> samples;  // sorted, unique items
    std::vector<int> class_labels;
    std::vector<long> item_values;

    int size() const { return static_cast<int>(samples.size()); }
};

/// Sequence dataset: each sample is an ordered list of item ids.
struct SequenceDataset {
    std::vector<std::vector<int>> samples;
    std::vector<int> class_labels;
    std::vector<long> item_values;

    int size() const { return static_cast<int>(samples.size()); }
};

}  // namespace gpml
