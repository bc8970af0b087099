#pragma once

#include <random>

#include "gpml/dataset_io.hpp"
#include "gpml/dfs_code.hpp"
#include "gpml/graph.hpp"

namespace fixtures {

using gpml::GraphDataset;
using gpml::VertexLabeledGraph;

inline VertexLabeledGraph graph_of(std::vector<int> labels,
                                   std::vector<std::pair<int, int>> edges,
                                   std::vector<int> edge_labels = {}) {
    return gpml::make_graph(labels, edges, edge_labels);
}

inline GraphDataset dataset_of(std::vector<VertexLabeledGraph> graphs, std::vector<int> classes) {
    GraphDataset ds;
    ds.graphs = std::move(graphs);
    ds.class_labels = std::move(classes);
    int maxv = 0, maxe = 0;
    for (const auto& g : ds.graphs) {
        for (int l : g.vertex_labels) maxv = std::max(maxv, l);
        for (int l : g.edge_labels) maxe = std::max(maxe, l);
    }
    for (int l = 0; l <= maxv; ++l) ds.vertex_label_values.push_back(l);
    for (int l = 0; l <= maxe; ++l) ds.edge_label_values.push_back(l);
    return ds;
}

/// Random connected graph with the given vertex budget and label alphabet.
inline VertexLabeledGraph random_graph(std::mt19937_64& rng, int max_vertices, int alphabet,
                                       double extra_edge_prob = 0.3, int edge_alphabet = 1) {
    std::uniform_int_distribution<int> nv(2, max_vertices);
    int v = nv(rng);
    std::vector<int> labels(v);
    std::uniform_int_distribution<int> lab(0, alphabet - 1);
    std::uniform_int_distribution<int> elab(0, edge_alphabet - 1);
    for (auto& l : labels) l = lab(rng);
    std::vector<std::pair<int, int>> edges;
    std::vector<int> edge_labels;
    for (int i = 1; i < v; ++i) {
        std::uniform_int_distribution<int> parent(0, i - 1);
        edges.emplace_back(parent(rng), i);
        edge_labels.push_back(elab(rng));
    }
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < v; ++i)
        for (int j = i + 2; j < v; ++j)
            if (unif(rng) < extra_edge_prob / v) {
                edges.emplace_back(i, j);
                edge_labels.push_back(elab(rng));
            }
    return gpml::make_graph(labels, edges, edge_labels);
}

inline GraphDataset random_dataset(long seed, int n, int max_vertices, int alphabet,
                                   double extra_edge_prob = 0.3, int edge_alphabet = 1) {
    std::mt19937_64 rng(static_cast<unsigned long long>(seed));
    std::vector<VertexLabeledGraph> graphs;
    std::vector<int> classes;
    for (int i = 0; i < n; ++i) {
        graphs.push_back(random_graph(rng, max_vertices, alphabet, extra_edge_prob, edge_alphabet));
        classes.push_back(i % 2);
    }
    return dataset_of(std::move(graphs), std::move(classes));
}

/// 3-path with all labels 0: A-A-A.
inline VertexLabeledGraph path3_aaa() { return graph_of({0, 0, 0}, {{0, 1}, {1, 2}}); }

inline gpml::DfsCode code_of(std::initializer_list<gpml::EdgeTuple> tuples) {
    gpml::DfsCode c;
    for (const auto& t : tuples) c.tuples.push_back(t);
    return c;
}

}  // namespace fixtures
