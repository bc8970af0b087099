#pragma once

#include <random>

#include "gpml/graph.hpp"

namespace gpml {

struct SyntheticSpec {
    int n = 120;
    int min_vertices = 6;
    int max_vertices = 14;
    int vertex_alphabet = 4;  // motif labels live above this range
    double extra_edge_prob = 0.2;
    double motif_noise = 0.08;  // chance of planting the other class's motif
    long seed = 1;
};

/// Two-class benchmark generator: random connected backbones with one of two
/// class motifs bridged in (a small fraction carries the wrong motif).
inline GraphDataset make_synthetic_dataset(const SyntheticSpec& spec) {
    std::mt19937_64 rng(static_cast<unsigned long long>(spec.seed));
    auto unif = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    auto coin = [&](double p) {
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
    };

    const int A = spec.vertex_alphabet;
    // class 0: triangle (A, A+1, A+1); class 1: path A+2 - A+1 - A+2
    auto plant = [&](std::vector<int>& labels, std::vector<std::pair<int, int>>& edges, int cls) {
        int base = static_cast<int>(labels.size());
        if (cls == 0) {
            labels.insert(labels.end(), {A, A + 1, A + 1});
            edges.emplace_back(base, base + 1);
            edges.emplace_back(base + 1, base + 2);
            edges.emplace_back(base, base + 2);
        } else {
            labels.insert(labels.end(), {A + 2, A + 1, A + 2});
            edges.emplace_back(base, base + 1);
            edges.emplace_back(base + 1, base + 2);
        }
        edges.emplace_back(unif(0, base - 1), base);  // bridge into the backbone
    };

    GraphDataset ds;
    for (int lab = 0; lab < A + 3; ++lab) ds.vertex_label_values.push_back(lab);
    ds.edge_label_values.push_back(0);

    for (int s = 0; s < spec.n; ++s) {
        int cls = s % 2;
        int v = unif(spec.min_vertices, spec.max_vertices);
        std::vector<int> labels(v);
        for (int i = 0; i < v; ++i) labels[i] = unif(0, A - 1);
        std::vector<std::pair<int, int>> edges;
        for (int i = 1; i < v; ++i) edges.emplace_back(unif(0, i - 1), i);  // random tree
        for (int i = 0; i < v; ++i)
            for (int j = i + 2; j < v; ++j)
                if (coin(spec.extra_edge_prob / v)) edges.emplace_back(i, j);
        plant(labels, edges, coin(spec.motif_noise) ? 1 - cls : cls);
        ds.graphs.push_back(make_graph(labels, edges));
        ds.class_labels.push_back(cls);
    }
    return ds;
}

}  // namespace gpml
