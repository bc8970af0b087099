#pragma once

#include <map>
#include <vector>

#include "gpml/graph.hpp"

namespace gpml {

using KernelMatrix = std::vector<std::vector<double>>;

/// Weisfeiler-Lehman subtree kernel: inner product of relabeling histograms
/// accumulated over iterations 0..h.
inline KernelMatrix wl_subtree_kernel(const GraphDataset& dataset, int h) {
    if (h < 0) throw config_error("wl_subtree_kernel: h must be >= 0");
    const int n = dataset.size();
    std::vector<std::vector<int>> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = dataset.graphs[i].vertex_labels;

    // per-sample sparse histogram over a global label dictionary
    std::vector<std::map<int, double>> hist(n);
    auto accumulate = [&](int offset) {
        for (int i = 0; i < n; ++i)
            for (int lab : labels[i]) ++hist[i][offset + lab];
    };

    int alphabet = dataset.vertex_alphabet();
    accumulate(0);
    int offset = alphabet;
    std::map<std::pair<int, std::vector<int>>, int> dict;
    for (int it = 0; it < h; ++it) {
        dict.clear();
        for (int i = 0; i < n; ++i) {
            const auto& g = dataset.graphs[i];
            std::vector<int> next(g.vertex_count());
            for (int v = 0; v < g.vertex_count(); ++v) {
                std::vector<int> neigh;
                neigh.reserve(g.adjacency[v].size());
                for (int e : g.adjacency[v]) neigh.push_back(labels[i][g.other_end(e, v)]);
                std::sort(neigh.begin(), neigh.end());
                auto key = std::pair{labels[i][v], std::move(neigh)};
                auto [pos, inserted] = dict.emplace(std::move(key), static_cast<int>(dict.size()));
                (void)inserted;
                next[v] = pos->second;
            }
            labels[i] = std::move(next);
        }
        accumulate(offset);
        offset += static_cast<int>(dict.size());
    }

    KernelMatrix k(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double dot = 0.0;
            const auto &a = hist[i], &b = hist[j];
            auto ia = a.begin();
            auto ib = b.begin();
            while (ia != a.end() && ib != b.end()) {
                if (ia->first < ib->first)
                    ++ia;
                else if (ib->first < ia->first)
                    ++ib;
                else {
                    dot += ia->second * ib->second;
                    ++ia, ++ib;
                }
            }
            k[i][j] = k[j][i] = dot;
        }
    }
    return k;
}

/// Jaccard similarity kernel for itemsets (positive semi-definite).
inline KernelMatrix jaccard_kernel(const ItemsetDataset& dataset) {
    const int n = dataset.size();
    KernelMatrix k(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const auto &a = dataset.samples[i], &b = dataset.samples[j];
            size_t ia = 0, ib = 0, inter = 0;
            while (ia < a.size() && ib < b.size()) {
                if (a[ia] < b[ib])
                    ++ia;
                else if (b[ib] < a[ia])
                    ++ib;
                else
                    ++inter, ++ia, ++ib;
            }
            size_t uni = a.size() + b.size() - inter;
            k[i][j] = k[j][i] = uni == 0 ? 1.0 : static_cast<double>(inter) / uni;
        }
    }
    return k;
}

/// k-spectrum kernel for sequences: inner product of k-gram count vectors.
inline KernelMatrix spectrum_kernel(const SequenceDataset& dataset, int gram) {
    if (gram < 1) throw config_error("spectrum_kernel: gram must be >= 1");
    const int n = dataset.size();
    std::vector<std::map<std::vector<int>, double>> hist(n);
    for (int i = 0; i < n; ++i) {
        const auto& s = dataset.samples[i];
        for (size_t p = 0; p + gram <= s.size(); ++p)
            ++hist[i][std::vector<int>(s.begin() + p, s.begin() + p + gram)];
    }
    KernelMatrix k(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double dot = 0.0;
            for (const auto& [gramv, c] : hist[i]) {
                auto it = hist[j].find(gramv);
                if (it != hist[j].end()) dot += c * it->second;
            }
            k[i][j] = k[j][i] = dot;
        }
    return k;
}

/// Distance induced by a kernel: sqrt(k(i,i) - 2 k(i,j) + k(j,j)).
inline double kernel_distance(const KernelMatrix& k, int i, int j) {
    return std::sqrt(pos(k[i][i] - 2.0 * k[i][j] + k[j][j]));
}

}  // namespace gpml
