#pragma once

#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "gpml/graph.hpp"
#include "gpml/matching.hpp"

namespace gpml {

/// Level-h hierarchical label: the same vertex's level h-1 label plus the
/// multiset of its neighbors' level h-1 labels. Level-1 labels are the base
/// vertex labels with an empty multiset. Labels are hash-consed per level, so
/// an id pair fully identifies structural equality.
struct HierarchicalLabel {
    int base = -1;                // level 1 only
    int parent = -1;              // id at level h-1 (level >= 2)
    std::vector<int> neighbors;   // sorted ids at level h-1 (level >= 2)
};

/// Hash-consed store of hierarchical labels for a fixed relabeling depth.
/// Shared between pattern and data graphs so ids are comparable.
class LabelStore {
public:
    explicit LabelStore(int levels) : levels_(levels), tables_(levels), labels_(levels) {}

    int levels() const { return levels_; }

    int intern_base(int base_label) {
        auto [it, fresh] = tables_[0].emplace(std::pair{base_label, std::vector<int>{}},
                                              static_cast<int>(labels_[0].size()));
        if (fresh) labels_[0].push_back({base_label, -1, {}});
        return it->second;
    }

    int intern(int level, int parent, std::vector<int> neighbors) {
        std::sort(neighbors.begin(), neighbors.end());
        auto [it, fresh] = tables_[level - 1].emplace(std::pair{parent, neighbors},
                                                      static_cast<int>(labels_[level - 1].size()));
        if (fresh) labels_[level - 1].push_back({-1, parent, std::move(neighbors)});
        return it->second;
    }

    const HierarchicalLabel& label(int level, int id) const { return labels_[level - 1][id]; }

    /// Per-vertex label ids for levels 1..T.
    std::vector<std::vector<int>> relabel(const VertexLabeledGraph& g) {
        std::vector<std::vector<int>> lab(levels_);
        lab[0].resize(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v) lab[0][v] = intern_base(g.vertex_labels[v]);
        for (int h = 2; h <= levels_; ++h) {
            lab[h - 1].resize(g.vertex_count());
            for (int v = 0; v < g.vertex_count(); ++v) {
                std::vector<int> neigh;
                neigh.reserve(g.adjacency[v].size());
                for (int e : g.adjacency[v]) neigh.push_back(lab[h - 2][g.other_end(e, v)]);
                lab[h - 1][v] = intern(h, lab[h - 2][v], std::move(neigh));
            }
        }
        return lab;
    }

private:
    using Key = std::pair<int, std::vector<int>>;
    int levels_;
    std::vector<std::map<Key, int>> tables_;
    std::vector<std::vector<HierarchicalLabel>> labels_;
};

/// Square non-negative dissimilarity over the vertex-label alphabet; +inf
/// entries mark forbidden substitutions. Zero diagonal.
struct DissimilarityMatrix {
    std::vector<std::vector<double>> d;

    int size() const { return static_cast<int>(d.size()); }
    double at(int a, int b) const { return d[a][b]; }

    static DissimilarityMatrix exact_match(int alphabet) {
        DissimilarityMatrix m;
        m.d.assign(alphabet, std::vector<double>(alphabet, kInf));
        for (int i = 0; i < alphabet; ++i) m.d[i][i] = 0.0;
        return m;
    }
};

/// Adjacency-frequency heuristic: each label is represented by its
/// L2-normalized vector of adjacency counts against every label; the matrix
/// holds pairwise Euclidean distances. A label that never appears next to
/// anything keeps the zero vector, so its distance to any observed label is 1.
inline DissimilarityMatrix build_dissimilarity_from_adjacency(const GraphDataset& dataset) {
    if (dataset.size() == 0) throw config_error("build_dissimilarity_from_adjacency: empty dataset");
    const int A = dataset.vertex_alphabet();
    std::vector<std::vector<double>> f(A, std::vector<double>(A, 0.0));
    for (const auto& g : dataset.graphs) {
        for (int e = 0; e < g.edge_count(); ++e) {
            int a = g.vertex_labels[g.edges[e].first];
            int b = g.vertex_labels[g.edges[e].second];
            f[a][b] += 1.0;
            f[b][a] += 1.0;
        }
    }
    for (auto& row : f) {
        double norm = 0.0;
        for (double v : row) norm += v * v;
        if (norm > 0.0) {
            norm = std::sqrt(norm);
            for (double& v : row) v /= norm;
        }
    }
    DissimilarityMatrix m;
    m.d.assign(A, std::vector<double>(A, 0.0));
    for (int a = 0; a < A; ++a)
        for (int b = a + 1; b < A; ++b) {
            double s = 0.0;
            for (int t = 0; t < A; ++t) s += sq(f[a][t] - f[b][t]);
            m.d[a][b] = m.d[b][a] = std::sqrt(s);
        }
    return m;
}

/// Headerless numeric matrix with a label-order sidecar file (one original
/// label value per line).
inline DissimilarityMatrix load_dissimilarity(const std::string& matrix_path,
                                              const std::string& sidecar_path,
                                              const GraphDataset& dataset) {
    std::ifstream ms(matrix_path);
    if (!ms) throw io_error("cannot open dissimilarity matrix: " + matrix_path);
    std::ifstream ls(sidecar_path);
    if (!ls) throw io_error("cannot open dissimilarity label sidecar: " + sidecar_path);

    std::vector<long> order;
    long v;
    while (ls >> v) order.push_back(v);
    const int A = dataset.vertex_alphabet();
    if (static_cast<int>(order.size()) != A)
        throw format_error(sidecar_path + ":1: expected " + std::to_string(A) + " labels");
    std::vector<int> to_dense(A, -1);
    for (int i = 0; i < A; ++i) {
        auto it = std::find(dataset.vertex_label_values.begin(), dataset.vertex_label_values.end(),
                            order[i]);
        if (it == dataset.vertex_label_values.end())
            throw format_error(sidecar_path + ":" + std::to_string(i + 1) + ": unknown label " +
                               std::to_string(order[i]));
        to_dense[i] = static_cast<int>(it - dataset.vertex_label_values.begin());
    }

    DissimilarityMatrix m;
    m.d.assign(A, std::vector<double>(A, 0.0));
    for (int i = 0; i < A; ++i)
        for (int j = 0; j < A; ++j) {
            double x;
            if (!(ms >> x))
                throw format_error(matrix_path + ": expected " + std::to_string(A * A) + " entries");
            m.d[to_dense[i]][to_dense[j]] = x;
        }
    return m;
}

struct AsifConfig {
    int levels = 3;        // relabeling depth T
    double rho = 1.0;      // exponential scale
    double threshold = 0.0;  // feature threshold t in (0,1]; 0 disables
};

/// Evaluates inclusion and transport costs between hierarchical labels of one
/// fixed data graph set and query patterns. Memoizes per label-id pair.
class AsifContext {
public:
    AsifContext(const GraphDataset& dataset, AsifConfig config, DissimilarityMatrix dissim)
        : dataset_(&dataset),
          config_(config),
          dissim_(std::move(dissim)),
          store_(config.levels),
          incl_memo_(config.levels),
          cost_memo_(config.levels) {
        if (config_.levels < 1) throw config_error("asif: relabeling depth must be >= 1");
        if (config_.rho <= 0.0) throw config_error("asif: rho must be positive");
        graph_labels_.reserve(dataset.size());
        for (const auto& g : dataset.graphs) graph_labels_.push_back(store_.relabel(g));
        cutoff_ = config_.threshold > 0.0 ? -std::log(config_.threshold) / config_.rho : kInf;
    }

    const AsifConfig& config() const { return config_; }
    LabelStore& store() { return store_; }

    std::vector<std::vector<int>> relabel(const VertexLabeledGraph& g) { return store_.relabel(g); }

    /// L_P(u,h) included in L_G(v,h): level-1 labels must be equal; above that
    /// the previous-level labels must be included and the neighbor multisets
    /// must admit an injection of pairwise-included entries.
    bool label_included(int level, int a, int b) {
        if (a == b) return true;
        if (level == 1) return false;  // level-1 labels are hash-consed
        auto key = std::pair{a, b};
        auto it = incl_memo_[level - 1].find(key);
        if (it != incl_memo_[level - 1].end()) return it->second;
        const auto& la = store_.label(level, a);
        const auto& lb = store_.label(level, b);
        bool ok = false;
        if (la.neighbors.size() <= lb.neighbors.size() &&
            label_included(level - 1, la.parent, lb.parent)) {
            std::vector<std::pair<int, int>> edges;
            for (size_t i = 0; i < la.neighbors.size(); ++i)
                for (size_t j = 0; j < lb.neighbors.size(); ++j)
                    if (label_included(level - 1, la.neighbors[i], lb.neighbors[j]))
                        edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
            ok = max_bipartite_matching(static_cast<int>(la.neighbors.size()),
                                        static_cast<int>(lb.neighbors.size()),
                                        edges) == static_cast<int>(la.neighbors.size());
        }
        incl_memo_[level - 1].emplace(key, ok);
        return ok;
    }

    /// Asymmetric transport cost between hierarchical labels; +inf when the
    /// neighbor multisets admit no complete assignment or the dissimilarity
    /// forbids the base substitution. Costs above the threshold cutoff are
    /// collapsed to +inf at every level.
    double label_cost(int level, int a, int b) {
        const auto& la = store_.label(level, a);
        const auto& lb = store_.label(level, b);
        if (level == 1) {
            double c = dissim_.at(la.base, lb.base);
            return c > cutoff_ ? kInf : c;
        }
        auto key = std::pair{a, b};
        auto it = cost_memo_[level - 1].find(key);
        if (it != cost_memo_[level - 1].end()) return it->second;
        double c = label_cost(level - 1, la.parent, lb.parent);
        if (std::isfinite(c)) {
            c += multiset_transport(level - 1, la.neighbors, lb.neighbors);
            if (c > cutoff_) c = kInf;
        }
        cost_memo_[level - 1].emplace(key, c);
        return c;
    }

    /// LTC between two multisets of same-level labels (minimum-cost injection).
    double multiset_transport(int level, const std::vector<int>& from, const std::vector<int>& to) {
        if (from.size() > to.size()) return kInf;
        if (from.empty()) return 0.0;
        std::vector<std::tuple<int, int, double>> edges;
        for (size_t i = 0; i < from.size(); ++i)
            for (size_t j = 0; j < to.size(); ++j) {
                double c = label_cost(level, from[i], to[j]);
                if (std::isfinite(c)) edges.emplace_back(static_cast<int>(i), static_cast<int>(j), c);
            }
        return min_cost_injection(static_cast<int>(from.size()), static_cast<int>(to.size()), edges);
    }

    /// ASIF: 1 iff an injection maps every level-T label of the pattern into
    /// an including level-T label of the sample graph.
    double asif_feature(const std::vector<std::vector<int>>& pattern_labels, int sample) {
        const auto& pl = pattern_labels[config_.levels - 1];
        const auto& gl = graph_labels_[sample][config_.levels - 1];
        if (pl.size() > gl.size()) return 0.0;
        std::vector<std::pair<int, int>> edges;
        for (size_t i = 0; i < pl.size(); ++i)
            for (size_t j = 0; j < gl.size(); ++j)
                if (label_included(config_.levels, pl[i], gl[j]))
                    edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        int got = max_bipartite_matching(static_cast<int>(pl.size()), static_cast<int>(gl.size()),
                                         edges);
        return got == static_cast<int>(pl.size()) ? 1.0 : 0.0;
    }

    /// GTC: transport of all level-T pattern labels into the sample's.
    double graph_transport_cost(const std::vector<std::vector<int>>& pattern_labels, int sample) {
        return multiset_transport(config_.levels, pattern_labels[config_.levels - 1],
                                  graph_labels_[sample][config_.levels - 1]);
    }

    /// sim-ASIF: exp(-rho GTC), thresholded to 0 when <= t.
    double sim_asif_feature(const std::vector<std::vector<int>>& pattern_labels, int sample) {
        double gtc = graph_transport_cost(pattern_labels, sample);
        if (!std::isfinite(gtc)) return 0.0;
        double v = std::exp(-config_.rho * gtc);
        if (config_.threshold > 0.0 && v <= config_.threshold) return 0.0;
        return v;
    }

private:
    const GraphDataset* dataset_;
    AsifConfig config_;
    DissimilarityMatrix dissim_;
    LabelStore store_;
    double cutoff_ = kInf;
    std::vector<std::vector<std::vector<int>>> graph_labels_;  // sample -> level -> vertex -> id
    std::vector<std::map<std::pair<int, int>, bool>> incl_memo_;
    std::vector<std::map<std::pair<int, int>, double>> cost_memo_;
};

}  // namespace gpml
