#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>

#include "gpml/asif.hpp"
#include "gpml/dfs_code.hpp"
#include "gpml/graph.hpp"

namespace gpml {

enum class Backend { graph, itemset, sequence };
enum class FeatureMode { indicator, log_approx, asif, sim_asif };

inline const char* to_string(Backend b) {
    switch (b) {
        case Backend::graph: return "graph";
        case Backend::itemset: return "itemset";
        default: return "sequence";
    }
}
inline const char* to_string(FeatureMode m) {
    switch (m) {
        case FeatureMode::indicator: return "indicator";
        case FeatureMode::log_approx: return "log-approx";
        case FeatureMode::asif: return "asif";
        default: return "sim-asif";
    }
}

/// One match of a pattern in a graph: code position -> vertex, code edge ->
/// graph edge id.
struct Embedding {
    std::vector<int> verts;
    std::vector<int> edges;

    bool has_vertex(int v) const {
        return std::find(verts.begin(), verts.end(), v) != verts.end();
    }
    bool has_edge(int e) const {
        return std::find(edges.begin(), edges.end(), e) != edges.end();
    }
};

/// Greedy count of pairwise index-disjoint occurrences of a subsequence.
/// Advancing the most advanced compatible partial match maximizes the number
/// of completed disjoint copies.
inline int disjoint_subsequence_count(const std::vector<int>& text,
                                      const std::vector<int>& pattern) {
    const int p = static_cast<int>(pattern.size());
    if (p == 0) return 0;
    std::vector<long> partial(p, 0);  // partial[r]: matches holding r symbols
    long complete = 0;
    for (int x : text) {
        for (int r = p - 1; r >= 0; --r) {
            if (pattern[r] != x) continue;
            if (r > 0 && partial[r] == 0) continue;
            if (r > 0) --partial[r];
            if (r + 1 == p)
                ++complete;
            else
                ++partial[r + 1];
            break;
        }
    }
    return static_cast<int>(complete);
}

struct PatternNode {
    // graph backend
    DfsCode code;
    std::vector<int> occ_samples;                    // samples with embeddings, sorted
    std::vector<std::vector<Embedding>> embeddings;  // parallel to occ_samples
    // itemset / sequence backends
    std::vector<int> items;

    SparseVec counts;  // sample -> occurrence count (approximate for graphs)
    SparseVec column;  // sample -> feature value x_{.,k}

    double screening = kInf;  // cached lambda_a (range-based screening)
    double pruning = kInf;    // cached lambda'_a (range-based pruning)

    int feature_index = -1;
    int pattern_size = 0;  // vertices (graph) or items
    bool expanded = false;
    std::vector<std::unique_ptr<PatternNode>> children;
    PatternNode* parent = nullptr;
};

inline double feature_from_count(FeatureMode mode, double count) {
    switch (mode) {
        case FeatureMode::indicator: return count > 0.0 ? 1.0 : 0.0;
        case FeatureMode::log_approx: return count > 0.0 ? std::log1p(count) : 0.0;
        default: throw config_error("feature_from_count: asif features are not count-based");
    }
}

/// Number of unique matches of the pattern's starting edge among its
/// embeddings in one graph: an upper bound on the non-overlapping frequency
/// that is cheap to track and non-increasing along any descending tree path.
inline int approx_nonoverlap_count(const std::vector<Embedding>& embs) {
    std::set<int> start_edges;
    for (const auto& e : embs) start_edges.insert(e.edges[0]);
    return static_cast<int>(start_edges.size());
}

/// Monotone pattern tree over one of the three mining backends. Nodes are
/// expanded lazily; materialized nodes and their columns are immutable.
class PatternTree {
public:
    PatternTree(const GraphDataset& ds, FeatureMode mode, int max_pattern_size,
                AsifContext* asif = nullptr)
        : backend_(Backend::graph),
          mode_(mode),
          max_size_(max_pattern_size),
          graphs_(&ds),
          asif_(asif) {
        if ((mode == FeatureMode::asif || mode == FeatureMode::sim_asif) && asif_ == nullptr)
            throw config_error("PatternTree: asif feature modes need an AsifContext");
        root_ = std::make_unique<PatternNode>();
    }

    PatternTree(const ItemsetDataset& ds, FeatureMode mode, int max_pattern_size)
        : backend_(Backend::itemset), mode_(mode), max_size_(max_pattern_size), itemsets_(&ds) {
        if (mode != FeatureMode::indicator && mode != FeatureMode::log_approx)
            throw config_error("PatternTree: itemset backend supports count features only");
        root_ = std::make_unique<PatternNode>();
    }

    PatternTree(const SequenceDataset& ds, FeatureMode mode, int max_pattern_size)
        : backend_(Backend::sequence), mode_(mode), max_size_(max_pattern_size), sequences_(&ds) {
        if (mode != FeatureMode::indicator && mode != FeatureMode::log_approx)
            throw config_error("PatternTree: sequence backend supports count features only");
        root_ = std::make_unique<PatternNode>();
    }

    Backend backend() const { return backend_; }
    FeatureMode mode() const { return mode_; }
    int max_pattern_size() const { return max_size_; }
    PatternNode* root() { return root_.get(); }
    const PatternNode* root() const { return root_.get(); }
    int sample_count() const {
        switch (backend_) {
            case Backend::graph: return graphs_->size();
            case Backend::itemset: return itemsets_->size();
            default: return sequences_->size();
        }
    }

    /// Every node materialized so far, indexed by feature id.
    const std::vector<PatternNode*>& nodes() const { return registry_; }
    int node_count() const { return static_cast<int>(registry_.size()); }
    PatternNode* node(int feature_index) { return registry_[feature_index]; }

    /// Lazily creates the children of a node: all canonical one-step
    /// extensions with non-empty occurrence, in DFS-code order. Repeated calls
    /// return the cached list.
    const std::vector<std::unique_ptr<PatternNode>>& expand_children(PatternNode* node) {
        if (node->expanded) return node->children;
        node->expanded = true;
        switch (backend_) {
            case Backend::graph: expand_graph(node); break;
            case Backend::itemset: expand_itemset(node); break;
            case Backend::sequence: expand_sequence(node); break;
        }
        return node->children;
    }

    /// Depth-first full expansion (tests, lambda-free traversals). The visitor
    /// may return false to skip a subtree.
    void full_traverse(const std::function<bool(PatternNode*)>& visit) {
        walk(root_.get(), visit);
    }

    void reset_rule_caches() {
        for (PatternNode* n : registry_) {
            n->screening = kInf;
            n->pruning = kInf;
        }
    }

    /// Feature value of one sample under a count-based mode.
    double feature_value(const PatternNode* node, int sample, FeatureMode mode) const {
        return feature_from_count(mode, sparse_get(node->counts, sample));
    }

private:
    void walk(PatternNode* n, const std::function<bool(PatternNode*)>& visit) {
        if (n->feature_index >= 0 && !visit(n)) return;
        expand_children(n);
        for (auto& c : n->children) walk(c.get(), visit);
    }

    void register_node(PatternNode* n) {
        n->feature_index = static_cast<int>(registry_.size());
        registry_.push_back(n);
    }

    // ---- graph backend ----

    void expand_graph(PatternNode* node) {
        const auto& graphs = graphs_->graphs;
        std::map<EdgeTuple, std::pair<std::vector<int>, std::vector<std::vector<Embedding>>>,
                 decltype(&tuple_less)>
            exts(&tuple_less);

        auto push = [&](const EdgeTuple& t, int sample, Embedding e) {
            auto& slot = exts.try_emplace(t).first->second;
            if (slot.first.empty() || slot.first.back() != sample) {
                slot.first.push_back(sample);
                slot.second.emplace_back();
            }
            slot.second.back().push_back(std::move(e));
        };

        if (node->feature_index < 0) {
            // root: all single-edge patterns, oriented with from_label <= to_label
            for (int s = 0; s < graphs_->size(); ++s) {
                const auto& g = graphs[s];
                for (int e = 0; e < g.edge_count(); ++e) {
                    auto [u, v] = g.edges[e];
                    for (int dir = 0; dir < 2; ++dir) {
                        int a = dir ? v : u, b = dir ? u : v;
                        if (g.vertex_labels[a] > g.vertex_labels[b]) continue;
                        EdgeTuple t{0, 1, g.vertex_labels[a], g.edge_labels[e], g.vertex_labels[b]};
                        push(t, s, {{a, b}, {e}});
                    }
                }
            }
        } else {
            const auto rm = node->code.rightmost_path();
            const int maxto = node->code.tuples[rm[0]].to;
            const bool at_cap = node->pattern_size >= max_size_;
            for (size_t gi = 0; gi < node->occ_samples.size(); ++gi) {
                const int s = node->occ_samples[gi];
                const auto& g = graphs[s];
                for (const auto& emb : node->embeddings[gi]) {
                    const int rv = emb.verts[maxto];
                    // backward: rightmost vertex to earlier rightmost-path vertices
                    for (int r = static_cast<int>(rm.size()) - 1; r >= 1; --r) {
                        int pos = node->code.tuples[rm[r]].from;
                        int pv = emb.verts[pos];
                        for (int e : g.adjacency[rv]) {
                            if (g.other_end(e, rv) != pv || emb.has_edge(e)) continue;
                            EdgeTuple t{maxto, pos, g.vertex_labels[rv], g.edge_labels[e],
                                        g.vertex_labels[pv]};
                            Embedding ne = emb;
                            ne.edges.push_back(e);
                            push(t, s, std::move(ne));
                        }
                    }
                    // forward from rightmost-path vertices (adds a vertex)
                    if (at_cap) continue;
                    for (int r = -1; r < static_cast<int>(rm.size()); ++r) {
                        int pos = (r == -1) ? maxto : node->code.tuples[rm[r]].from;
                        int pv = emb.verts[pos];
                        for (int e : g.adjacency[pv]) {
                            int w = g.other_end(e, pv);
                            if (emb.has_vertex(w)) continue;
                            EdgeTuple t{pos, maxto + 1, g.vertex_labels[pv], g.edge_labels[e],
                                        g.vertex_labels[w]};
                            Embedding ne = emb;
                            ne.verts.push_back(w);
                            ne.edges.push_back(e);
                            push(t, s, std::move(ne));
                        }
                    }
                }
            }
        }

        for (auto& [t, occ] : exts) {
            DfsCode child_code = node->code;
            child_code.tuples.push_back(t);
            if (!is_minimum_dfs_code(child_code)) continue;
            auto child = std::make_unique<PatternNode>();
            child->code = std::move(child_code);
            child->pattern_size = child->code.vertex_count();
            child->occ_samples = std::move(occ.first);
            child->embeddings = std::move(occ.second);
            child->parent = node;
            finish_graph_node(child.get());
            node->children.push_back(std::move(child));
        }
    }

    void finish_graph_node(PatternNode* n) {
        for (size_t gi = 0; gi < n->occ_samples.size(); ++gi)
            n->counts.emplace_back(n->occ_samples[gi],
                                   static_cast<double>(approx_nonoverlap_count(n->embeddings[gi])));
        if (mode_ == FeatureMode::indicator || mode_ == FeatureMode::log_approx) {
            for (const auto& [s, c] : n->counts) n->column.emplace_back(s, feature_from_count(mode_, c));
        } else {
            auto pattern_labels = asif_->relabel(code_to_graph(n->code));
            for (int s = 0; s < graphs_->size(); ++s) {
                double v = mode_ == FeatureMode::asif ? asif_->asif_feature(pattern_labels, s)
                                                      : asif_->sim_asif_feature(pattern_labels, s);
                if (v > 0.0) n->column.emplace_back(s, v);
            }
        }
        register_node(n);
    }

    // ---- itemset backend ----

    void expand_itemset(PatternNode* node) {
        if (node->pattern_size >= max_size_ && node->feature_index >= 0) return;
        int alphabet = static_cast<int>(itemsets_->item_values.size());
        int lo = node->items.empty() ? 0 : node->items.back() + 1;
        for (int item = lo; item < alphabet; ++item) {
            std::vector<int> support;
            if (node->feature_index < 0) {
                for (int s = 0; s < itemsets_->size(); ++s)
                    if (std::binary_search(itemsets_->samples[s].begin(),
                                           itemsets_->samples[s].end(), item))
                        support.push_back(s);
            } else {
                for (int s : node->occ_samples)
                    if (std::binary_search(itemsets_->samples[s].begin(),
                                           itemsets_->samples[s].end(), item))
                        support.push_back(s);
            }
            if (support.empty()) continue;
            auto child = std::make_unique<PatternNode>();
            child->items = node->items;
            child->items.push_back(item);
            child->pattern_size = static_cast<int>(child->items.size());
            child->occ_samples = std::move(support);
            child->parent = node;
            for (int s : child->occ_samples) child->counts.emplace_back(s, 1.0);
            for (const auto& [s, c] : child->counts)
                child->column.emplace_back(s, feature_from_count(mode_, c));
            register_node(child.get());
            node->children.push_back(std::move(child));
        }
    }

    // ---- sequence backend ----

    void expand_sequence(PatternNode* node) {
        if (node->pattern_size >= max_size_ && node->feature_index >= 0) return;
        int alphabet = static_cast<int>(sequences_->item_values.size());
        const std::vector<int>* parent_support = nullptr;
        std::vector<int> all;
        if (node->feature_index < 0) {
            all.resize(sequences_->size());
            std::iota(all.begin(), all.end(), 0);
            parent_support = &all;
        } else {
            parent_support = &node->occ_samples;
        }
        for (int item = 0; item < alphabet; ++item) {
            std::vector<int> pat = node->items;
            pat.push_back(item);
            auto child = std::make_unique<PatternNode>();
            for (int s : *parent_support) {
                int c = disjoint_subsequence_count(sequences_->samples[s], pat);
                if (c > 0) {
                    child->occ_samples.push_back(s);
                    child->counts.emplace_back(s, static_cast<double>(c));
                }
            }
            if (child->occ_samples.empty()) continue;
            child->items = std::move(pat);
            child->pattern_size = static_cast<int>(child->items.size());
            child->parent = node;
            for (const auto& [s, c] : child->counts)
                child->column.emplace_back(s, feature_from_count(mode_, c));
            register_node(child.get());
            node->children.push_back(std::move(child));
        }
    }

    Backend backend_;
    FeatureMode mode_;
    int max_size_;
    const GraphDataset* graphs_ = nullptr;
    const ItemsetDataset* itemsets_ = nullptr;
    const SequenceDataset* sequences_ = nullptr;
    AsifContext* asif_ = nullptr;
    std::unique_ptr<PatternNode> root_;
    std::vector<PatternNode*> registry_;
};

/// Feature values of one graph for an explicit set of canonical codes,
/// enumerated by walking only tree branches that are prefixes of a selected
/// code. Returns one value per selected code (count-based modes).
inline std::vector<double> enumerate_for_test(const VertexLabeledGraph& graph,
                                              const std::vector<DfsCode>& selected,
                                              FeatureMode mode) {
    struct Trie {
        std::map<EdgeTuple, Trie, decltype(&tuple_less)> kids{&tuple_less};
        int selected_idx = -1;
    };
    Trie root;
    for (size_t i = 0; i < selected.size(); ++i) {
        Trie* cur = &root;
        for (const auto& t : selected[i].tuples) cur = &cur->kids.try_emplace(t).first->second;
        cur->selected_idx = static_cast<int>(i);
    }

    std::vector<double> values(selected.size(), 0.0);

    std::function<void(const Trie&, const DfsCode&, const std::vector<Embedding>&)> walk =
        [&](const Trie& trie, const DfsCode& prefix, const std::vector<Embedding>& embs) {
            if (trie.selected_idx >= 0)
                values[trie.selected_idx] = feature_from_count(mode, approx_nonoverlap_count(embs));
            if (trie.kids.empty()) return;
            const auto rm = prefix.rightmost_path();
            const int maxto = prefix.tuples[rm[0]].to;
            std::map<EdgeTuple, std::vector<Embedding>, decltype(&tuple_less)> exts(&tuple_less);
            for (const auto& emb : embs) {
                const int rv = emb.verts[maxto];
                for (int r = static_cast<int>(rm.size()) - 1; r >= 1; --r) {
                    int pos = prefix.tuples[rm[r]].from;
                    int pv = emb.verts[pos];
                    for (int e : graph.adjacency[rv]) {
                        if (graph.other_end(e, rv) != pv || emb.has_edge(e)) continue;
                        EdgeTuple t{maxto, pos, graph.vertex_labels[rv], graph.edge_labels[e],
                                    graph.vertex_labels[pv]};
                        if (!trie.kids.count(t)) continue;
                        Embedding ne = emb;
                        ne.edges.push_back(e);
                        exts[t].push_back(std::move(ne));
                    }
                }
                for (int r = -1; r < static_cast<int>(rm.size()); ++r) {
                    int pos = (r == -1) ? maxto : prefix.tuples[rm[r]].from;
                    int pv = emb.verts[pos];
                    for (int e : graph.adjacency[pv]) {
                        int w = graph.other_end(e, pv);
                        if (emb.has_vertex(w)) continue;
                        EdgeTuple t{pos, maxto + 1, graph.vertex_labels[pv], graph.edge_labels[e],
                                    graph.vertex_labels[w]};
                        if (!trie.kids.count(t)) continue;
                        Embedding ne = emb;
                        ne.verts.push_back(w);
                        ne.edges.push_back(e);
                        exts[t].push_back(std::move(ne));
                    }
                }
            }
            for (const auto& [t, child_embs] : exts) {
                DfsCode child = prefix;
                child.tuples.push_back(t);
                walk(trie.kids.at(t), child, child_embs);
            }
        };

    for (const auto& [t, child_trie] : root.kids) {
        std::vector<Embedding> embs;
        for (int e = 0; e < graph.edge_count(); ++e) {
            auto [u, v] = graph.edges[e];
            for (int dir = 0; dir < 2; ++dir) {
                int a = dir ? v : u, b = dir ? u : v;
                if (graph.vertex_labels[a] == t.from_label && graph.edge_labels[e] == t.edge_label &&
                    graph.vertex_labels[b] == t.to_label)
                    embs.push_back({{a, b}, {e}});
            }
        }
        if (embs.empty()) continue;
        DfsCode prefix;
        prefix.tuples.push_back(t);
        walk(child_trie, prefix, embs);
    }
    return values;
}

}  // namespace gpml
