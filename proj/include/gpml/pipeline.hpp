#pragma once

#include "gpml/dataset_io.hpp"
#include "gpml/model_io.hpp"
#include "gpml/postprocess.hpp"
#include "gpml/synthetic.hpp"

namespace gpml {

/// Dataset holder across the three backends.
struct LoadedData {
    Backend backend = Backend::graph;
    GraphDataset graphs;
    ItemsetDataset itemsets;
    SequenceDataset sequences;

    int size() const {
        switch (backend) {
            case Backend::graph: return graphs.size();
            case Backend::itemset: return itemsets.size();
            default: return sequences.size();
        }
    }
    const std::vector<int>& labels() const {
        switch (backend) {
            case Backend::graph: return graphs.class_labels;
            case Backend::itemset: return itemsets.class_labels;
            default: return sequences.class_labels;
        }
    }
};

inline LoadedData load_dataset(const TrainConfig& config) {
    LoadedData d;
    d.backend = config.backend_enum();
    if (config.dataset_name.empty()) throw config_error("dataset_name must be set");
    try {
        switch (d.backend) {
            case Backend::graph:
                d.graphs = load_tu_dataset(config.dataset_dir, config.dataset_name);
                break;
            case Backend::itemset:
                d.itemsets = load_itemset_dataset(config.dataset_dir, config.dataset_name);
                break;
            case Backend::sequence:
                d.sequences = load_sequence_dataset(config.dataset_dir, config.dataset_name);
                break;
        }
    } catch (const io_error& e) {
        throw config_error(std::string("dataset not found: ") + e.what());
    }
    return d;
}

namespace detail {

inline LoadedData subset(const LoadedData& d, const std::vector<int>& idx) {
    LoadedData out;
    out.backend = d.backend;
    switch (d.backend) {
        case Backend::graph:
            out.graphs.vertex_label_values = d.graphs.vertex_label_values;
            out.graphs.edge_label_values = d.graphs.edge_label_values;
            for (int i : idx) {
                out.graphs.graphs.push_back(d.graphs.graphs[i]);
                out.graphs.class_labels.push_back(d.graphs.class_labels[i]);
            }
            break;
        case Backend::itemset:
            out.itemsets.item_values = d.itemsets.item_values;
            for (int i : idx) {
                out.itemsets.samples.push_back(d.itemsets.samples[i]);
                out.itemsets.class_labels.push_back(d.itemsets.class_labels[i]);
            }
            break;
        case Backend::sequence:
            out.sequences.item_values = d.sequences.item_values;
            for (int i : idx) {
                out.sequences.samples.push_back(d.sequences.samples[i]);
                out.sequences.class_labels.push_back(d.sequences.class_labels[i]);
            }
            break;
    }
    return out;
}

inline KernelMatrix backend_kernel(const LoadedData& d, const TrainConfig& config) {
    switch (d.backend) {
        case Backend::graph: return wl_subtree_kernel(d.graphs, config.wl_iterations);
        case Backend::itemset: return jaccard_kernel(d.itemsets);
        default: return spectrum_kernel(d.sequences, config.spectrum_gram);
    }
}

inline DissimilarityMatrix resolve_dissimilarity(const TrainConfig& config,
                                                 const GraphDataset& train_graphs) {
    if (config.feature_enum() == FeatureMode::asif)
        return DissimilarityMatrix::exact_match(train_graphs.vertex_alphabet());
    if (config.dissimilarity.empty()) return build_dissimilarity_from_adjacency(train_graphs);
    return load_dissimilarity(config.dissimilarity, config.dissimilarity + ".labels", train_graphs);
}

}  // namespace detail

/// Full training pipeline: split, pair selection, mining tree, path-wise
/// optimization, bundle on disk. Returns the path result.
inline SolveResult cmd_train(const TrainConfig& config) {
    LoadedData data = load_dataset(config);
    const int n = data.size();
    auto split = make_split(n, config.train_ratio, config.val_ratio, config.seed);
    std::vector<int> train_idx;
    for (int i = 0; i < n; ++i)
        if (split[i] == Role::train) train_idx.push_back(i);
    LoadedData train = detail::subset(data, train_idx);

    KernelMatrix kernel = detail::backend_kernel(train, config);

    PairColumnSpace space;
    PairSystem pairs = select_pair_sets(kernel, train.labels(), config.K, config.L, config.U);
    if (config.loss == "pairwise") {
        space = PairColumnSpace::make_pairwise(pairs);
    } else if (config.loss == "triplet") {
        space = PairColumnSpace::make_triplet(
            build_triplet_set(kernel, train.labels(), config.triplet_k));
    } else {
        throw config_error("unknown loss '" + config.loss + "'");
    }

    FeatureMode mode = config.feature_enum();
    std::unique_ptr<AsifContext> asif;
    std::unique_ptr<PatternTree> tree;
    DissimilarityMatrix dissim;
    switch (data.backend) {
        case Backend::graph:
            if (mode == FeatureMode::asif || mode == FeatureMode::sim_asif) {
                dissim = detail::resolve_dissimilarity(config, train.graphs);
                AsifConfig ac{config.asif_levels, config.asif_rho,
                              mode == FeatureMode::sim_asif ? config.asif_threshold : 0.0};
                asif = std::make_unique<AsifContext>(train.graphs, ac, dissim);
            }
            tree = std::make_unique<PatternTree>(train.graphs, mode, config.max_pattern_size,
                                                 asif.get());
            break;
        case Backend::itemset:
            tree = std::make_unique<PatternTree>(train.itemsets, mode, config.max_pattern_size);
            break;
        case Backend::sequence:
            tree = std::make_unique<PatternTree>(train.sequences, mode, config.max_pattern_size);
            break;
    }

    Solver solver(*tree, space, config.path_config());
    SolveResult result = solver.pathwise_optimize();
    write_bundle(config.out_dir, config, split, *tree, result);

    if (asif) {  // persist the matrix actually used, for evaluation-time reuse
        std::ofstream f(config.out_dir + "/dissimilarity.txt");
        std::ofstream fl(config.out_dir + "/dissimilarity.txt.labels");
        for (int a = 0; a < dissim.size(); ++a) {
            fl << train.graphs.vertex_label_values[a] << "\n";
            for (int b = 0; b < dissim.size(); ++b)
                f << (b ? " " : "") << detail::fmt(dissim.at(a, b));
            f << "\n";
        }
    }
    return result;
}

/// Feature matrix of every sample against the bundle's pattern list,
/// recomputed from scratch (test-time enumeration for graphs). The model
/// directory locates the persisted dissimilarity matrix for sim-asif models.
inline std::vector<SparseVec> bundle_features(const ModelBundle& bundle, const LoadedData& data,
                                              const std::string& model_dir) {
    const FeatureMode mode = bundle.config.feature_enum();
    const int n = data.size();
    std::vector<SparseVec> phi(n);

    if (data.backend == Backend::graph) {
        if (mode == FeatureMode::indicator || mode == FeatureMode::log_approx) {
            std::vector<DfsCode> codes;
            codes.reserve(bundle.patterns.size());
            for (const auto& [id, text] : bundle.patterns) {
                (void)id;
                codes.push_back(code_from_string(text));
            }
            for (int s = 0; s < n; ++s) {
                auto vals = enumerate_for_test(data.graphs.graphs[s], codes, mode);
                for (size_t c = 0; c < vals.size(); ++c)
                    if (vals[c] != 0.0) phi[s].emplace_back(bundle.patterns[c].first, vals[c]);
            }
        } else {
            DissimilarityMatrix dissim =
                mode == FeatureMode::asif
                    ? DissimilarityMatrix::exact_match(data.graphs.vertex_alphabet())
                    : load_dissimilarity(model_dir + "/dissimilarity.txt",
                                         model_dir + "/dissimilarity.txt.labels", data.graphs);
            AsifConfig ac{bundle.config.asif_levels, bundle.config.asif_rho,
                          mode == FeatureMode::sim_asif ? bundle.config.asif_threshold : 0.0};
            AsifContext ctx(data.graphs, ac, dissim);
            for (const auto& [id, text] : bundle.patterns) {
                auto labels = ctx.relabel(code_to_graph(code_from_string(text)));
                for (int s = 0; s < n; ++s) {
                    double v = mode == FeatureMode::asif ? ctx.asif_feature(labels, s)
                                                         : ctx.sim_asif_feature(labels, s);
                    if (v != 0.0) phi[s].emplace_back(id, v);
                }
            }
            for (auto& row : phi) std::sort(row.begin(), row.end());
        }
        return phi;
    }

    for (const auto& [id, text] : bundle.patterns) {
        std::vector<int> items;
        std::istringstream is(text);
        int it;
        while (is >> it) items.push_back(it);
        for (int s = 0; s < n; ++s) {
            double count = 0.0;
            if (data.backend == Backend::itemset) {
                const auto& x = data.itemsets.samples[s];
                count = std::includes(x.begin(), x.end(), items.begin(), items.end()) ? 1.0 : 0.0;
            } else {
                count = disjoint_subsequence_count(data.sequences.samples[s], items);
            }
            if (count > 0.0) phi[s].emplace_back(id, feature_from_count(mode, count));
        }
    }
    for (auto& row : phi) std::sort(row.begin(), row.end());
    return phi;
}

struct EvaluationReport {
    size_t best_grid = 0;
    int best_k = 1;
    double best_val_f1 = 0.0;
    double test_f1 = 0.0;
    std::vector<int> nonzeros;  // per grid point
    std::string post = "diag";
    int embedding_dim = 0;  // full post only
};

/// k-NN evaluation over the validation grid of (lambda, k); test score at the
/// selected pair. Optionally refits a full Mahalanobis metric on the selected
/// features before scoring.
inline EvaluationReport cmd_evaluate(const std::string& model_dir, const std::string& post = "diag",
                                     const std::string& eval_csv = "", int k_max = 49) {
    ModelBundle bundle = load_bundle(model_dir);
    LoadedData data = load_dataset(bundle.config);
    if (static_cast<int>(bundle.split.size()) != data.size())
        throw format_error(model_dir + "/split.txt: split does not match dataset size");

    std::vector<int> train_idx, val_idx, test_idx;
    for (int i = 0; i < data.size(); ++i) {
        if (bundle.split[i] == Role::train) train_idx.push_back(i);
        if (bundle.split[i] == Role::val) val_idx.push_back(i);
        if (bundle.split[i] == Role::test) test_idx.push_back(i);
    }
    auto phi = bundle_features(bundle, data, model_dir);
    const auto& labels = data.labels();
    std::vector<int> train_labels;
    for (int i : train_idx) train_labels.push_back(labels[i]);

    std::vector<int> k_grid;
    for (int k = 1; k <= std::min(k_max, static_cast<int>(train_idx.size())); k += 2)
        k_grid.push_back(k);
    if (k_grid.empty()) throw config_error("cmd_evaluate: empty k grid (training set too small)");

    EvaluationReport rep;
    rep.post = post;
    std::ostringstream csv;
    csv << "grid,lambda,nonzeros";
    for (int k : k_grid) csv << ",val_f1_k" << k;
    csv << "\n";

    auto sweep = [&](const std::function<double(int, int)>& dist_eval_train,
                     const std::vector<int>& eval_idx) {
        // per eval sample: train order by distance, then vote per k
        std::vector<int> order(train_idx.size());
        std::vector<double> d(train_idx.size());
        std::vector<std::vector<int>> preds(k_grid.size(), std::vector<int>(eval_idx.size()));
        for (size_t e = 0; e < eval_idx.size(); ++e) {
            for (size_t i = 0; i < train_idx.size(); ++i) d[i] = dist_eval_train(eval_idx[e], i);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](int a, int b) { return d[a] != d[b] ? d[a] < d[b] : a < b; });
            for (size_t ki = 0; ki < k_grid.size(); ++ki) {
                std::map<int, std::pair<int, double>> votes;
                for (int r = 0; r < k_grid[ki]; ++r) {
                    auto& v = votes[train_labels[order[r]]];
                    v.first += 1;
                    v.second += d[order[r]];
                }
                int best_label = 0;
                std::pair<int, double> best{-1, 0.0};
                for (const auto& [label, v] : votes)
                    if (v.first > best.first || (v.first == best.first && v.second < best.second)) {
                        best = v;
                        best_label = label;
                    }
                preds[ki][e] = best_label;
            }
        }
        return preds;
    };

    // diagonal metric per grid point
    size_t best_grid = 0;
    int best_k = k_grid.front();
    double best_f1 = -1.0;
    for (size_t t = 0; t < bundle.weights.size(); ++t) {
        SparseWeights m;
        for (const auto& [k, w] : bundle.weights[t]) m.set(k, w);
        rep.nonzeros.push_back(m.nonzeros());
        auto dist = [&](int a, int ti) { return learned_distance(m, phi[a], phi[train_idx[ti]]); };
        auto preds = sweep(dist, val_idx);
        csv << t << "," << detail::fmt(bundle.lambdas[t]) << "," << m.nonzeros();
        std::vector<int> val_labels;
        for (int i : val_idx) val_labels.push_back(labels[i]);
        for (size_t ki = 0; ki < k_grid.size(); ++ki) {
            double f1 = micro_f1(preds[ki], val_labels);
            csv << "," << detail::fmt(f1);
            if (f1 > best_f1) {
                best_f1 = f1;
                best_grid = t;
                best_k = k_grid[ki];
            }
        }
        csv << "\n";
    }
    rep.best_grid = best_grid;
    rep.best_k = best_k;
    rep.best_val_f1 = best_f1;

    std::vector<int> test_labels;
    for (int i : test_idx) test_labels.push_back(labels[i]);

    if (post == "diag") {
        SparseWeights m;
        for (const auto& [k, w] : bundle.weights[best_grid]) m.set(k, w);
        auto dist = [&](int a, int ti) { return learned_distance(m, phi[a], phi[train_idx[ti]]); };
        auto preds = sweep(dist, test_idx);
        size_t ki = std::find(k_grid.begin(), k_grid.end(), best_k) - k_grid.begin();
        rep.test_f1 = micro_f1(preds[ki], test_labels);
    } else if (post == "full") {
        const auto& wsel = bundle.weights[best_grid];
        std::vector<int> sel;
        std::vector<double> diag;
        for (const auto& [k, w] : wsel) {
            sel.push_back(k);
            diag.push_back(w);
        }
        auto embed = [&](int sample) {
            std::vector<double> z(sel.size(), 0.0);
            for (size_t c = 0; c < sel.size(); ++c) z[c] = sparse_get(phi[sample], sel[c]);
            return z;
        };
        std::vector<std::vector<double>> Z;
        for (int i : train_idx) Z.push_back(embed(i));
        LoadedData train = detail::subset(data, train_idx);
        KernelMatrix kernel = detail::backend_kernel(train, bundle.config);
        PairSystem pairs = select_pair_sets(kernel, train.labels(), bundle.config.K,
                                            bundle.config.L, bundle.config.U);
        MahalanobisModel model = learn_full_mahalanobis(Z, pairs, bundle.lambdas[best_grid],
                                                        bundle.config.eta, diag);
        rep.embedding_dim = 0;
        for (double v : model.eigen.values) rep.embedding_dim += v > 1e-9;
        auto dist = [&](int a, int ti) {
            return mahalanobis_distance(model.M, embed(a), Z[ti]);
        };
        auto val_preds = sweep(dist, val_idx);
        std::vector<int> val_labels;
        for (int i : val_idx) val_labels.push_back(labels[i]);
        double bf = -1.0;
        size_t bki = 0;
        for (size_t ki = 0; ki < k_grid.size(); ++ki) {
            double f1 = micro_f1(val_preds[ki], val_labels);
            if (f1 > bf) {
                bf = f1;
                bki = ki;
            }
        }
        rep.best_k = k_grid[bki];
        rep.best_val_f1 = bf;
        auto preds = sweep(dist, test_idx);
        rep.test_f1 = micro_f1(preds[bki], test_labels);
    } else {
        throw config_error("unknown post-processing mode '" + post + "' (diag|full)");
    }

    if (!eval_csv.empty()) {
        std::ofstream f(eval_csv);
        if (!f) throw io_error("cannot write " + eval_csv);
        f << csv.str();
    }
    return rep;
}

/// Weight-sorted human-readable pattern listing for one grid point.
inline std::string cmd_export_subgraphs(const std::string& model_dir, size_t grid_index) {
    ModelBundle bundle = load_bundle(model_dir);
    if (grid_index >= bundle.weights.size())
        throw config_error("grid index out of range (path has " +
                           std::to_string(bundle.weights.size()) + " points)");
    LoadedData data = load_dataset(bundle.config);

    std::map<int, std::string> pattern_text;
    for (const auto& [id, text] : bundle.patterns) pattern_text[id] = text;

    std::vector<std::pair<double, int>> order;
    for (const auto& [k, w] : bundle.weights[grid_index]) order.emplace_back(w, k);
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });

    std::ostringstream os;
    os << "# lambda = " << detail::fmt(bundle.lambdas[grid_index]) << ", nonzeros = "
       << order.size() << "\n";
    int rank = 0;
    for (const auto& [w, k] : order) {
        os << "pattern " << ++rank << " weight " << detail::fmt(w) << "\n";
        const std::string& text = pattern_text.at(k);
        os << "  code " << text << "\n";
        if (bundle.config.backend_enum() == Backend::graph) {
            auto g = code_to_graph(code_from_string(text));
            for (int v = 0; v < g.vertex_count(); ++v)
                os << "  v " << v << " " << data.graphs.vertex_label_values[g.vertex_labels[v]]
                   << "\n";
            for (int e = 0; e < g.edge_count(); ++e)
                os << "  e " << g.edges[e].first << " " << g.edges[e].second << " "
                   << data.graphs.edge_label_values[g.edge_labels[e]] << "\n";
        } else {
            os << "  items";
            std::istringstream is(text);
            int item;
            const auto& values = bundle.config.backend_enum() == Backend::itemset
                                     ? data.itemsets.item_values
                                     : data.sequences.item_values;
            while (is >> item) os << " " << values[item];
            os << "\n";
        }
    }
    return os.str();
}

/// Per-sample embedding export: sqrt(m) o x rows (diag) or the supervised
/// projection rows (full), with pattern codes / component ids as the header.
inline void cmd_export_features(const std::string& model_dir, size_t grid_index,
                                const std::string& post, const std::string& out_path) {
    ModelBundle bundle = load_bundle(model_dir);
    if (grid_index >= bundle.weights.size()) throw config_error("grid index out of range");
    LoadedData data = load_dataset(bundle.config);
    auto phi = bundle_features(bundle, data, model_dir);

    const auto& wsel = bundle.weights[grid_index];
    std::vector<int> sel;
    std::vector<double> diag;
    std::map<int, std::string> pattern_text;
    for (const auto& [id, text] : bundle.patterns) pattern_text[id] = text;
    for (const auto& [k, w] : wsel) {
        sel.push_back(k);
        diag.push_back(w);
    }
    auto embed = [&](int sample) {
        std::vector<double> z(sel.size(), 0.0);
        for (size_t c = 0; c < sel.size(); ++c) z[c] = sparse_get(phi[sample], sel[c]);
        return z;
    };

    std::ofstream f(out_path);
    if (!f) throw io_error("cannot write " + out_path);
    f << "sample,role,class";
    if (post == "diag") {
        for (int k : sel) f << "," << pattern_text.at(k);
        f << "\n";
        for (int s = 0; s < data.size(); ++s) {
            auto z = sqrt_weighted(diag, embed(s));
            f << s << "," << to_string(bundle.split[s]) << "," << data.labels()[s];
            for (double v : z) f << "," << detail::fmt(v);
            f << "\n";
        }
    } else if (post == "full") {
        std::vector<int> train_idx;
        for (int i = 0; i < data.size(); ++i)
            if (bundle.split[i] == Role::train) train_idx.push_back(i);
        std::vector<std::vector<double>> Z;
        for (int i : train_idx) Z.push_back(embed(i));
        LoadedData train = detail::subset(data, train_idx);
        KernelMatrix kernel = detail::backend_kernel(train, bundle.config);
        PairSystem pairs = select_pair_sets(kernel, train.labels(), bundle.config.K,
                                            bundle.config.L, bundle.config.U);
        MahalanobisModel model = learn_full_mahalanobis(Z, pairs, bundle.lambdas[grid_index],
                                                        bundle.config.eta, diag);
        std::vector<std::vector<double>> all;
        for (int s = 0; s < data.size(); ++s) all.push_back(embed(s));
        auto tr = transform_features(model, all);
        const size_t components = tr.empty() ? 0 : tr[0].size();
        for (size_t c = 0; c < components; ++c) f << ",component" << c;
        f << "\n";
        for (int s = 0; s < data.size(); ++s) {
            f << s << "," << to_string(bundle.split[s]) << "," << data.labels()[s];
            for (double v : tr[s]) f << "," << detail::fmt(v);
            f << "\n";
        }
    } else {
        throw config_error("unknown post-processing mode '" + post + "' (diag|full)");
    }
}

}  // namespace gpml
