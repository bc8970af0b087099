#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gpml/graph.hpp"

namespace gpml {

namespace detail {

inline std::vector<long> read_int_column(const std::string& path, bool required) {
    std::ifstream in(path);
    if (!in) {
        if (required) throw io_error("cannot open required file: " + path);
        return {};
    }
    std::vector<long> out;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // strip comma-separated tails and whitespace-only lines
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream ss(line);
        long v;
        if (!(ss >> v)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw format_error(path + ":" + std::to_string(lineno) + ": expected an integer");
        }
        out.push_back(v);
    }
    return out;
}

inline std::vector<std::pair<long, long>> read_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open required file: " + path);
    std::vector<std::pair<long, long>> out;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream ss(line);
        long a, b;
        if (!(ss >> a >> b)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw format_error(path + ":" + std::to_string(lineno) + ": expected an edge pair");
        }
        out.emplace_back(a, b);
    }
    return out;
}

inline int dense_id(std::map<long, int>& dict, std::vector<long>& values, long raw) {
    auto it = dict.find(raw);
    if (it != dict.end()) return it->second;
    int id = static_cast<int>(values.size());
    dict.emplace(raw, id);
    values.push_back(raw);
    return id;
}

}  // namespace detail

/// Loads a dataset in the TU Dortmund text format: `<DS>_A.txt`,
/// `<DS>_graph_indicator.txt`, `<DS>_graph_labels.txt`, `<DS>_node_labels.txt`
/// and optionally `<DS>_edge_labels.txt`, all with 1-based indices.
/// Each graph is reduced to its largest connected component.
inline GraphDataset load_tu_dataset(const std::string& dir_path, const std::string& dataset_name) {
    const std::string base = dir_path + "/" + dataset_name + "_";
    auto indicator = detail::read_int_column(base + "graph_indicator.txt", true);
    auto graph_labels = detail::read_int_column(base + "graph_labels.txt", true);
    auto node_labels = detail::read_int_column(base + "node_labels.txt", true);
    auto edge_pairs = detail::read_edge_list(base + "A.txt");
    auto edge_labels = detail::read_int_column(base + "edge_labels.txt", false);

    const long nv = static_cast<long>(indicator.size());
    const long ng = static_cast<long>(graph_labels.size());
    if (node_labels.size() != indicator.size())
        throw format_error(base + "node_labels.txt:1: row count differs from graph_indicator");
    if (!edge_labels.empty() && edge_labels.size() != edge_pairs.size())
        throw format_error(base + "edge_labels.txt:1: row count differs from A.txt");

    GraphDataset ds;
    std::map<long, int> vdict, edict;

    std::vector<int> local_index(nv);
    std::vector<std::vector<int>> graph_vertex_labels(ng);
    for (long v = 0; v < nv; ++v) {
        long gid = indicator[v];
        if (gid < 1 || gid > ng)
            throw format_error(base + "graph_indicator.txt:" + std::to_string(v + 1) +
                               ": graph index " + std::to_string(gid) + " out of range");
        auto& verts = graph_vertex_labels[gid - 1];
        local_index[v] = static_cast<int>(verts.size());
        verts.push_back(detail::dense_id(vdict, ds.vertex_label_values, node_labels[v]));
    }

    std::vector<std::vector<std::pair<int, int>>> graph_edges(ng);
    std::vector<std::vector<int>> graph_edge_labels(ng);
    for (size_t e = 0; e < edge_pairs.size(); ++e) {
        auto [a, b] = edge_pairs[e];
        if (a < 1 || a > nv || b < 1 || b > nv)
            throw format_error(base + "A.txt:" + std::to_string(e + 1) + ": vertex index out of range");
        if (indicator[a - 1] != indicator[b - 1])
            throw format_error(base + "A.txt:" + std::to_string(e + 1) + ": edge crosses graphs");
        long gid = indicator[a - 1] - 1;
        graph_edges[gid].emplace_back(local_index[a - 1], local_index[b - 1]);
        int el = edge_labels.empty() ? 0
                                     : detail::dense_id(edict, ds.edge_label_values, edge_labels[e]);
        graph_edge_labels[gid].push_back(el);
    }
    if (edge_labels.empty()) detail::dense_id(edict, ds.edge_label_values, 0);

    for (long g = 0; g < ng; ++g) {
        ds.graphs.push_back(make_graph(graph_vertex_labels[g], graph_edges[g], graph_edge_labels[g]));
        ds.class_labels.push_back(static_cast<int>(graph_labels[g]));
    }
    return ds;
}

/// Writes a dataset back out in TU format (fixtures, demo data).
inline void write_tu_dataset(const GraphDataset& ds, const std::string& dir_path,
                             const std::string& dataset_name) {
    const std::string base = dir_path + "/" + dataset_name + "_";
    std::ofstream fa(base + "A.txt"), fi(base + "graph_indicator.txt"),
        fg(base + "graph_labels.txt"), fn(base + "node_labels.txt"), fe(base + "edge_labels.txt");
    if (!fa || !fi || !fg || !fn || !fe) throw io_error("cannot write dataset under " + dir_path);
    long offset = 1;
    for (int g = 0; g < ds.size(); ++g) {
        const auto& gr = ds.graphs[g];
        fg << ds.class_labels[g] << "\n";
        for (int v = 0; v < gr.vertex_count(); ++v) {
            fi << (g + 1) << "\n";
            fn << ds.vertex_label_values[gr.vertex_labels[v]] << "\n";
        }
        for (int e = 0; e < gr.edge_count(); ++e) {
            auto [u, v] = gr.edges[e];
            long el = ds.edge_label_values.empty() ? 0 : ds.edge_label_values[gr.edge_labels[e]];
            fa << (offset + u) << ", " << (offset + v) << "\n";
            fe << el << "\n";
            fa << (offset + v) << ", " << (offset + u) << "\n";
            fe << el << "\n";
        }
        offset += gr.vertex_count();
    }
}

namespace detail {

template <typename Dataset>
Dataset load_item_lines(const std::string& path, bool dedup_sort) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open required file: " + path);
    Dataset ds;
    std::map<long, int> dict;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ss(line);
        long y;
        if (!(ss >> y))
            throw format_error(path + ":" + std::to_string(lineno) + ": expected a class label");
        std::vector<int> items;
        long raw;
        while (ss >> raw) items.push_back(dense_id(dict, ds.item_values, raw));
        if (items.empty())
            throw format_error(path + ":" + std::to_string(lineno) + ": sample has no items");
        if (dedup_sort) {
            std::sort(items.begin(), items.end());
            items.erase(std::unique(items.begin(), items.end()), items.end());
        }
        ds.samples.push_back(std::move(items));
        ds.class_labels.push_back(static_cast<int>(y));
    }
    return ds;
}

}  // namespace detail

/// Loads `<DS>.itemset.txt`: one sample per line, `label item item ...`.
inline ItemsetDataset load_itemset_dataset(const std::string& dir_path, const std::string& name) {
    return detail::load_item_lines<ItemsetDataset>(dir_path + "/" + name + ".itemset.txt", true);
}

/// Loads `<DS>.sequence.txt`: one sample per line, `label item item ...`.
inline SequenceDataset load_sequence_dataset(const std::string& dir_path, const std::string& name) {
    return detail::load_item_lines<SequenceDataset>(dir_path + "/" + name + ".sequence.txt", false);
}

}  // namespace gpml
