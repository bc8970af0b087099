#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "gpml/graph.hpp"

namespace gpml {

/// One extension of a DFS code: discovery positions plus the full label
/// triple. Forward edge: from < to (new vertex); backward edge: from > to.
struct EdgeTuple {
    int from = 0, to = 0;
    int from_label = 0, edge_label = 0, to_label = 0;

    bool forward() const { return from < to; }

    friend bool operator==(const EdgeTuple&, const EdgeTuple&) = default;
};

/// gSpan DFS lexicographic order on extension tuples.
inline bool tuple_less(const EdgeTuple& a, const EdgeTuple& b) {
    const bool af = a.forward(), bf = b.forward();
    if (af && !bf) return a.to <= b.from;
    if (!af && bf) return a.from < b.to;
    if (!af) {  // both backward
        if (a.from != b.from) return a.from < b.from;
        if (a.to != b.to) return a.to < b.to;
    } else {  // both forward
        if (a.to != b.to) return a.to < b.to;
        if (a.from != b.from) return a.from > b.from;
    }
    auto la = std::tuple{a.from_label, a.edge_label, a.to_label};
    auto lb = std::tuple{b.from_label, b.edge_label, b.to_label};
    return la < lb;
}

/// A DFS code; stored codes are always minimum (canonical). A child's code is
/// its parent's code plus one extension tuple.
struct DfsCode {
    std::vector<EdgeTuple> tuples;

    int size() const { return static_cast<int>(tuples.size()); }
    int vertex_count() const {
        int m = 0;
        for (const auto& t : tuples) m = std::max(m, std::max(t.from, t.to) + 1);
        return m;
    }

    friend bool operator==(const DfsCode&, const DfsCode&) = default;

    bool operator<(const DfsCode& other) const {
        for (int i = 0; i < std::min(size(), other.size()); ++i) {
            if (tuples[i] == other.tuples[i]) continue;
            return tuple_less(tuples[i], other.tuples[i]);
        }
        return size() < other.size();
    }

    /// Indices of code edges on the rightmost path, last edge first.
    std::vector<int> rightmost_path() const {
        std::vector<int> rm;
        int old_from = -1;
        for (int i = size() - 1; i >= 0; --i) {
            if (tuples[i].forward() && (rm.empty() || old_from == tuples[i].to)) {
                rm.push_back(i);
                old_from = tuples[i].from;
            }
        }
        return rm;
    }

    bool prefix_of(const DfsCode& other) const {
        if (size() > other.size()) return false;
        for (int i = 0; i < size(); ++i)
            if (!(tuples[i] == other.tuples[i])) return false;
        return true;
    }
};

/// Materializes the pattern graph a code describes; vertex ids equal the code
/// positions. Throws on malformed codes.
inline VertexLabeledGraph code_to_graph(const DfsCode& code) {
    if (code.size() == 0) throw format_error("code_to_graph: empty code");
    VertexLabeledGraph g;
    g.vertex_labels.assign(code.vertex_count(), -1);
    auto set_label = [&](int v, int lab) {
        if (v < 0 || v >= g.vertex_count()) throw format_error("code_to_graph: bad position");
        if (g.vertex_labels[v] != -1 && g.vertex_labels[v] != lab)
            throw format_error("code_to_graph: inconsistent vertex label");
        g.vertex_labels[v] = lab;
    };
    for (const auto& t : code.tuples) {
        set_label(t.from, t.from_label);
        set_label(t.to, t.to_label);
        int u = std::min(t.from, t.to), v = std::max(t.from, t.to);
        for (const auto& [a, b] : g.edges)
            if (a == u && b == v) throw format_error("code_to_graph: duplicate edge");
        g.edges.emplace_back(u, v);
        g.edge_labels.push_back(t.edge_label);
    }
    for (int lab : g.vertex_labels)
        if (lab == -1) throw format_error("code_to_graph: unlabeled position");
    g.finalize();
    return g;
}

namespace detail {

// A partial embedding of a code prefix into a single graph.
struct MinEmb {
    std::vector<int> verts;  // position -> vertex
    std::vector<int> edges;  // code index -> edge id

    bool has_vertex(int v) const {
        return std::find(verts.begin(), verts.end(), v) != verts.end();
    }
    bool has_edge(int e) const {
        return std::find(edges.begin(), edges.end(), e) != edges.end();
    }
};

// Smallest extension tuple over all embeddings of the current minimal prefix,
// following gSpan's extension order: backward from the rightmost vertex to
// rightmost-path vertices, then forward from rightmost-path vertices.
// Returns false if no extension exists.
inline bool min_extension(const VertexLabeledGraph& g, const DfsCode& prefix,
                          std::vector<MinEmb>& embs, EdgeTuple& out) {
    const auto rm = prefix.rightmost_path();
    const int maxto = prefix.tuples[rm[0]].to;
    bool found = false;
    EdgeTuple best{};
    auto consider = [&](const EdgeTuple& t) {
        if (!found || tuple_less(t, best)) {
            best = t;
            found = true;
        }
    };
    for (const auto& emb : embs) {
        const int rv = emb.verts[maxto];
        // backward: rightmost vertex to earlier rightmost-path vertices
        for (int r = static_cast<int>(rm.size()) - 1; r >= 1; --r) {
            int pos = prefix.tuples[rm[r]].from;
            int pv = emb.verts[pos];
            for (int e : g.adjacency[rv]) {
                if (g.other_end(e, rv) != pv || emb.has_edge(e)) continue;
                consider({maxto, pos, g.vertex_labels[rv], g.edge_labels[e], g.vertex_labels[pv]});
            }
        }
        // forward from every rightmost-path vertex
        for (int r = -1; r < static_cast<int>(rm.size()); ++r) {
            int pos = (r == -1) ? maxto : prefix.tuples[rm[r]].from;
            int pv = emb.verts[pos];
            for (int e : g.adjacency[pv]) {
                int w = g.other_end(e, pv);
                if (emb.has_vertex(w)) continue;
                consider({pos, maxto + 1, g.vertex_labels[pv], g.edge_labels[e], g.vertex_labels[w]});
            }
        }
    }
    if (found) out = best;
    return found;
}

inline std::vector<MinEmb> filter_extend(const VertexLabeledGraph& g, const DfsCode& prefix,
                                         const std::vector<MinEmb>& embs, const EdgeTuple& t) {
    std::vector<MinEmb> out;
    const auto rm = prefix.rightmost_path();
    const int maxto = prefix.tuples[rm[0]].to;
    for (const auto& emb : embs) {
        if (t.forward()) {
            int pv = emb.verts[t.from];
            if (g.vertex_labels[pv] != t.from_label) continue;
            for (int e : g.adjacency[pv]) {
                int w = g.other_end(e, pv);
                if (emb.has_vertex(w)) continue;
                if (g.edge_labels[e] != t.edge_label || g.vertex_labels[w] != t.to_label) continue;
                MinEmb ne = emb;
                ne.verts.push_back(w);
                ne.edges.push_back(e);
                out.push_back(std::move(ne));
            }
        } else {
            int rv = emb.verts[maxto];
            int pv = emb.verts[t.to];
            for (int e : g.adjacency[rv]) {
                if (g.other_end(e, rv) != pv || emb.has_edge(e)) continue;
                if (g.edge_labels[e] != t.edge_label) continue;
                MinEmb ne = emb;
                ne.edges.push_back(e);
                out.push_back(std::move(ne));
            }
        }
    }
    return out;
}

}  // namespace detail

/// Structural validity of a DFS traversal: starts at (0,1), forward edges
/// discover positions in order, backward edges leave the current rightmost
/// vertex.
inline void check_code_well_formed(const DfsCode& code) {
    if (code.size() == 0) throw format_error("dfs code: empty code");
    if (code.tuples[0].from != 0 || code.tuples[0].to != 1)
        throw format_error("dfs code: must start at (0,1)");
    int maxpos = 1;
    for (int i = 1; i < code.size(); ++i) {
        const auto& t = code.tuples[i];
        if (t.forward()) {
            if (t.to != maxpos + 1 || t.from < 0 || t.from > maxpos)
                throw format_error("dfs code: bad forward tuple at index " + std::to_string(i));
            maxpos = t.to;
        } else {
            if (t.from != maxpos || t.to < 0 || t.to >= t.from)
                throw format_error("dfs code: bad backward tuple at index " + std::to_string(i));
        }
    }
}

/// True iff no DFS traversal of the encoded pattern yields a smaller code.
inline bool is_minimum_dfs_code(const DfsCode& code) {
    check_code_well_formed(code);
    const VertexLabeledGraph g = code_to_graph(code);

    // smallest initial tuple over all directed edges of the pattern
    EdgeTuple first{};
    bool have = false;
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges[e];
        for (int dir = 0; dir < 2; ++dir) {
            int a = dir == 0 ? u : v, b = dir == 0 ? v : u;
            EdgeTuple t{0, 1, g.vertex_labels[a], g.edge_labels[e], g.vertex_labels[b]};
            if (!have || tuple_less(t, first)) {
                first = t;
                have = true;
            }
        }
    }
    if (!(first == code.tuples[0])) return false;

    DfsCode minimal;
    minimal.tuples.push_back(first);
    std::vector<detail::MinEmb> embs;
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges[e];
        for (int dir = 0; dir < 2; ++dir) {
            int a = dir == 0 ? u : v, b = dir == 0 ? v : u;
            if (g.vertex_labels[a] == first.from_label && g.edge_labels[e] == first.edge_label &&
                g.vertex_labels[b] == first.to_label)
                embs.push_back({{a, b}, {e}});
        }
    }

    for (int step = 1; step < code.size(); ++step) {
        EdgeTuple t{};
        if (!detail::min_extension(g, minimal, embs, t))
            throw format_error("is_minimum_dfs_code: code is not a DFS traversal");
        if (!(t == code.tuples[step])) return tuple_less(code.tuples[step], t);
        embs = detail::filter_extend(g, minimal, embs, t);
        minimal.tuples.push_back(t);
    }
    return true;
}

/// Text form used in model bundles: tuples `f-t(fl,el,tl)` joined by ';'.
inline std::string code_to_string(const DfsCode& code) {
    std::ostringstream os;
    for (int i = 0; i < code.size(); ++i) {
        const auto& t = code.tuples[i];
        if (i) os << ';';
        os << t.from << '-' << t.to << '(' << t.from_label << ',' << t.edge_label << ','
           << t.to_label << ')';
    }
    return os.str();
}

inline DfsCode code_from_string(const std::string& text) {
    DfsCode code;
    std::istringstream is(text);
    std::string part;
    while (std::getline(is, part, ';')) {
        EdgeTuple t;
        char d1, d2, d3, d4, d5;
        std::istringstream ps(part);
        if (!(ps >> t.from >> d1 >> t.to >> d2 >> t.from_label >> d3 >> t.edge_label >> d4 >>
              t.to_label >> d5) ||
            d1 != '-' || d2 != '(' || d3 != ',' || d4 != ',' || d5 != ')')
            throw format_error("code_from_string: bad tuple '" + part + "'");
        code.tuples.push_back(t);
    }
    if (code.size() == 0) throw format_error("code_from_string: empty code");
    return code;
}

}  // namespace gpml
