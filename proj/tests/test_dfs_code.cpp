#include <catch2/catch_amalgamated.hpp>

#include "gpml/dfs_code.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace gpml;

TEST_CASE("single-edge codes are canonical iff label-ordered") {
    CHECK(is_minimum_dfs_code(fixtures::code_of({{0, 1, 0, 0, 1}})));
    CHECK(is_minimum_dfs_code(fixtures::code_of({{0, 1, 2, 0, 2}})));
    CHECK_FALSE(is_minimum_dfs_code(fixtures::code_of({{0, 1, 1, 0, 0}})));
}

TEST_CASE("triangle: canonical order accepted, permuted traversal rejected") {
    // labels 0,0,1; edge labels 0
    auto canonical = fixtures::code_of({{0, 1, 0, 0, 0}, {1, 2, 0, 0, 1}, {2, 0, 1, 0, 0}});
    CHECK(is_minimum_dfs_code(canonical));
    auto permuted = fixtures::code_of({{0, 1, 0, 0, 1}, {1, 2, 1, 0, 0}, {2, 0, 0, 0, 0}});
    CHECK_FALSE(is_minimum_dfs_code(permuted));
}

TEST_CASE("4-cycle: exactly one of the traversal codes is minimum") {
    // C4 with labels 0,1,0,1; every DFS traversal yields three forward edges
    // plus the closing backward edge
    std::set<std::string> distinct;
    int minimal = 0;
    std::vector<int> labels = {0, 1, 0, 1};
    for (int start = 0; start < 4; ++start) {
        for (int dir : {1, 3}) {
            DfsCode code;
            int a = start, b = (start + dir) % 4, c = (b + dir) % 4, d = (c + dir) % 4;
            code.tuples.push_back({0, 1, labels[a], 0, labels[b]});
            code.tuples.push_back({1, 2, labels[b], 0, labels[c]});
            code.tuples.push_back({2, 3, labels[c], 0, labels[d]});
            code.tuples.push_back({3, 0, labels[d], 0, labels[a]});
            if (distinct.insert(code_to_string(code)).second)
                minimal += is_minimum_dfs_code(code);
        }
    }
    CHECK(distinct.size() == 2);
    CHECK(minimal == 1);
}

TEST_CASE("minimality agrees with brute-force smallest code on random patterns") {
    std::mt19937_64 rng(11);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto g = fixtures::random_graph(rng, 5, 2, 0.6, 2);
        if (g.edge_count() == 0) continue;
        // build one valid DFS code of g by randomized growth, then test
        // against the canonical string: codes describing the same graph must
        // accept exactly the lexicographically smallest traversal
        auto embs = oracle::all_embeddings(g, g);
        (void)embs;
        ++checked;
        // canonical code via the library must describe an isomorphic graph
        // and be accepted by its own minimality check
        // (constructed by taking min over traversals below)
        std::vector<DfsCode> traversals;
        // enumerate DFS codes by recursive rightmost extension over g itself
        std::function<void(DfsCode, std::vector<detail::MinEmb>)> grow =
            [&](DfsCode prefix, std::vector<detail::MinEmb> pembs) {
                if (prefix.size() == g.edge_count()) {
                    traversals.push_back(prefix);
                    return;
                }
                // all one-edge extensions
                std::set<std::string> seen;
                const auto rm = prefix.rightmost_path();
                const int maxto = prefix.tuples[rm[0]].to;
                std::map<std::string, EdgeTuple> tuples;
                for (const auto& emb : pembs) {
                    int rv = emb.verts[maxto];
                    for (int r = static_cast<int>(rm.size()) - 1; r >= 1; --r) {
                        int pos = prefix.tuples[rm[r]].from;
                        for (int e : g.adjacency[rv]) {
                            if (g.other_end(e, rv) != emb.verts[pos] || emb.has_edge(e)) continue;
                            EdgeTuple t{maxto, pos, g.vertex_labels[rv], g.edge_labels[e],
                                        g.vertex_labels[emb.verts[pos]]};
                            tuples.emplace(code_to_string(fixtures::code_of({t})), t);
                        }
                    }
                    for (int r = -1; r < static_cast<int>(rm.size()); ++r) {
                        int pos = r == -1 ? maxto : prefix.tuples[rm[r]].from;
                        int pv = emb.verts[pos];
                        for (int e : g.adjacency[pv]) {
                            int w = g.other_end(e, pv);
                            if (emb.has_vertex(w)) continue;
                            EdgeTuple t{pos, maxto + 1, g.vertex_labels[pv], g.edge_labels[e],
                                        g.vertex_labels[w]};
                            tuples.emplace(code_to_string(fixtures::code_of({t})), t);
                        }
                    }
                }
                for (const auto& [key, t] : tuples) {
                    (void)key;
                    DfsCode next = prefix;
                    next.tuples.push_back(t);
                    auto nembs = detail::filter_extend(g, prefix, pembs, t);
                    if (!nembs.empty()) grow(next, nembs);
                }
            };
        for (int e = 0; e < g.edge_count(); ++e) {
            auto [u, v] = g.edges[e];
            for (int dirn = 0; dirn < 2; ++dirn) {
                int a = dirn ? v : u, b = dirn ? u : v;
                DfsCode start;
                start.tuples.push_back({0, 1, g.vertex_labels[a], g.edge_labels[e],
                                        g.vertex_labels[b]});
                grow(start, {{{a, b}, {e}}});
            }
        }
        REQUIRE(!traversals.empty());
        auto smallest = *std::min_element(traversals.begin(), traversals.end());
        int minimal_count = 0;
        std::set<std::string> distinct;
        for (const auto& code : traversals) {
            if (!distinct.insert(code_to_string(code)).second) continue;
            bool is_min = is_minimum_dfs_code(code);
            CHECK(is_min == (code == smallest));
            minimal_count += is_min;
        }
        CHECK(minimal_count == 1);
    }
    REQUIRE(checked > 10);
}

TEST_CASE("code text round-trips through parse and print") {
    auto code = fixtures::code_of({{0, 1, 0, 0, 1}, {1, 2, 1, 2, 3}, {2, 0, 3, 1, 0}});
    auto text = code_to_string(code);
    CHECK(code_from_string(text) == code);
    CHECK(code_to_string(code_from_string(text)) == text);
    CHECK_THROWS_AS(code_from_string("garbage"), format_error);
}

TEST_CASE("malformed codes are rejected") {
    CHECK_THROWS_AS(is_minimum_dfs_code(DfsCode{}), format_error);
    // does not start at (0,1)
    CHECK_THROWS_AS(is_minimum_dfs_code(fixtures::code_of({{1, 2, 0, 0, 0}})), format_error);
    // forward edge skips a position
    CHECK_THROWS_AS(
        is_minimum_dfs_code(fixtures::code_of({{0, 1, 0, 0, 0}, {1, 3, 0, 0, 0}})),
        format_error);
    // duplicate edge
    CHECK_THROWS_AS(code_to_graph(fixtures::code_of({{0, 1, 0, 0, 0}, {1, 0, 0, 0, 0}})),
                    format_error);
}
