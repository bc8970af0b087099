#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "gpml/dfs_code.hpp"
#include "gpml/solver.hpp"

namespace gpml {

struct TrainConfig {
    std::string dataset_dir = ".";
    std::string dataset_name = "";
    std::string backend = "graph";      // graph | itemset | sequence
    std::string feature = "indicator";  // indicator | log-approx | asif | sim-asif
    std::string loss = "pairwise";      // pairwise | triplet
    std::string rules = "wsp+rssp";     // ssp | rssp | wsp | wsp+rssp
    int K = 10;
    double L = 1.0;
    double U = 0.0;
    double eta = 1.0;
    int grid_points = 100;
    double lambda_min_ratio = 0.01;
    int freq = 10;
    int max_iter = 10000;
    double eps = 1e-6;
    int max_pattern_size = 10;
    int wl_iterations = 3;
    int spectrum_gram = 3;
    long seed = 0;
    double train_ratio = 0.6;
    double val_ratio = 0.2;
    int triplet_k = 4;
    int asif_levels = 3;
    double asif_rho = 1.0;
    double asif_threshold = 0.7;
    std::string dissimilarity = "";  // matrix path ('<path>.labels' sidecar); empty = adjacency heuristic
    std::string out_dir = "model";

    Backend backend_enum() const {
        if (backend == "graph") return Backend::graph;
        if (backend == "itemset") return Backend::itemset;
        if (backend == "sequence") return Backend::sequence;
        throw config_error("unknown backend '" + backend + "'");
    }
    FeatureMode feature_enum() const {
        if (feature == "indicator") return FeatureMode::indicator;
        if (feature == "log-approx") return FeatureMode::log_approx;
        if (feature == "asif") return FeatureMode::asif;
        if (feature == "sim-asif") return FeatureMode::sim_asif;
        throw config_error("unknown feature mode '" + feature + "'");
    }
    PathConfig path_config() const {
        PathConfig pc;
        pc.grid_points = grid_points;
        pc.lambda_min_ratio = lambda_min_ratio;
        pc.freq = freq;
        pc.max_iter = max_iter;
        pc.eps = eps;
        pc.eta = eta;
        pc.rules = rule_set_from_string(rules);
        return pc;
    }
};

namespace detail {

template <typename F>
void for_each_config_key(TrainConfig& c, F&& f) {
    f("dataset_dir", c.dataset_dir);
    f("dataset_name", c.dataset_name);
    f("backend", c.backend);
    f("feature", c.feature);
    f("loss", c.loss);
    f("rules", c.rules);
    f("K", c.K);
    f("L", c.L);
    f("U", c.U);
    f("eta", c.eta);
    f("grid_points", c.grid_points);
    f("lambda_min_ratio", c.lambda_min_ratio);
    f("freq", c.freq);
    f("max_iter", c.max_iter);
    f("eps", c.eps);
    f("max_pattern_size", c.max_pattern_size);
    f("wl_iterations", c.wl_iterations);
    f("spectrum_gram", c.spectrum_gram);
    f("seed", c.seed);
    f("train_ratio", c.train_ratio);
    f("val_ratio", c.val_ratio);
    f("triplet_k", c.triplet_k);
    f("asif_levels", c.asif_levels);
    f("asif_rho", c.asif_rho);
    f("asif_threshold", c.asif_threshold);
    f("dissimilarity", c.dissimilarity);
    f("out_dir", c.out_dir);
}

inline void assign_config_value(std::string& slot, const std::string& v) { slot = v; }
inline void assign_config_value(int& slot, const std::string& v) { slot = std::stoi(v); }
inline void assign_config_value(long& slot, const std::string& v) { slot = std::stol(v); }
inline void assign_config_value(double& slot, const std::string& v) { slot = std::stod(v); }

inline std::string format_config_value(const std::string& v) { return v; }
inline std::string format_config_value(int v) { return std::to_string(v); }
inline std::string format_config_value(long v) { return std::to_string(v); }
inline std::string format_config_value(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace detail

inline void apply_config_line(TrainConfig& c, const std::string& key, const std::string& value) {
    bool found = false;
    detail::for_each_config_key(c, [&](const char* name, auto& slot) {
        if (key == name) {
            try {
                detail::assign_config_value(slot, value);
            } catch (const std::exception&) {
                throw config_error("config: bad value '" + value + "' for key '" + key + "'");
            }
            found = true;
        }
    });
    if (!found) throw config_error("config: unknown key '" + key + "'");
}

inline TrainConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    TrainConfig c;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t\r");
            auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        apply_config_line(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return c;
}

inline std::string dump_config(TrainConfig c) {
    std::ostringstream os;
    detail::for_each_config_key(
        c, [&](const char* name, auto& slot) { os << name << " = " << detail::format_config_value(slot) << "\n"; });
    return os.str();
}

enum class Role { train = 0, val = 1, test = 2 };

/// Seeded random train/validation/test split.
inline std::vector<Role> make_split(int n, double train_ratio, double val_ratio, long seed) {
    if (train_ratio <= 0.0 || val_ratio < 0.0 || train_ratio + val_ratio > 1.0)
        throw config_error("make_split: ratios must satisfy 0 < train, 0 <= val, train+val <= 1");
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(static_cast<unsigned long long>(seed));
    std::shuffle(order.begin(), order.end(), rng);
    int n_train = static_cast<int>(train_ratio * n);
    int n_val = static_cast<int>(val_ratio * n);
    std::vector<Role> role(n, Role::test);
    for (int i = 0; i < n_train; ++i) role[order[i]] = Role::train;
    for (int i = n_train; i < n_train + n_val; ++i) role[order[i]] = Role::val;
    return role;
}

inline const char* to_string(Role r) {
    switch (r) {
        case Role::train: return "train";
        case Role::val: return "val";
        default: return "test";
    }
}

/// Pattern identity in a bundle: a DFS-code string (graph backend) or a
/// space-separated item list (itemset/sequence backends).
struct ModelBundle {
    TrainConfig config;
    std::vector<Role> split;
    double lambda_max = 0.0;
    std::vector<double> lambdas;
    std::vector<std::pair<int, std::string>> patterns;  // (feature id at train time, text)
    std::vector<std::map<int, double>> weights;         // per grid point: feature id -> weight
};

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline std::string pattern_text(Backend backend, const PatternNode* node) {
    if (backend == Backend::graph) return code_to_string(node->code);
    std::ostringstream os;
    for (size_t i = 0; i < node->items.size(); ++i) os << (i ? " " : "") << node->items[i];
    return os.str();
}

}  // namespace detail

inline void write_bundle(const std::string& dir, const TrainConfig& config,
                         const std::vector<Role>& split, PatternTree& tree,
                         const SolveResult& result) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    {
        std::ofstream f(dir + "/config.txt");
        if (!f) throw io_error("cannot write " + dir + "/config.txt");
        f << dump_config(config);
    }
    {
        std::ofstream f(dir + "/split.txt");
        for (size_t i = 0; i < split.size(); ++i) f << i << " " << to_string(split[i]) << "\n";
    }
    // union of features selected anywhere on the grid
    std::set<int> used;
    for (const auto& pt : result.points)
        for (const auto& [k, w] : pt.m.w) {
            (void)w;
            used.insert(k);
        }
    {
        std::ofstream f(dir + "/patterns.txt");
        for (int k : used)
            f << k << "\t" << detail::pattern_text(tree.backend(), tree.node(k)) << "\n";
    }
    {
        std::ofstream f(dir + "/weights.csv");
        f << "grid,lambda,feature,weight\n";
        for (size_t t = 0; t < result.points.size(); ++t)
            for (const auto& [k, w] : result.points[t].m.w)
                f << t << "," << detail::fmt(result.points[t].lambda) << "," << k << ","
                  << detail::fmt(w) << "\n";
    }
    {
        std::ofstream f(dir + "/path_stats.csv");
        f << "grid,lambda,visited,working_set,nonzeros,gap,relative_gap,refreshes\n";
        for (size_t t = 0; t < result.points.size(); ++t) {
            const auto& pt = result.points[t];
            f << t << "," << detail::fmt(pt.lambda) << "," << pt.visited << ","
              << pt.working_set_size << "," << pt.m.nonzeros() << "," << detail::fmt(pt.gap) << ","
              << detail::fmt(pt.primal > 0 ? pt.gap / pt.primal : 0.0) << "," << pt.refreshes
              << "\n";
        }
    }
    {
        // wall-clock timings kept apart so the rest of the bundle is
        // byte-reproducible for a fixed seed and config
        std::ofstream f(dir + "/timings.csv");
        f << "grid,wall_ms\n";
        for (size_t t = 0; t < result.points.size(); ++t)
            f << t << "," << result.points[t].wall_ms << "\n";
    }
}

inline ModelBundle load_bundle(const std::string& dir) {
    ModelBundle b;
    b.config = parse_config_file(dir + "/config.txt");
    {
        std::ifstream f(dir + "/split.txt");
        if (!f) throw io_error("cannot open " + dir + "/split.txt");
        long idx;
        std::string role;
        while (f >> idx >> role) {
            Role r = role == "train" ? Role::train : role == "val" ? Role::val : Role::test;
            if (static_cast<long>(b.split.size()) != idx)
                throw format_error(dir + "/split.txt: non-contiguous sample index");
            b.split.push_back(r);
        }
    }
    {
        std::ifstream f(dir + "/patterns.txt");
        if (!f) throw io_error("cannot open " + dir + "/patterns.txt");
        std::string line;
        while (std::getline(f, line)) {
            if (line.empty()) continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos)
                throw format_error(dir + "/patterns.txt: expected id<TAB>pattern");
            b.patterns.emplace_back(std::stoi(line.substr(0, tab)), line.substr(tab + 1));
        }
    }
    {
        std::ifstream f(dir + "/weights.csv");
        if (!f) throw io_error("cannot open " + dir + "/weights.csv");
        std::string line;
        std::getline(f, line);  // header
        while (std::getline(f, line)) {
            if (line.empty()) continue;
            std::istringstream is(line);
            std::string cell;
            std::getline(is, cell, ',');
            size_t grid = std::stoul(cell);
            std::getline(is, cell, ',');
            double lambda = std::stod(cell);
            std::getline(is, cell, ',');
            int feature = std::stoi(cell);
            std::getline(is, cell, ',');
            double weight = std::stod(cell);
            while (b.weights.size() <= grid) b.weights.emplace_back();
            while (b.lambdas.size() <= grid) b.lambdas.push_back(0.0);
            b.lambdas[grid] = lambda;
            b.weights[grid][feature] = weight;
        }
    }
    {
        std::ifstream f(dir + "/path_stats.csv");
        if (!f) throw io_error("cannot open " + dir + "/path_stats.csv");
        std::string line;
        std::getline(f, line);
        size_t rows = 0;
        while (std::getline(f, line)) {
            if (line.empty()) continue;
            std::istringstream is(line);
            std::string cell;
            std::getline(is, cell, ',');
            size_t grid = std::stoul(cell);
            std::getline(is, cell, ',');
            double lambda = std::stod(cell);
            while (b.weights.size() <= grid) b.weights.emplace_back();
            while (b.lambdas.size() <= grid) b.lambdas.push_back(0.0);
            b.lambdas[grid] = lambda;
            ++rows;
        }
        if (rows == 0) throw format_error(dir + "/path_stats.csv: empty");
    }
    b.lambda_max = b.lambdas.empty() ? 0.0 : b.lambdas.front();
    return b;
}

}  // namespace gpml
