#pragma once

#include <chrono>
#include <functional>

#include "gpml/pattern_tree.hpp"
#include "gpml/screening.hpp"

namespace gpml {

enum class RuleSet { ssp, rssp, wsp, wsp_rssp };

inline const char* to_string(RuleSet r) {
    switch (r) {
        case RuleSet::ssp: return "ssp";
        case RuleSet::rssp: return "rssp";
        case RuleSet::wsp: return "wsp";
        default: return "wsp+rssp";
    }
}

inline RuleSet rule_set_from_string(const std::string& s) {
    if (s == "ssp") return RuleSet::ssp;
    if (s == "rssp") return RuleSet::rssp;
    if (s == "wsp") return RuleSet::wsp;
    if (s == "wsp+rssp") return RuleSet::wsp_rssp;
    throw config_error("unknown rule set '" + s + "' (ssp|rssp|wsp|wsp+rssp)");
}

struct PathConfig {
    int grid_points = 100;           // T, including the lambda_max point
    double lambda_min_ratio = 0.01;  // last grid point = ratio * lambda_max
    int freq = 10;                   // dynamic-screening period
    int max_iter = 10000;            // inner gradient iterations
    double eps = 1e-6;               // relative duality gap tolerance
    double eta = 1.0;                // l2 mix of the elastic-net penalty
    RuleSet rules = RuleSet::wsp_rssp;
    int max_refresh = 100;  // working-set refreshes per grid point

    double decrease_ratio() const {
        return grid_points > 1 ? std::pow(lambda_min_ratio, 1.0 / (grid_points - 1)) : 1.0;
    }

    void validate() const {
        if (grid_points < 1) throw config_error("grid_points must be >= 1");
        if (!(lambda_min_ratio > 0.0 && lambda_min_ratio < 1.0))
            throw config_error("lambda_min_ratio must be in (0,1)");
        if (eps <= 0.0) throw config_error("eps must be positive");
        if (eta <= 0.0) throw config_error("eta must be positive (the dual divides by lambda*eta)");
        if (freq < 1) throw config_error("freq must be >= 1");
        if (max_iter < 1) throw config_error("max_iter must be >= 1");
    }
};

/// Observers for safe eliminations and inner-iteration audits.
struct RuleHooks {
    std::function<void(const PatternNode*, double)> safe_screen;  // m_k* = 0 at this lambda
    std::function<void(const PatternNode*, double)> safe_prune;   // whole subtree zero
    std::function<void(double)> accepted_objective;  // primal after each accepted step
};

struct GridPointResult {
    double lambda = 0.0;
    SparseWeights m;
    std::vector<double> alpha;
    double primal = 0.0;
    double gap = 0.0;  // absolute duality gap at acceptance
    int refreshes = 0;
    long visited = 0;           // nodes visited by the first traverse
    long working_set_size = 0;  // |F| after the first traverse
    double wall_ms = 0.0;
};

struct SolveResult {
    double lambda_max = 0.0;
    long lambda_max_visited = 0;
    std::vector<GridPointResult> points;
};

struct SubproblemResult {
    std::vector<int> F;
    std::vector<double> m;  // aligned with F
    std::vector<double> alpha;
    double primal = 0.0;
    double gap = 0.0;
    int iterations = 0;
};

struct TraverseResult {
    std::vector<int> F;
    long visited = 0;
};

/// Path-wise optimizer over a pattern tree and a dual column space.
class Solver {
public:
    Solver(PatternTree& tree, const PairColumnSpace& space, PathConfig config)
        : tree_(&tree), space_(&space), config_(config) {
        config_.validate();
        if (space.n != tree.sample_count())
            throw config_error("Solver: column space and tree disagree on sample count");
        binary_ = tree.mode() == FeatureMode::indicator || tree.mode() == FeatureMode::asif;
        targets_.resize(space.dim());
        for (int c = 0; c < space.dim(); ++c) targets_[c] = space.target(c);
    }

    const PathConfig& config() const { return config_; }
    bool binary_features() const { return binary_; }
    RuleHooks hooks;  // optional instrumentation

    const ColumnCache& cache(const PatternNode* node) {
        auto idx = static_cast<size_t>(node->feature_index);
        if (caches_.size() <= idx) caches_.resize(idx + 1);
        if (!caches_[idx])
            caches_[idx] = std::make_unique<ColumnCache>(
                build_column_cache(*space_, node->column, binary_, workspace_));
        return *caches_[idx];
    }
    const ColumnCache& cache(int feature_index) { return cache(tree_->node(feature_index)); }

    // ---- objectives and the primal-dual map ----

    std::vector<double> z_of_m(const SparseWeights& m) {
        std::vector<double> z(space_->dim(), 0.0);
        for (const auto& [k, w] : m.w)
            for (const auto& [col, v] : cache(k).crow) z[col] += w * v;
        return z;
    }

    std::vector<double> alpha_of_z(const std::vector<double>& z) const {
        std::vector<double> a(z.size());
        for (size_t c = 0; c < z.size(); ++c) a[c] = 2.0 * pos(targets_[c] - z[c]);
        return a;
    }

    /// alpha_il = -l'_L(m^T c_il), alpha_ij = -l'_{-U}(-m^T c_ij).
    std::vector<double> alpha_of_m(const SparseWeights& m) { return alpha_of_z(z_of_m(m)); }

    double primal_objective(const SparseWeights& m, double lambda) {
        return primal_from_z(z_of_m(m), m, lambda);
    }

    /// Sub-problem dual restricted to F (equals the full dual when F covers
    /// every violated coordinate).
    double dual_objective(const std::vector<double>& alpha, const std::vector<int>& F,
                          double lambda) {
        double quad = 0.0, lin = 0.0;
        for (size_t c = 0; c < alpha.size(); ++c) {
            quad += sq(alpha[c]);
            lin += targets_[c] * alpha[c];
        }
        double pen = 0.0;
        for (int k : F) pen += sq(pos(cache(k).dot(alpha) - lambda));
        return -0.25 * quad + lin - pen / (2.0 * lambda * config_.eta);
    }

    /// m_lambda(alpha) restricted to F: [C alpha - lambda]_+ / (lambda eta).
    SparseWeights m_of_alpha(const std::vector<double>& alpha, double lambda,
                             const std::vector<int>& F) {
        SparseWeights m;
        for (int k : F) m.set(k, pos(cache(k).dot(alpha) - lambda) / (lambda * config_.eta));
        return m;
    }

    // ---- lambda_max ----

    /// max_k C_{k,:} alpha(0), found by tree search with radius-zero pruning
    /// against the best value so far.
    double compute_lambda_max(long* visited_out = nullptr) {
        const auto alpha0 = space_->alpha_at_zero();
        double best = 0.0;
        long visited = 0;
        std::function<void(PatternNode*)> walk = [&](PatternNode* node) {
            if (node->feature_index >= 0) {
                ++visited;
                const auto& c = cache(node);
                best = std::max(best, c.dot(alpha0));
                if (subtree_bound(c, *space_, alpha0, 0.0, binary_) <= best) return;
            }
            for (auto& ch : tree_->expand_children(node)) walk(ch.get());
        };
        walk(tree_->root());
        if (visited_out) *visited_out = visited;
        return best;
    }

    // ---- tree traversal with cached range rules (working-set refresh when
    // update is false) ----

    TraverseResult traverse(double lambda0, double lambda, const std::vector<double>& alpha0,
                            double eps_ref, bool update) {
        const bool safe = update && config_.rules != RuleSet::wsp;
        const bool caching =
            update && (config_.rules == RuleSet::rssp || config_.rules == RuleSet::wsp_rssp);
        const bool working =
            !update || config_.rules == RuleSet::wsp || config_.rules == RuleSet::wsp_rssp;

        double alpha0_norm = 0.0;
        for (double a : alpha0) alpha0_norm += sq(a);
        alpha0_norm = std::sqrt(alpha0_norm);

        TraverseResult res;
        std::function<void(PatternNode*)> walk = [&](PatternNode* node) {
            if (node->feature_index >= 0) {
                if (node->pruning <= lambda) {  // cached range-based pruning
                    if (hooks.safe_prune) hooks.safe_prune(node, lambda);
                    return;
                }
                if (node->screening <= lambda) {  // cached range-based screening
                    if (hooks.safe_screen) hooks.safe_screen(node, lambda);
                } else {
                    ++res.visited;  // nodes the cached ranges could not resolve
                    const auto& c = cache(node);
                    if (safe) {
                        double lp = rsp_lambda(c, *space_, alpha0, alpha0_norm, lambda0, eps_ref,
                                               binary_);
                        if (caching) node->pruning = lp;
                        if (lp <= lambda) {
                            if (hooks.safe_prune) hooks.safe_prune(node, lambda);
                            return;
                        }
                    }
                    if (working &&
                        subtree_bound(c, *space_, alpha0, 0.0, binary_) <= lambda)
                        return;  // working-set pruning (heuristic, not recorded as safe)
                    bool include = true;
                    const double cka0 = c.dot(alpha0);
                    if (safe) {
                        double ls = rss_lambda(c, cka0, alpha0_norm, lambda0, eps_ref);
                        if (caching) node->screening = ls;
                        if (ls <= lambda) {
                            if (hooks.safe_screen) hooks.safe_screen(node, lambda);
                            include = false;
                        }
                    }
                    if (working && ws_test(cka0, lambda)) include = false;
                    if (include) res.F.push_back(node->feature_index);
                }
            }
            for (auto& ch : tree_->expand_children(node)) walk(ch.get());
        };
        walk(tree_->root());
        return res;
    }

    // ---- projected gradient with dynamic screening ----

    SubproblemResult solve_subproblem(double lambda, const SparseWeights& m0, std::vector<int> F) {
        SubproblemResult r;
        r.F = std::move(F);
        r.m.assign(r.F.size(), 0.0);
        for (size_t i = 0; i < r.F.size(); ++i) r.m[i] = m0.get(r.F[i]);

        std::vector<double> z(space_->dim(), 0.0);
        for (size_t i = 0; i < r.F.size(); ++i)
            if (r.m[i] > 0.0)
                for (const auto& [col, v] : cache(r.F[i]).crow) z[col] += r.m[i] * v;

        auto primal = [&](const std::vector<double>& zz, const std::vector<double>& mm) {
            double loss = 0.0;
            for (size_t c = 0; c < zz.size(); ++c) loss += sq(pos(targets_[c] - zz[c]));
            double l1 = 0.0, l2 = 0.0;
            for (double w : mm) {
                l1 += w;
                l2 += sq(w);
            }
            return loss + lambda * (l1 + 0.5 * config_.eta * l2);
        };

        r.alpha = alpha_of_z(z);
        r.primal = primal(z, r.m);
        double step = 1.0;
        std::vector<double> cka(r.F.size()), grad(r.F.size()), trial_m(r.F.size());
        std::vector<double> trial_z;

        for (int iter = 0; iter < config_.max_iter; ++iter) {
            r.iterations = iter;
            if (!std::isfinite(r.primal))
                throw divergence_error("solve_subproblem: non-finite objective");

            cka.resize(r.F.size());
            for (size_t i = 0; i < r.F.size(); ++i) cka[i] = cache(r.F[i]).dot(r.alpha);

            double quad = 0.0, lin = 0.0, pen = 0.0;
            for (size_t c = 0; c < r.alpha.size(); ++c) {
                quad += sq(r.alpha[c]);
                lin += targets_[c] * r.alpha[c];
            }
            for (double v : cka) pen += sq(pos(v - lambda));
            const double dual = -0.25 * quad + lin - pen / (2.0 * lambda * config_.eta);
            r.gap = r.primal - dual;
            if (r.gap <= config_.eps * r.primal) return r;

            if (iter % config_.freq == 0) {  // dynamic screening, SS by DGB
                const double radius = 2.0 * std::sqrt(pos(r.gap));
                size_t out = 0;
                for (size_t i = 0; i < r.F.size(); ++i) {
                    if (cka[i] + radius * cache(r.F[i]).norm <= lambda) {
                        if (hooks.safe_screen) hooks.safe_screen(tree_->node(r.F[i]), lambda);
                        if (r.m[i] != 0.0)
                            for (const auto& [col, v] : cache(r.F[i]).crow) z[col] -= r.m[i] * v;
                        continue;
                    }
                    r.F[out] = r.F[i];
                    r.m[out] = r.m[i];
                    ++out;
                }
                if (out != r.F.size()) {
                    r.F.resize(out);
                    r.m.resize(out);
                    r.alpha = alpha_of_z(z);
                    r.primal = primal(z, r.m);
                    continue;  // gradients are stale once z changed
                }
            }

            grad.resize(r.F.size());
            for (size_t i = 0; i < r.F.size(); ++i)
                grad[i] = lambda * (1.0 + config_.eta * r.m[i]) - cka[i];

            // projected step with Armijo backtracking
            step = std::min(step * 2.0, 1e8);
            trial_m.resize(r.F.size());
            bool accepted = false, moved = false;
            while (step > 1e-18) {
                double gdot = 0.0;
                bool any = false;
                trial_z = z;
                for (size_t i = 0; i < r.F.size(); ++i) {
                    trial_m[i] = pos(r.m[i] - step * grad[i]);
                    double delta = trial_m[i] - r.m[i];
                    if (delta != 0.0) {
                        any = true;
                        gdot += grad[i] * delta;
                        for (const auto& [col, v] : cache(r.F[i]).crow) trial_z[col] += delta * v;
                    }
                }
                double trial_p = primal(trial_z, trial_m);
                if (std::isfinite(trial_p) && trial_p <= r.primal + 1e-4 * gdot) {
                    z.swap(trial_z);
                    r.m.swap(trial_m);
                    r.primal = trial_p;
                    r.alpha = alpha_of_z(z);
                    accepted = true;
                    moved = any;
                    if (hooks.accepted_objective) hooks.accepted_objective(r.primal);
                    break;
                }
                step *= 0.5;
            }
            if (!accepted || !moved) return r;  // stationary at this scale
        }
        return r;
    }

    // ---- path-wise driver ----

    SolveResult pathwise_optimize() {
        tree_->reset_rule_caches();
        SolveResult out;
        out.lambda_max = compute_lambda_max(&out.lambda_max_visited);
        if (out.lambda_max <= 0.0)
            throw config_error("pathwise_optimize: lambda_max is not positive; no usable feature");

        const auto alpha0 = space_->alpha_at_zero();
        GridPointResult first;
        first.lambda = out.lambda_max;
        first.alpha = alpha0;
        first.primal = primal_objective(SparseWeights{}, out.lambda_max);
        first.gap = first.primal - dual_objective(alpha0, {}, out.lambda_max);
        first.visited = out.lambda_max_visited;
        out.points.push_back(std::move(first));

        SparseWeights m_prev;
        std::vector<double> alpha_prev = alpha0;
        double lambda_prev = out.lambda_max;
        double eps_ref = 0.0;
        const double ratio = config_.decrease_ratio();

        for (int t = 1; t < config_.grid_points; ++t) {
            const auto t0 = std::chrono::steady_clock::now();
            GridPointResult pt;
            pt.lambda = lambda_prev * ratio;

            TraverseResult tr = traverse(lambda_prev, pt.lambda, alpha_prev, eps_ref, true);
            pt.visited = tr.visited;
            pt.working_set_size = static_cast<long>(tr.F.size());

            SparseWeights m = m_prev;
            std::vector<int> F = std::move(tr.F);
            SubproblemResult sub;
            while (true) {
                sub = solve_subproblem(pt.lambda, m, F);
                m = SparseWeights{};
                for (size_t i = 0; i < sub.F.size(); ++i) m.set(sub.F[i], sub.m[i]);
                TraverseResult refresh = traverse(lambda_prev, pt.lambda, sub.alpha, 0.0, false);
                sub.gap = sub.primal - dual_objective(sub.alpha, refresh.F, pt.lambda);
                ++pt.refreshes;
                if (sub.gap <= config_.eps * sub.primal) break;
                if (pt.refreshes > config_.max_refresh)
                    throw divergence_error("pathwise_optimize: working set did not converge");
                F = std::move(refresh.F);
            }

            pt.m = m;
            pt.alpha = sub.alpha;
            pt.primal = sub.primal;
            pt.gap = sub.gap;
            eps_ref = 2.0 * std::sqrt(pos(sub.gap));
            m_prev = std::move(m);
            alpha_prev = pt.alpha;
            lambda_prev = pt.lambda;
            pt.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                             .count();
            out.points.push_back(std::move(pt));
        }
        return out;
    }

private:
    double primal_from_z(const std::vector<double>& z, const SparseWeights& m, double lambda) {
        double loss = 0.0;
        for (size_t c = 0; c < z.size(); ++c) loss += sq(pos(targets_[c] - z[c]));
        double l1 = 0.0, l2 = 0.0;
        for (const auto& [k, w] : m.w) {
            (void)k;
            l1 += w;
            l2 += sq(w);
        }
        return loss + lambda * (l1 + 0.5 * config_.eta * l2);
    }

    PatternTree* tree_;
    const PairColumnSpace* space_;
    PathConfig config_;
    bool binary_ = false;
    std::vector<double> targets_;
    std::vector<std::unique_ptr<ColumnCache>> caches_;
    ColumnWorkspace workspace_;
};

}  // namespace gpml
