#pragma once

#include "gpml/columns.hpp"

namespace gpml {

/// Sphere known to contain the optimal dual variable.
struct SphereBound {
    std::vector<double> center;  // non-negative
    double radius = 0.0;
};

/// Duality gap bound: the optimum lies within 2 sqrt(P - D) of any feasible
/// dual point. The gap is clamped at zero against round-off.
inline SphereBound dgb(const std::vector<double>& alpha, double primal, double dual) {
    return {alpha, 2.0 * std::sqrt(pos(primal - dual))};
}

/// Relaxed regularization-path bound around an eps-accurate solution for
/// lambda0, valid for the problem at lambda1.
inline SphereBound rrpb(const std::vector<double>& alpha0, double lambda0, double lambda1,
                        double eps) {
    if (lambda0 <= 0.0 || lambda1 <= 0.0) throw config_error("rrpb: lambdas must be positive");
    if (eps < 0.0) throw config_error("rrpb: eps must be non-negative");
    const double shrink = (lambda0 + lambda1) / (2.0 * lambda0);
    const double spread = (lambda0 - lambda1) / (2.0 * lambda0);
    double norm0 = 0.0;
    SphereBound b;
    b.center.resize(alpha0.size());
    for (size_t i = 0; i < alpha0.size(); ++i) {
        b.center[i] = shrink * alpha0[i];
        norm0 += sq(alpha0[i]);
    }
    norm0 = std::sqrt(norm0);
    b.radius = std::abs(spread) * norm0 + (shrink + std::abs(spread)) * eps;
    return b;
}

/// Safe screening: max over the sphere of C_{k,:} alpha stays at or below
/// lambda, so m_k is zero at the optimum.
inline bool ss_test(const ColumnCache& c, const SphereBound& bound, double lambda) {
    return c.dot(bound.center) + bound.radius * c.norm <= lambda;
}

/// Checked subtree bound; the solver's hot path uses the unchecked form.
inline double prune_criterion(const ColumnCache& c, const PairColumnSpace& sp,
                              const std::vector<double>& q, double r, bool binary) {
    for (double v : q)
        if (v < 0.0) throw config_error("prune_criterion: q must be non-negative");
    if (r < 0.0) throw config_error("prune_criterion: r must be non-negative");
    return subtree_bound(c, sp, q, r, binary);
}

/// Safe pruning: the bound covers every descendant's screening value, so the
/// whole subtree can be discarded while it stays at or below lambda.
inline bool sp_test(const ColumnCache& c, const PairColumnSpace& sp, const SphereBound& bound,
                    double lambda, bool binary) {
    return prune_criterion(c, sp, bound.center, bound.radius, binary) <= lambda;
}

namespace detail {

// lambda0 (2 eps B + ||alpha0|| B + A) / (2 lambda0 + ||alpha0|| B - A);
// non-positive denominator means the rule can never fire.
inline double range_threshold(double lambda0, double eps, double alpha0_norm, double A, double B) {
    const double den = 2.0 * lambda0 + alpha0_norm * B - A;
    if (den <= 0.0) return kInf;
    return lambda0 * (2.0 * eps * B + alpha0_norm * B + A) / den;
}

}  // namespace detail

/// Range-based safe screening: m_k is zero for every lambda in
/// [rss_lambda, lambda0], given ||alpha0 - alpha0*|| <= eps.
inline double rss_lambda(const ColumnCache& c, double c_dot_alpha0, double alpha0_norm,
                         double lambda0, double eps) {
    if (lambda0 <= 0.0) throw config_error("rss_lambda: lambda0 must be positive");
    return detail::range_threshold(lambda0, eps, alpha0_norm, c_dot_alpha0, c.norm);
}

/// Range-based safe pruning: the whole subtree of k is zero for every lambda
/// in [rsp_lambda, lambda0].
inline double rsp_lambda(const ColumnCache& c, const PairColumnSpace& sp,
                         const std::vector<double>& alpha0, double alpha0_norm, double lambda0,
                         double eps, bool binary) {
    if (lambda0 <= 0.0) throw config_error("rsp_lambda: lambda0 must be positive");
    const double a = prune_dot_term(c, sp, alpha0, binary);
    const double b = prune_norm_term(c, binary);
    return detail::range_threshold(lambda0, eps, alpha0_norm, a, b);
}

/// Working-set exclusion from the KKT conditions: true means leave k out.
inline bool ws_test(double c_dot_alpha, double lambda) { return c_dot_alpha <= lambda; }

/// Working-set pruning bound: the subtree bound at radius zero.
inline double wp_criterion(const ColumnCache& c, const PairColumnSpace& sp,
                           const std::vector<double>& alpha, bool binary) {
    return subtree_bound(c, sp, alpha, 0.0, binary);
}

}  // namespace gpml
