#pragma once

#include <functional>
#include <map>

#include "gpml/pairs.hpp"

namespace gpml {

using Matrix = std::vector<std::vector<double>>;

inline Matrix zero_matrix(int n) { return Matrix(n, std::vector<double>(n, 0.0)); }

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns eigenvalues (descending) and matching orthonormal eigenvectors as
/// columns of V.
struct EigenDecomposition {
    std::vector<double> values;
    Matrix vectors;  // vectors[i][j]: i-th row, j-th eigenvector
};

inline EigenDecomposition jacobi_eigen(Matrix a) {
    const int n = static_cast<int>(a.size());
    Matrix v = zero_matrix(n);
    for (int i = 0; i < n; ++i) v[i][i] = 1.0;

    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale += sq(a[i][j]);
    scale = std::sqrt(scale);
    const double tol = scale > 0.0 ? 1e-14 * scale : 0.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += sq(a[i][j]);
        if (std::sqrt(2.0 * off) <= tol) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) <= tol / (n * n + 1.0)) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(sq(theta) + 1.0));
                const double c = 1.0 / std::sqrt(sq(t) + 1.0);
                const double s = t * c;
                for (int i = 0; i < n; ++i) {
                    double aip = a[i][p], aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    double api = a[p][i], aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
                for (int i = 0; i < n; ++i) {
                    double vip = v[i][p], viq = v[i][q];
                    v[i][p] = c * vip - s * viq;
                    v[i][q] = s * vip + c * viq;
                }
            }
        }
    }

    EigenDecomposition e;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return a[x][x] > a[y][y]; });
    e.values.resize(n);
    e.vectors = zero_matrix(n);
    for (int j = 0; j < n; ++j) {
        e.values[j] = a[order[j]][order[j]];
        for (int i = 0; i < n; ++i) e.vectors[i][j] = v[i][order[j]];
    }
    return e;
}

/// Symmetric PSD metric over the selected-feature embedding, with its
/// eigendecomposition cached for transforms.
struct MahalanobisModel {
    Matrix M;
    EigenDecomposition eigen;

    int dim() const { return static_cast<int>(M.size()); }
};

inline double mahalanobis_distance(const Matrix& M, const std::vector<double>& a,
                                   const std::vector<double>& b) {
    const int h = static_cast<int>(M.size());
    double d = 0.0;
    for (int i = 0; i < h; ++i) {
        double ui = a[i] - b[i];
        if (ui == 0.0) continue;
        double acc = 0.0;
        for (int j = 0; j < h; ++j) acc += M[i][j] * (a[j] - b[j]);
        d += ui * acc;
    }
    return d;
}

inline Matrix psd_project(const Matrix& M, double* min_eigenvalue = nullptr) {
    auto e = jacobi_eigen(M);
    if (min_eigenvalue) *min_eigenvalue = e.values.empty() ? 0.0 : e.values.back();
    const int n = static_cast<int>(M.size());
    Matrix out = zero_matrix(n);
    for (int k = 0; k < n; ++k) {
        if (e.values[k] <= 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out[i][j] += e.values[k] * e.vectors[i][k] * e.vectors[j][k];
    }
    return out;
}

struct MahalanobisFitReport {
    double initial_objective = 0.0;
    double final_objective = 0.0;
    double min_eigenvalue_seen = 0.0;  // after projection, across all steps
    int iterations = 0;
};

/// Pairwise-loss metric learning over the full matrix M (trace + Frobenius
/// penalty), projected gradient with PSD projection each step, initialized at
/// diag(m) restricted to the selected features.
inline MahalanobisModel learn_full_mahalanobis(const std::vector<std::vector<double>>& Z,
                                               const PairSystem& pairs, double lambda, double eta,
                                               const std::vector<double>& diag_init,
                                               MahalanobisFitReport* report = nullptr,
                                               int max_iter = 500, double tol = 1e-8) {
    const int h = static_cast<int>(diag_init.size());
    if (h > 500) throw config_error("learn_full_mahalanobis: more than 500 selected features");
    Matrix M = zero_matrix(h);
    for (int i = 0; i < h; ++i) M[i][i] = diag_init[i];

    auto objective = [&](const Matrix& m) {
        double loss = 0.0;
        for (int i = 0; i < pairs.n; ++i) {
            for (int l : pairs.D[i]) loss += sq(pos(pairs.L - mahalanobis_distance(m, Z[i], Z[l])));
            for (int j : pairs.S[i]) loss += sq(pos(mahalanobis_distance(m, Z[i], Z[j]) - pairs.U));
        }
        double tr = 0.0, fro = 0.0;
        for (int i = 0; i < h; ++i) {
            tr += m[i][i];
            for (int j = 0; j < h; ++j) fro += sq(m[i][j]);
        }
        return loss + lambda * (tr + 0.5 * eta * fro);
    };

    auto gradient = [&](const Matrix& m) {
        Matrix g = zero_matrix(h);
        auto add_outer = [&](int i, int j, double w) {
            for (int a = 0; a < h; ++a) {
                double ua = Z[i][a] - Z[j][a];
                if (ua == 0.0) continue;
                for (int b = 0; b < h; ++b) g[a][b] += w * ua * (Z[i][b] - Z[j][b]);
            }
        };
        for (int i = 0; i < pairs.n; ++i) {
            for (int l : pairs.D[i]) {
                double hinge = pos(pairs.L - mahalanobis_distance(m, Z[i], Z[l]));
                if (hinge > 0.0) add_outer(i, l, -2.0 * hinge);
            }
            for (int j : pairs.S[i]) {
                double hinge = pos(mahalanobis_distance(m, Z[i], Z[j]) - pairs.U);
                if (hinge > 0.0) add_outer(i, j, 2.0 * hinge);
            }
        }
        for (int a = 0; a < h; ++a) {
            g[a][a] += lambda;
            for (int b = 0; b < h; ++b) g[a][b] += lambda * eta * m[a][b];
        }
        return g;
    };

    double obj = objective(M);
    MahalanobisFitReport rep;
    rep.initial_objective = obj;
    rep.min_eigenvalue_seen = 0.0;
    double step = 1.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        rep.iterations = iter + 1;
        Matrix g = gradient(M);
        step = std::min(step * 2.0, 1e6);
        bool accepted = false;
        while (step > 1e-16) {
            Matrix trial = M;
            for (int a = 0; a < h; ++a)
                for (int b = 0; b < h; ++b) trial[a][b] -= step * g[a][b];
            double mineig = 0.0;
            trial = psd_project(trial, &mineig);
            double trial_obj = objective(trial);
            if (std::isfinite(trial_obj) && trial_obj <= obj) {
                (void)mineig;
                if (report) {  // audit: the projected iterate itself must stay PSD
                    auto check = jacobi_eigen(trial);
                    if (!check.values.empty())
                        rep.min_eigenvalue_seen =
                            std::min(rep.min_eigenvalue_seen, check.values.back());
                }
                const double improvement = obj - trial_obj;
                M = std::move(trial);
                obj = trial_obj;
                accepted = true;
                if (improvement <= tol * (1.0 + std::abs(obj))) iter = max_iter;  // converged
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
    }
    if (!std::isfinite(obj)) throw divergence_error("learn_full_mahalanobis: diverged");
    rep.final_objective = obj;
    if (report) *report = rep;

    MahalanobisModel model;
    model.M = std::move(M);
    model.eigen = jacobi_eigen(model.M);
    return model;
}

/// Rows of the supervised projection sqrt(Lambda) V^T for eigenvalues above
/// 1e-9; squared Euclidean distance of transformed vectors equals d_M.
inline std::vector<std::vector<double>> transform_features(const MahalanobisModel& model,
                                                           const std::vector<std::vector<double>>& Z) {
    std::vector<int> keep;
    for (int k = 0; k < model.dim(); ++k)
        if (model.eigen.values[k] > 1e-9) keep.push_back(k);
    std::vector<std::vector<double>> out(Z.size(), std::vector<double>(keep.size(), 0.0));
    for (size_t s = 0; s < Z.size(); ++s)
        for (size_t c = 0; c < keep.size(); ++c) {
            double acc = 0.0;
            for (int i = 0; i < model.dim(); ++i)
                acc += model.eigen.vectors[i][keep[c]] * Z[s][i];
            out[s][c] = std::sqrt(model.eigen.values[keep[c]]) * acc;
        }
    return out;
}

/// Diagonal-model transform: x' = sqrt(m) o x.
inline std::vector<double> sqrt_weighted(const std::vector<double>& weights,
                                         const std::vector<double>& z) {
    std::vector<double> out(z.size());
    for (size_t i = 0; i < z.size(); ++i) out[i] = std::sqrt(weights[i]) * z[i];
    return out;
}

/// Majority vote among the k nearest training points under a caller-supplied
/// squared distance; vote ties broken by smaller cumulative distance, then by
/// smaller label.
inline std::vector<int> knn_predict(int train_size, const std::vector<int>& train_labels,
                                    int test_size,
                                    const std::function<double(int, int)>& distance, int k) {
    if (k > train_size) throw config_error("knn_predict: k exceeds training size");
    std::vector<int> pred(test_size);
    std::vector<int> order(train_size);
    for (int t = 0; t < test_size; ++t) {
        std::vector<double> d(train_size);
        for (int i = 0; i < train_size; ++i) d[i] = distance(t, i);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return d[a] != d[b] ? d[a] < d[b] : a < b; });
        std::map<int, std::pair<int, double>> votes;  // label -> (count, cum distance)
        for (int r = 0; r < k; ++r) {
            auto& v = votes[train_labels[order[r]]];
            v.first += 1;
            v.second += d[order[r]];
        }
        int best_label = 0;
        std::pair<int, double> best{-1, 0.0};
        for (const auto& [label, v] : votes) {
            bool better = v.first > best.first ||
                          (v.first == best.first && v.second < best.second);
            if (better) {
                best = v;
                best_label = label;
            }
        }
        pred[t] = best_label;
    }
    return pred;
}

/// Micro-averaged F1; equals plain accuracy for single-label multiclass.
inline double micro_f1(const std::vector<int>& predicted, const std::vector<int>& truth) {
    if (predicted.size() != truth.size()) throw config_error("micro_f1: size mismatch");
    if (predicted.empty()) return 0.0;
    int correct = 0;
    for (size_t i = 0; i < predicted.size(); ++i) correct += predicted[i] == truth[i];
    return static_cast<double>(correct) / predicted.size();
}

}  // namespace gpml
