// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#include "cachesched/poly_fit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "cachesched/errors.hpp"

namespace cachesched {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be finite");
    }
}

template <std::size_t N>
double dot(const std::vector<double>& coeffs, const std::array<double, N>& features) {
    double sum = 0.0;
    for (std::size_t i = 0; i < N; ++i) sum += coeffs[i] * features[i];
    return sum;
}

}  // namespace

std::array<double, 12> expand_features(double x, double t) {
    require_finite(x, "expand_features: x");
    require_finite(t, "expand_features: t");
    const double x2 = x * x;
    const double t2 = t * t;
    return {1.0, x, t, x2, t2, x * t, x2 * x, t2 * t, x2 * t, x * t2, x2 * x2, t2 * t2};
}

std::array<double, 5> expand_baseline(double x) {
    require_finite(x, "expand_baseline: x");
    const double x2 = x * x;
    return {1.0, x, x2, x2 * x, x2 * x2};
}

void FitDataset::validate() const {
    if (rows.empty()) {
        throw ValidationError("fit dataset: no rows");
    }
    if (!std::isfinite(t_normalizer) || t_normalizer <= 0.0) {
        throw ValidationError("fit dataset: t_normalizer must be finite and positive");
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (!std::isfinite(r.x) || !std::isfinite(r.y)) {
            throw DomainError("fit dataset: row " + std::to_string(i) + " is not finite");
        }
        if (r.t_raw >= num_steps) {
            throw ValidationError("fit dataset: row " + std::to_string(i) + " has t_raw " +
                                  std::to_string(r.t_raw) + " >= T = " + std::to_string(num_steps));
        }
    }
}

double default_t_normalizer(std::size_t num_steps) {
    return num_steps > 1 ? static_cast<double>(num_steps - 1) : 1.0;
}

FitDataset dataset_from_traces(const std::vector<TimestepTrace>& traces, double t_normalizer) {
    FitDataset ds;
    std::size_t steps = 0;
    for (const auto& tr : traces) {
        if (!tr.y) continue;
        tr.validate();
        steps = std::max(steps, tr.num_steps());
        for (std::size_t t = 0; t < tr.num_steps(); ++t) {
            ds.rows.push_back({tr.x[t], t, (*tr.y)[t]});
        }
    }
    if (ds.rows.empty()) {
        throw ValidationError("fit dataset: no trace carries recorded output differences (y)");
    }
    ds.num_steps = steps;
    ds.t_normalizer = t_normalizer > 0.0 ? t_normalizer : default_t_normalizer(steps);
    return ds;
}

FitModel fit(const FitDataset& dataset, FitKind kind) {
    dataset.validate();
    const auto n = static_cast<Eigen::Index>(dataset.rows.size());
    const auto p = static_cast<Eigen::Index>(coefficient_count(kind));
    Eigen::MatrixXd design(n, p);
    Eigen::VectorXd target(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& r = dataset.rows[static_cast<std::size_t>(i)];
        const double t = static_cast<double>(r.t_raw) / dataset.t_normalizer;
        if (kind == FitKind::Multivariate12) {
            const auto f = expand_features(r.x, t);
            for (Eigen::Index k = 0; k < p; ++k) design(i, k) = f[static_cast<std::size_t>(k)];
        } else {
            const auto f = expand_baseline(r.x);
            for (Eigen::Index k = 0; k < p; ++k) design(i, k) = f[static_cast<std::size_t>(k)];
        }
        target(i) = r.y;
    }
    if (!design.allFinite()) {
        throw DomainError("fit: design matrix is not finite");
    }

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design);
    const Eigen::VectorXd solution = cod.solve(target);

    FitModel model;
    model.kind = kind;
    model.t_normalizer = dataset.t_normalizer;
    model.coeffs.assign(solution.data(), solution.data() + p);
    model.validate();
    return model;
}

double predict_raw(const FitModel& model, double x, std::size_t t_raw) {
    if (model.kind == FitKind::Multivariate12) {
        const double t = static_cast<double>(t_raw) / model.t_normalizer;
        return dot(model.coeffs, expand_features(x, t));
    }
    return dot(model.coeffs, expand_baseline(x));
}

double predict(const FitModel& model, double x, std::size_t t_raw) {
    return std::max(0.0, predict_raw(model, x, t_raw));
}

double mse(const FitModel& model, const FitDataset& dataset) {
    if (dataset.rows.empty()) {
        throw ValidationError("mse: dataset has no rows");
    }
    double sum = 0.0;
    for (const auto& r : dataset.rows) {
        const double e = predict(model, r.x, r.t_raw) - r.y;
        sum += e * e;
    }
    return sum / static_cast<double>(dataset.rows.size());
}

std::vector<double> predict_trace(const FitModel& model, const TimestepTrace& trace) {
    std::vector<double> out;
    out.reserve(trace.num_steps());
    for (std::size_t t = 0; t < trace.num_steps(); ++t) {
        out.push_back(predict(model, trace.x[t], t));
    }
    return out;
}

}  // namespace cachesched
