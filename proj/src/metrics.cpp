#include "dritz/metrics.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace dritz {

namespace {
constexpr double kPi = std::numbers::pi;
} // namespace

ModelOracle network_oracle(const Parameters& params) {
    auto ws = std::make_shared<detail::NetWorkspace>(params.arch);
    auto p = std::make_shared<Parameters>(params);
    return {[ws, p](const Vec2& x) {
                double u;
                Vec2 g;
                ws->forward_point(*p, x, u, g);
                return u;
            },
            [ws, p](const Vec2& x) {
                double u;
                Vec2 g;
                ws->forward_point(*p, x, u, g);
                return g;
            }};
}

ModelOracle product_oracle(const Parameters& params,
                           const DistanceFunction& d) {
    auto ws = std::make_shared<detail::NetWorkspace>(params.arch);
    auto p = std::make_shared<Parameters>(params);
    auto dist = std::make_shared<DistanceFunction>(d);
    return {[ws, p, dist](const Vec2& x) {
                double u;
                Vec2 g;
                ws->forward_point(*p, x, u, g);
                return dist->eval(x) * u;
            },
            [ws, p, dist](const Vec2& x) {
                double u;
                Vec2 g;
                ws->forward_point(*p, x, u, g);
                const double dv = dist->eval(x);
                const Vec2 dg = dist->grad(x);
                return Vec2{u * dg[0] + dv * g[0], u * dg[1] + dv * g[1]};
            }};
}

ModelOracle reference_oracle(const ReferenceSolution& ref) {
    return {ref.value, ref.gradient};
}

ModelOracle trained_oracle(const TrainedModel& model) {
    if (model.config.kind == StrategyKind::ExactBC)
        return product_oracle(model.params, distance_fn(model.config.distance));
    return network_oracle(model.params);
}

ErrorReport relative_errors(const ModelOracle& model,
                            const ReferenceSolution& reference,
                            const Domain& domain, std::size_t n,
                            std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("relative_errors: n must be >= 1");
    const std::vector<Vec2> samples = sample_uniform(domain, n, seed);
    double num_l2 = 0.0, den_l2 = 0.0, num_h1 = 0.0, den_h1 = 0.0;
    for (const Vec2& x : samples) {
        const double uv = model.value(x);
        const Vec2 ug = model.gradient(x);
        const double rv = reference.value(x);
        const Vec2 rg = reference.gradient(x);
        const double dv = uv - rv;
        const double dg0 = ug[0] - rg[0], dg1 = ug[1] - rg[1];
        num_l2 += dv * dv;
        den_l2 += rv * rv;
        num_h1 += dv * dv + dg0 * dg0 + dg1 * dg1;
        den_h1 += rv * rv + rg[0] * rg[0] + rg[1] * rg[1];
    }
    if (den_l2 == 0.0 || den_h1 == 0.0)
        throw std::domain_error(
            "relative_errors: reference vanishes on the sample set");
    return {std::sqrt(num_l2 / den_l2), std::sqrt(num_h1 / den_h1), n, seed};
}

EnsembleStats ensemble(std::span<const double> values, std::size_t n_failed) {
    if (values.empty())
        throw std::invalid_argument("ensemble: no successful runs");
    EnsembleStats s;
    s.n_runs = values.size();
    s.n_failed = n_failed;
    for (double v : values) s.mean += v;
    s.mean /= static_cast<double>(values.size());
    if (values.size() > 1) {
        double acc = 0.0;
        for (double v : values) acc += (v - s.mean) * (v - s.mean);
        s.sample_std = std::sqrt(acc / static_cast<double>(values.size() - 1));
    }
    return s;
}

double disk_robin_energy(double lambda) {
    if (lambda <= 0.0)
        throw std::invalid_argument("disk_robin_energy: lambda must be > 0");
    // E(u) = 1/2 int |grad u|^2 - int f u + lambda int_bnd u^2, f == 1,
    // u = -r^2/4 + 1/4 + 1/(4 lambda). Radial composite Simpson.
    const double shift = 0.25 + 1.0 / (4.0 * lambda);
    auto integrand = [shift](double r) {
        const double grad_sq = 0.25 * r * r; // |grad u|^2 = (r/2)^2
        const double u = -0.25 * r * r + shift;
        return (0.5 * grad_sq - u) * 2.0 * kPi * r;
    };
    const int n = 100000; // even
    const double h = 1.0 / n;
    double sum = integrand(0.0) + integrand(1.0);
    for (int i = 1; i < n; ++i)
        sum += integrand(i * h) * (i % 2 ? 4.0 : 2.0);
    const double interior = sum * h / 3.0;
    const double u_bnd = shift - 0.25; // u at r = 1
    return interior + lambda * 2.0 * kPi * u_bnd * u_bnd;
}

BoundReport disk_bound(double lambda, double measure_weighted_loss,
                       std::optional<double> approx_term) {
    if (lambda <= 0.0)
        throw std::invalid_argument("disk_bound: lambda must be > 0");
    BoundReport r;
    r.lambda = lambda;
    r.robin_energy = disk_robin_energy(lambda);
    r.delta_lambda = std::max(0.0, measure_weighted_loss - r.robin_energy);
    r.approx_term = approx_term.value_or(0.0);
    r.coefficient_a = (8.0 + 10.0 * lambda) / lambda;
    r.coefficient_b = (4.0 + 5.0 * lambda) / lambda;
    r.robin_gap_nominal = kPi / (4.0 * lambda);
    r.robin_gap_computed = std::sqrt(kPi) / (4.0 * lambda);
    r.bound_value = std::sqrt(r.coefficient_a * r.delta_lambda +
                              r.coefficient_b * r.approx_term) +
                    r.robin_gap_nominal;
    return r;
}

MonitorSummary monitor_divergence(std::span<const MonitorSample> trace) {
    if (trace.empty())
        throw std::invalid_argument("monitor_divergence: empty trace");
    MonitorSummary s;
    s.abs_diff_series.reserve(trace.size());
    for (const MonitorSample& m : trace) {
        const double d = std::abs(m.loss - m.energy);
        s.abs_diff_series.push_back(d);
        s.max_abs_diff = std::max(s.max_abs_diff, d);
    }
    s.final_abs_diff = s.abs_diff_series.back();
    return s;
}

} // namespace dritz
