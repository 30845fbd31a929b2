#pragma once

#include <functional>
#include <optional>

#include "dritz/prob.hpp"
#include "dritz/strat.hpp"

namespace dritz {

// Any value/gradient pair: a network, a network-times-distance product, or
// a closed-form reference.
struct ModelOracle {
    std::function<double(const Vec2&)> value;
    std::function<Vec2(const Vec2&)> gradient;
};

ModelOracle network_oracle(const Parameters& params);
ModelOracle product_oracle(const Parameters& params, const DistanceFunction& d);
ModelOracle reference_oracle(const ReferenceSolution& ref);
// The model surface a strategy trains: the bare network, or d * u_theta.
ModelOracle trained_oracle(const TrainedModel& model);

struct ErrorReport {
    double rel_l2 = 0.0;
    double rel_h1 = 0.0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
};

// Monte Carlo relative L2/H1 errors on n uniform samples; the common
// measure factor cancels in the ratios. Throws if the reference vanishes
// on the sample set.
ErrorReport relative_errors(const ModelOracle& model,
                            const ReferenceSolution& reference,
                            const Domain& domain, std::size_t n,
                            std::uint64_t seed);

struct EnsembleStats {
    double mean = 0.0;
    double sample_std = 0.0; // n-1 denominator; 0 when n_runs == 1
    std::size_t n_runs = 0;
    std::size_t n_failed = 0;
};

// Mean and sample standard deviation over successful runs. Throws when
// every run failed.
EnsembleStats ensemble(std::span<const double> values, std::size_t n_failed);

// Error-bound report for the penalized problem on the unit disk.
struct BoundReport {
    double lambda = 0.0;
    double delta_lambda = 0.0;      // optimization-gap upper estimate
    double approx_term = 0.0;       // ansatz-distance estimate, if supplied
    double coefficient_a = 0.0;     // (8 + 10 lambda) / lambda
    double coefficient_b = 0.0;     // (4 + 5 lambda) / lambda
    double robin_gap_nominal = 0.0;   // pi / (4 lambda)
    double robin_gap_computed = 0.0; // H1 norm of the constant 1/(4 lambda)
    double robin_energy = 0.0;      // continuous energy of the Robin solution
    double bound_value = 0.0;
};

// Continuous penalized energy of the disk Robin solution, by fine radial
// quadrature of the closed form.
double disk_robin_energy(double lambda);

// Assembles the disk error bound from a measure-weighted loss value.
// delta_lambda is max(0, loss - E(u_lambda)); since the H1 infimum
// lower-bounds the infimum over the ansatz class, this is an upper
// estimate of the true optimization gap.
BoundReport disk_bound(double lambda, double measure_weighted_loss,
                       std::optional<double> approx_term = std::nullopt);

struct MonitorSummary {
    double max_abs_diff = 0.0;
    double final_abs_diff = 0.0;
    std::vector<double> abs_diff_series;
};

MonitorSummary monitor_divergence(std::span<const MonitorSample> trace);

} // namespace dritz
