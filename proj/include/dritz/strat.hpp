#pragma once

#include <optional>
#include <string>

#include "dritz/loss.hpp"
#include "dritz/opt.hpp"

namespace dritz {

enum class StrategyKind { Naive, PreTrain, ExactBC };

std::string strategy_name(StrategyKind kind);
StrategyKind strategy_from_name(const std::string& name);

// Full description of one training run.
struct StrategyConfig {
    StrategyKind kind = StrategyKind::Naive;
    DomainKind problem = DomainKind::Disk;
    double lambda = 100.0;       // penalty strength; target lambda_T for PreTrain
    double lambda_pre = 1.0;     // PreTrain only
    DistanceId distance = DistanceId::DiskPol; // ExactBC only
    int lattice_n = 160;
    LRSchedule pre_schedule{{{1000, 0.01}, {3000, 0.001}}}; // PreTrain only
    long main_iterations = 10000; // 6000 for PreTrain's main phase
    double main_lr = 0.001;
    std::uint64_t seed = 0;
    long monitor_every = 0; // 0 = off
    std::size_t monitor_interior_samples = 1000000;
    std::size_t monitor_boundary_samples = 10000;
    // Test hook: replace the computed optimal shift.
    std::optional<double> shift_override;

    long total_iterations() const;
};

// Full-scale protocol defaults for each strategy.
StrategyConfig naive_config(DomainKind problem, double lambda, int lattice_n,
                            std::uint64_t seed);
StrategyConfig pretrain_config(DomainKind problem, double lambda_target,
                               int lattice_n, std::uint64_t seed);
StrategyConfig exactbc_config(DomainKind problem, DistanceId distance,
                              int lattice_n, std::uint64_t seed);

struct MonitorSample {
    long iteration;
    double loss;
    double energy;
};

struct TrainedModel {
    Parameters params;
    StrategyConfig config;
    std::vector<double> loss_trace; // loss at each iteration, pre-update
    std::vector<MonitorSample> monitor_trace;
    double wall_time_s = 0.0;
    bool failed = false;
    long fail_iteration = -1;
    double applied_shift = 0.0; // PreTrain only
};

// Energy-optimal constant shift for the penalized problem:
//   t = int_Omega f / (2 lambda |bnd|) - mean over boundary points of u.
double optimal_shift(const Problem& problem, const QuadratureSet& q,
                     const Parameters& params, double lambda_target);

TrainedModel train(const StrategyConfig& config);

// Measure-weighted penalized energy of u_theta + t on the lattice rule:
//   1/2 int |grad u|^2 - int f (u+t) + lambda |bnd| mean (u+t)^2.
// Used for shift diagnostics and the disk bound, not for training.
double measure_weighted_energy(const Problem& problem, const QuadratureSet& q,
                               const Parameters& params, double lambda,
                               double t = 0.0);

} // namespace dritz
