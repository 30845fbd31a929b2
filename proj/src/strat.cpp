#include "dritz/strat.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace dritz {

std::string strategy_name(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::Naive: return "naive";
        case StrategyKind::PreTrain: return "pretrain";
        case StrategyKind::ExactBC: return "exactbc";
    }
    return "?";
}

StrategyKind strategy_from_name(const std::string& name) {
    if (name == "naive") return StrategyKind::Naive;
    if (name == "pretrain") return StrategyKind::PreTrain;
    if (name == "exactbc") return StrategyKind::ExactBC;
    throw std::invalid_argument("unknown strategy: " + name);
}

long StrategyConfig::total_iterations() const {
    if (kind == StrategyKind::PreTrain)
        return pre_schedule.total_iterations() + main_iterations;
    return main_iterations;
}

StrategyConfig naive_config(DomainKind problem, double lambda, int lattice_n,
                            std::uint64_t seed) {
    StrategyConfig c;
    c.kind = StrategyKind::Naive;
    c.problem = problem;
    c.lambda = lambda;
    c.lattice_n = lattice_n;
    c.main_iterations = 10000;
    c.main_lr = 0.001;
    c.seed = seed;
    return c;
}

StrategyConfig pretrain_config(DomainKind problem, double lambda_target,
                               int lattice_n, std::uint64_t seed) {
    StrategyConfig c;
    c.kind = StrategyKind::PreTrain;
    c.problem = problem;
    c.lambda = lambda_target;
    c.lambda_pre = 1.0;
    c.lattice_n = lattice_n;
    c.pre_schedule = LRSchedule{{{1000, 0.01}, {3000, 0.001}}};
    c.main_iterations = 6000;
    c.main_lr = 0.001;
    c.seed = seed;
    return c;
}

StrategyConfig exactbc_config(DomainKind problem, DistanceId distance,
                              int lattice_n, std::uint64_t seed) {
    StrategyConfig c;
    c.kind = StrategyKind::ExactBC;
    c.problem = problem;
    c.distance = distance;
    c.lattice_n = lattice_n;
    c.main_iterations = 10000;
    c.main_lr = 0.001;
    c.seed = seed;
    return c;
}

double optimal_shift(const Problem& problem, const QuadratureSet& q,
                     const Parameters& params, double lambda_target) {
    std::vector<double> fvals;
    fvals.reserve(q.interior_count());
    for (const Vec2& x : q.interior_points) fvals.push_back(problem.rhs(x));
    const double f_integral = integrate_interior(q, fvals);
    const EvalBatch bdr = forward(params, q.boundary_points);
    const double u_mean = mean_boundary(q, bdr.values);
    return f_integral / (2.0 * lambda_target * problem.domain.perimeter()) -
           u_mean;
}

double measure_weighted_energy(const Problem& problem, const QuadratureSet& q,
                               const Parameters& params, double lambda,
                               double t) {
    detail::NetWorkspace ws(params.arch);
    double u;
    Vec2 g;
    double grad_sum = 0.0, fu_sum = 0.0;
    for (const Vec2& x : q.interior_points) {
        ws.forward_point(params, x, u, g);
        grad_sum += 0.5 * (g[0] * g[0] + g[1] * g[1]);
        fu_sum += problem.rhs(x) * (u + t);
    }
    double bdr_sq = 0.0;
    for (const Vec2& z : q.boundary_points) {
        ws.forward_point(params, z, u, g);
        bdr_sq += (u + t) * (u + t);
    }
    return q.interior_cell_measure * (grad_sum - fu_sum) +
           lambda * problem.domain.perimeter() * bdr_sq /
               static_cast<double>(q.boundary_count());
}

namespace {

struct MonitorContext {
    std::vector<Vec2> interior;
    std::vector<Vec2> boundary;
};

void record_monitor(TrainedModel& model, const Problem& problem,
                    const MonitorContext& ctx, long iteration, double loss,
                    double lambda, const DistanceFunction* d) {
    const double energy = energy_estimate(problem, model.params, ctx.interior,
                                          ctx.boundary, lambda, d);
    model.monitor_trace.push_back({iteration, loss, energy});
}

// Runs `iterations` Adam steps on the given loss evaluator. Returns false
// if the run hit a non-finite loss or gradient.
template <class LossFn>
bool run_phase(TrainedModel& model, AdamState& adam, const LRSchedule& schedule,
               long iter_base, LossFn&& loss_fn, const Problem& problem,
               const MonitorContext* monitor, long monitor_every, double lambda,
               const DistanceFunction* d) {
    const long iterations = schedule.total_iterations();
    for (long i = 0; i < iterations; ++i) {
        LossAndGrad lg = loss_fn(model.params);
        model.loss_trace.push_back(lg.loss);
        const long global_iter = iter_base + i;
        if (monitor && global_iter % monitor_every == 0)
            record_monitor(model, problem, *monitor, global_iter, lg.loss,
                           lambda, d);
        if (!std::isfinite(lg.loss) ||
            !adam_step(adam, model.params.data, lg.grad, schedule.lr_at(i))) {
            model.failed = true;
            model.fail_iteration = global_iter;
            return false;
        }
    }
    return true;
}

} // namespace

TrainedModel train(const StrategyConfig& config) {
    const auto t_start = std::chrono::steady_clock::now();
    const Problem prob = problem(config.problem);
    const QuadratureSet q = build_quadrature(prob.domain, config.lattice_n);
    const Architecture arch;

    TrainedModel model;
    model.config = config;
    model.params = init_glorot(arch, config.seed);

    std::optional<DistanceFunction> dist;
    if (config.kind == StrategyKind::ExactBC) {
        dist = distance_fn(config.distance);
        if (dist->domain != config.problem)
            throw std::invalid_argument(
                "distance function does not match the problem domain");
    }

    MonitorContext monitor_ctx;
    const MonitorContext* monitor = nullptr;
    if (config.monitor_every > 0) {
        monitor_ctx.interior = sample_uniform(
            prob.domain, config.monitor_interior_samples, config.seed * 2 + 1);
        monitor_ctx.boundary = sample_boundary_uniform(
            prob.domain, config.monitor_boundary_samples, config.seed * 2 + 2);
        monitor = &monitor_ctx;
    }

    AdamState adam(model.params.data.size());
    const LRSchedule main_schedule{{{config.main_iterations, config.main_lr}}};
    double final_lambda = config.lambda;
    bool ok = true;

    switch (config.kind) {
        case StrategyKind::Naive: {
            PenaltyLossSpec spec(config.lambda, prob, q);
            ok = run_phase(
                model, adam, main_schedule, 0,
                [&](const Parameters& p) { return penalty_loss_and_grad(spec, p); },
                prob, monitor, config.monitor_every, config.lambda, nullptr);
            break;
        }
        case StrategyKind::PreTrain: {
            PenaltyLossSpec pre_spec(config.lambda_pre, prob, q);
            ok = run_phase(
                model, adam, config.pre_schedule, 0,
                [&](const Parameters& p) {
                    return penalty_loss_and_grad(pre_spec, p);
                },
                prob, monitor, config.monitor_every, config.lambda_pre, nullptr);
            if (ok) {
                const double t =
                    config.shift_override
                        ? *config.shift_override
                        : optimal_shift(prob, q, model.params, config.lambda);
                model.applied_shift = t;
                model.params = shift_output_bias(model.params, t);
                adam = AdamState(model.params.data.size()); // fresh optimizer
                PenaltyLossSpec main_spec(config.lambda, prob, q);
                ok = run_phase(
                    model, adam, main_schedule,
                    config.pre_schedule.total_iterations(),
                    [&](const Parameters& p) {
                        return penalty_loss_and_grad(main_spec, p);
                    },
                    prob, monitor, config.monitor_every, config.lambda, nullptr);
            }
            break;
        }
        case StrategyKind::ExactBC: {
            ExactBCLossSpec spec(prob, q, *dist);
            ok = run_phase(
                model, adam, main_schedule, 0,
                [&](const Parameters& p) { return exactbc_loss_and_grad(spec, p); },
                prob, monitor, config.monitor_every, config.lambda,
                &*dist);
            break;
        }
    }

    if (ok && monitor) {
        // closing sample with the final parameters
        double final_loss;
        const long total = config.total_iterations();
        switch (config.kind) {
            case StrategyKind::ExactBC: {
                ExactBCLossSpec spec(prob, q, *dist);
                final_loss = exactbc_loss_and_grad(spec, model.params).loss;
                break;
            }
            default: {
                PenaltyLossSpec spec(final_lambda, prob, q);
                final_loss = penalty_loss_value(spec, model.params);
            }
        }
        record_monitor(model, prob, monitor_ctx, total, final_loss,
                       final_lambda, dist ? &*dist : nullptr);
    }

    model.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    return model;
}

} // namespace dritz
