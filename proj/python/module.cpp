#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "dritz/experiment.hpp"
#include "dritz/metrics.hpp"
#include "dritz/strat.hpp"

namespace py = pybind11;
using namespace dritz;

namespace {

StrategyConfig make_config(const std::string& strategy,
                           const std::string& problem_name, double lambda,
                           const std::string& distance, int lattice_n,
                           long iterations, std::uint64_t seed) {
    const DomainKind dom = domain_kind_from_name(problem_name);
    const StrategyKind kind = strategy_from_name(strategy);
    StrategyConfig cfg;
    switch (kind) {
        case StrategyKind::Naive:
            cfg = naive_config(dom, lambda, lattice_n, seed);
            break;
        case StrategyKind::PreTrain:
            cfg = pretrain_config(dom, lambda, lattice_n, seed);
            break;
        case StrategyKind::ExactBC:
            cfg = exactbc_config(dom,
                                 distance.empty() ? distance_ids_for(dom)[0]
                                                  : distance_id_from_name(distance),
                                 lattice_n, seed);
            break;
    }
    if (iterations > 0) {
        if (kind == StrategyKind::PreTrain) {
            cfg.pre_schedule =
                LRSchedule{{{std::lround(iterations * 0.1), 0.01},
                            {std::lround(iterations * 0.3), 0.001}}};
            cfg.main_iterations = iterations - cfg.pre_schedule.total_iterations();
        } else {
            cfg.main_iterations = iterations;
        }
    }
    return cfg;
}

} // namespace

PYBIND11_MODULE(_dritz, m) {
    m.doc() = "deep ritz boundary-condition strategies";

    m.def("param_count", []() { return Architecture{}.param_count(); });

    m.def(
        "init_glorot",
        [](std::uint64_t seed) { return init_glorot(Architecture{}, seed).data; },
        py::arg("seed"));

    m.def(
        "forward",
        [](const std::vector<double>& params,
           const std::vector<std::pair<double, double>>& points) {
            if (params.size() !=
                static_cast<std::size_t>(Architecture{}.param_count()))
                throw std::invalid_argument("forward: wrong parameter count");
            std::vector<Vec2> pts;
            pts.reserve(points.size());
            for (const auto& [x, y] : points) pts.push_back({x, y});
            const EvalBatch b = forward(Parameters{Architecture{}, params}, pts);
            std::vector<std::pair<double, double>> grads;
            grads.reserve(b.input_grads.size());
            for (const Vec2& g : b.input_grads) grads.emplace_back(g[0], g[1]);
            return py::make_tuple(b.values, grads);
        },
        py::arg("params"), py::arg("points"));

    m.def(
        "quadrature_counts",
        [](const std::string& problem_name, int lattice_n) {
            const QuadratureSet q = build_quadrature(
                make_domain(domain_kind_from_name(problem_name)), lattice_n);
            return py::make_tuple(q.interior_count(), q.boundary_count());
        },
        py::arg("problem"), py::arg("lattice_n"));

    m.def(
        "distance",
        [](const std::string& name, double x, double y) {
            const DistanceFunction d = distance_fn(distance_id_from_name(name));
            const Vec2 g = d.grad({x, y});
            return py::make_tuple(d.eval({x, y}), g[0], g[1]);
        },
        py::arg("name"), py::arg("x"), py::arg("y"));

    m.def(
        "train",
        [](const std::string& strategy, const std::string& problem_name,
           double lambda, const std::string& distance, int lattice_n,
           long iterations, std::uint64_t seed, std::size_t error_samples) {
            const StrategyConfig cfg = make_config(
                strategy, problem_name, lambda, distance, lattice_n, iterations,
                seed);
            const TrainedModel model = train(cfg);
            py::dict out;
            out["params"] = model.params.data;
            out["failed"] = model.failed;
            out["final_loss"] =
                model.loss_trace.empty() ? py::object(py::none())
                                         : py::cast(model.loss_trace.back());
            out["iterations"] = model.loss_trace.size();
            out["applied_shift"] = model.applied_shift;
            if (!model.failed && error_samples > 0) {
                const Problem prob = problem(cfg.problem);
                const ErrorReport r = relative_errors(
                    trained_oracle(model), prob.dirichlet_ref, prob.domain,
                    error_samples, seed + 0x9000000000ull);
                out["rel_l2"] = r.rel_l2;
                out["rel_h1"] = r.rel_h1;
            }
            return out;
        },
        py::arg("strategy"), py::arg("problem"), py::arg("lam") = 100.0,
        py::arg("distance") = "", py::arg("lattice_n") = 10,
        py::arg("iterations") = 0, py::arg("seed") = 0,
        py::arg("error_samples") = 10000);

    m.def(
        "run_experiment",
        [](const std::string& config_text, const std::string& out_dir,
           bool force, int jobs) {
            ExperimentConfig cfg = parse_experiment_config(config_text);
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            const std::vector<RunRecord> recs = cmd_run(cfg, force, jobs);
            return records_to_csv(recs, cfg.hash());
        },
        py::arg("config_text"), py::arg("out_dir") = "", py::arg("force") = false,
        py::arg("jobs") = 1);
}
