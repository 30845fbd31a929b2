#include "dritz/loss.hpp"

#include <cmath>

namespace dritz {

PenaltyLossSpec::PenaltyLossSpec(double lam, const Problem& p,
                                 const QuadratureSet& q)
    : lambda(lam), problem(&p), quadrature(&q) {
    rhs_at_interior.reserve(q.interior_count());
    for (const Vec2& x : q.interior_points) rhs_at_interior.push_back(p.rhs(x));
}

ExactBCLossSpec::ExactBCLossSpec(const Problem& p, const QuadratureSet& q,
                                 const DistanceFunction& dist)
    : problem(&p), quadrature(&q), d(dist) {
    rhs_at_interior.reserve(q.interior_count());
    d_at_interior.reserve(q.interior_count());
    dgrad_at_interior.reserve(q.interior_count());
    for (const Vec2& x : q.interior_points) {
        rhs_at_interior.push_back(p.rhs(x));
        d_at_interior.push_back(dist.eval(x));
        dgrad_at_interior.push_back(dist.grad(x));
    }
}

LossAndGrad penalty_loss_and_grad(const PenaltyLossSpec& spec,
                                  const Parameters& params) {
    const QuadratureSet& q = *spec.quadrature;
    const double n_int = static_cast<double>(q.interior_count());
    const double n_bdr = static_cast<double>(q.boundary_count());

    LossAndGrad out{0.0, std::vector<double>(params.arch.param_count(), 0.0)};
    detail::NetWorkspace ws(params.arch);
    double u;
    Vec2 g;
    double interior = 0.0;
    for (std::size_t i = 0; i < q.interior_count(); ++i) {
        ws.forward_point(params, q.interior_points[i], u, g);
        const double f = spec.rhs_at_interior[i];
        interior += 0.5 * (g[0] * g[0] + g[1] * g[1]) - f * u;
        ws.backward_point(params, -f / n_int, {g[0] / n_int, g[1] / n_int},
                          out.grad);
    }
    double boundary = 0.0;
    for (std::size_t j = 0; j < q.boundary_count(); ++j) {
        ws.forward_point(params, q.boundary_points[j], u, g);
        boundary += u * u;
        ws.backward_point(params, 2.0 * spec.lambda * u / n_bdr, {0.0, 0.0},
                          out.grad);
    }
    out.loss = interior / n_int + spec.lambda * boundary / n_bdr;
    return out;
}

double penalty_loss_value(const PenaltyLossSpec& spec,
                          const Parameters& params) {
    const QuadratureSet& q = *spec.quadrature;
    detail::NetWorkspace ws(params.arch);
    double u;
    Vec2 g;
    double interior = 0.0;
    for (std::size_t i = 0; i < q.interior_count(); ++i) {
        ws.forward_point(params, q.interior_points[i], u, g);
        interior += 0.5 * (g[0] * g[0] + g[1] * g[1]) -
                    spec.rhs_at_interior[i] * u;
    }
    double boundary = 0.0;
    for (std::size_t j = 0; j < q.boundary_count(); ++j) {
        ws.forward_point(params, q.boundary_points[j], u, g);
        boundary += u * u;
    }
    return interior / static_cast<double>(q.interior_count()) +
           spec.lambda * boundary / static_cast<double>(q.boundary_count());
}

LossAndGrad exactbc_loss_and_grad(const ExactBCLossSpec& spec,
                                  const Parameters& params) {
    const QuadratureSet& q = *spec.quadrature;
    const double n_int = static_cast<double>(q.interior_count());

    LossAndGrad out{0.0, std::vector<double>(params.arch.param_count(), 0.0)};
    detail::NetWorkspace ws(params.arch);
    double u;
    Vec2 g;
    double acc = 0.0;
    for (std::size_t i = 0; i < q.interior_count(); ++i) {
        ws.forward_point(params, q.interior_points[i], u, g);
        const double f = spec.rhs_at_interior[i];
        const double dv = spec.d_at_interior[i];
        const Vec2& dg = spec.dgrad_at_interior[i];
        // grad(d u) = u grad d + d grad u
        const Vec2 gprod{u * dg[0] + dv * g[0], u * dg[1] + dv * g[1]};
        acc += 0.5 * (gprod[0] * gprod[0] + gprod[1] * gprod[1]) - f * dv * u;
        const double a = (gprod[0] * dg[0] + gprod[1] * dg[1] - f * dv) / n_int;
        ws.backward_point(params, a,
                          {dv * gprod[0] / n_int, dv * gprod[1] / n_int},
                          out.grad);
    }
    out.loss = acc / n_int;
    return out;
}

double energy_estimate(const Problem& problem, const Parameters& params,
                       std::span<const Vec2> interior_samples,
                       std::span<const Vec2> boundary_samples, double lambda,
                       const DistanceFunction* d) {
    detail::NetWorkspace ws(params.arch);
    double u;
    Vec2 g;
    double interior = 0.0;
    for (const Vec2& x : interior_samples) {
        ws.forward_point(params, x, u, g);
        const double f = problem.rhs(x);
        if (d) {
            const double dv = d->eval(x);
            const Vec2 dg = d->grad(x);
            const Vec2 gprod{u * dg[0] + dv * g[0], u * dg[1] + dv * g[1]};
            interior +=
                0.5 * (gprod[0] * gprod[0] + gprod[1] * gprod[1]) - f * dv * u;
        } else {
            interior += 0.5 * (g[0] * g[0] + g[1] * g[1]) - f * u;
        }
    }
    double result = interior / static_cast<double>(interior_samples.size());
    if (!d && !boundary_samples.empty()) {
        double boundary = 0.0;
        for (const Vec2& z : boundary_samples) {
            ws.forward_point(params, z, u, g);
            boundary += u * u;
        }
        result += lambda * boundary / static_cast<double>(boundary_samples.size());
    }
    return result;
}

} // namespace dritz
