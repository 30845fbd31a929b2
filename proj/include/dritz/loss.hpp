#pragma once

#include <optional>
#include <utility>

#include "dritz/geom.hpp"
#include "dritz/net.hpp"
#include "dritz/prob.hpp"

namespace dritz {

// Boundary-penalty objective on a fixed training grid:
//   mean_i [ 1/2 |grad u(x_i)|^2 - f(x_i) u(x_i) ] + lambda * mean_j u(z_j)^2
struct PenaltyLossSpec {
    double lambda;
    const Problem* problem;
    const QuadratureSet* quadrature;
    std::vector<double> rhs_at_interior; // cached f(x_i)

    PenaltyLossSpec(double lam, const Problem& p, const QuadratureSet& q);
};

// Exact boundary conditions through the ansatz d * u_theta:
//   mean_i [ 1/2 |grad(d u)(x_i)|^2 - f(x_i) d(x_i) u(x_i) ]
struct ExactBCLossSpec {
    const Problem* problem;
    const QuadratureSet* quadrature;
    DistanceFunction d;
    std::vector<double> rhs_at_interior;
    std::vector<double> d_at_interior;
    std::vector<Vec2> dgrad_at_interior;

    ExactBCLossSpec(const Problem& p, const QuadratureSet& q,
                    const DistanceFunction& dist);
};

struct LossAndGrad {
    double loss;
    std::vector<double> grad;
};

LossAndGrad penalty_loss_and_grad(const PenaltyLossSpec& spec,
                                  const Parameters& params);

LossAndGrad exactbc_loss_and_grad(const ExactBCLossSpec& spec,
                                  const Parameters& params);

// Same mean-based objective evaluated on arbitrary sample sets (Monte
// Carlo "energy"). With a distance function the exact-BC form is used and
// the boundary term is dropped.
double energy_estimate(const Problem& problem, const Parameters& params,
                       std::span<const Vec2> interior_samples,
                       std::span<const Vec2> boundary_samples, double lambda,
                       const DistanceFunction* d = nullptr);

// Penalty loss value only (no parameter gradient).
double penalty_loss_value(const PenaltyLossSpec& spec, const Parameters& params);

} // namespace dritz
