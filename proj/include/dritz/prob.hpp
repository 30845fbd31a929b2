#pragma once

#include <functional>
#include <optional>

#include "dritz/geom.hpp"

namespace dritz {

// Closed-form solution with its analytic gradient.
struct ReferenceSolution {
    std::function<double(const Vec2&)> value;
    std::function<Vec2(const Vec2&)> gradient;
};

// One benchmark: domain, right-hand side, and the available references.
struct Problem {
    Domain domain;
    std::function<double(const Vec2&)> rhs;
    ReferenceSolution dirichlet_ref;
    bool has_robin = false;
};

Problem problem(DomainKind kind);

// Closed-form solution of -Laplace u = f with du/dn + 2 lambda u = 0.
// Available on the disk and the annulus; throws for the square or
// lambda <= 0.
ReferenceSolution robin_solution(DomainKind kind, double lambda);

// Log coefficients of the annulus Robin solution, exposed for tests.
void annulus_robin_coefficients(double lambda, double& c1, double& c2);

// Residual -Laplace_h u(x) - f(x) with the 5-point stencil; self-test
// oracle only. Throws if the stencil leaves the domain.
double pde_residual(const ReferenceSolution& ref,
                    const std::function<double(const Vec2&)>& f,
                    const Domain& domain, const Vec2& x, double h);

} // namespace dritz
