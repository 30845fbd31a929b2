#include "dritz/prob.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dritz {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
} // namespace

Problem problem(DomainKind kind) {
    Problem p;
    p.domain = make_domain(kind);
    switch (kind) {
        case DomainKind::Disk:
            p.rhs = [](const Vec2&) { return 1.0; };
            p.dirichlet_ref = {
                [](const Vec2& x) {
                    return -0.25 * (x[0] * x[0] + x[1] * x[1]) + 0.25;
                },
                [](const Vec2& x) {
                    return Vec2{-0.5 * x[0], -0.5 * x[1]};
                }};
            p.has_robin = true;
            break;
        case DomainKind::Annulus: {
            const double c = 3.0 / (4.0 * std::log(2.0));
            p.rhs = [](const Vec2&) { return 1.0; };
            p.dirichlet_ref = {
                [c](const Vec2& x) {
                    const double r2 = x[0] * x[0] + x[1] * x[1];
                    return -0.25 * r2 + c * 0.5 * std::log(r2) + 0.25;
                },
                [c](const Vec2& x) {
                    const double r2 = x[0] * x[0] + x[1] * x[1];
                    return Vec2{-0.5 * x[0] + c * x[0] / r2,
                                -0.5 * x[1] + c * x[1] / r2};
                }};
            p.has_robin = true;
            break;
        }
        case DomainKind::UnitSquare:
            p.rhs = [](const Vec2& x) {
                return 8.0 * kPi * kPi * std::sin(kTwoPi * x[0]) *
                       std::sin(kTwoPi * x[1]);
            };
            p.dirichlet_ref = {
                [](const Vec2& x) {
                    return std::sin(kTwoPi * x[0]) * std::sin(kTwoPi * x[1]);
                },
                [](const Vec2& x) {
                    return Vec2{
                        kTwoPi * std::cos(kTwoPi * x[0]) * std::sin(kTwoPi * x[1]),
                        kTwoPi * std::sin(kTwoPi * x[0]) * std::cos(kTwoPi * x[1])};
                }};
            p.has_robin = false;
            break;
    }
    return p;
}

void annulus_robin_coefficients(double lambda, double& c1, double& c2) {
    c1 = (1.0 + 2.0 * lambda * (0.75 + 1.0 / (4.0 * lambda))) /
         (0.5 + 2.0 * lambda * (std::log(2.0) + 1.0 / (2.0 * lambda)));
    c2 = c1 / (2.0 * lambda) + 0.25 - 1.0 / (4.0 * lambda);
}

ReferenceSolution robin_solution(DomainKind kind, double lambda) {
    if (lambda <= 0.0)
        throw std::invalid_argument("robin_solution: lambda must be > 0");
    switch (kind) {
        case DomainKind::Disk: {
            const double shift = 0.25 + 1.0 / (4.0 * lambda);
            return {[shift](const Vec2& x) {
                        return -0.25 * (x[0] * x[0] + x[1] * x[1]) + shift;
                    },
                    [](const Vec2& x) {
                        return Vec2{-0.5 * x[0], -0.5 * x[1]};
                    }};
        }
        case DomainKind::Annulus: {
            double c1, c2;
            annulus_robin_coefficients(lambda, c1, c2);
            return {[c1, c2](const Vec2& x) {
                        const double r2 = x[0] * x[0] + x[1] * x[1];
                        return -0.25 * r2 + c1 * 0.5 * std::log(r2) + c2;
                    },
                    [c1](const Vec2& x) {
                        const double r2 = x[0] * x[0] + x[1] * x[1];
                        return Vec2{-0.5 * x[0] + c1 * x[0] / r2,
                                    -0.5 * x[1] + c1 * x[1] / r2};
                    }};
        }
        case DomainKind::UnitSquare:
            throw std::invalid_argument(
                "robin_solution: no closed form on the square");
    }
    throw std::invalid_argument("robin_solution: unknown domain");
}

double pde_residual(const ReferenceSolution& ref,
                    const std::function<double(const Vec2&)>& f,
                    const Domain& domain, const Vec2& x, double h) {
    const Vec2 stencil[4] = {{x[0] + h, x[1]},
                             {x[0] - h, x[1]},
                             {x[0], x[1] + h},
                             {x[0], x[1] - h}};
    for (const Vec2& s : stencil)
        if (!domain.contains(s))
            throw std::invalid_argument("pde_residual: stencil leaves domain");
    const double lap = (ref.value(stencil[0]) + ref.value(stencil[1]) +
                        ref.value(stencil[2]) + ref.value(stencil[3]) -
                        4.0 * ref.value(x)) /
                       (h * h);
    return -lap - f(x);
}

} // namespace dritz
