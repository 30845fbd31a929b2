#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dritz/net.hpp" // Vec2

namespace dritz {

enum class DomainKind { Disk, Annulus, UnitSquare };

// Model domains: unit disk, annulus 1<r<2, unit square (0,1)^2.
struct Domain {
    DomainKind kind;

    double area() const;
    double perimeter() const;
    // Strict interior membership.
    bool contains(const Vec2& x) const;
    // Residual of the defining boundary equation; ~0 on the boundary.
    double boundary_residual(const Vec2& x) const;
    // Axis-aligned bounding box [lo, hi]^2 per coordinate.
    void bounding_box(Vec2& lo, Vec2& hi) const;
    // A point well inside the domain (in-radius midpoint).
    Vec2 interior_anchor() const;
    std::string name() const;
};

Domain make_domain(DomainKind kind);
DomainKind domain_kind_from_name(const std::string& name);

// One boundary component: equi-spaced points and the arclength each carries.
struct BoundaryComponent {
    std::size_t count;
    double segment_measure; // component length / count
};

// Deterministic training grid: interior lattice points of (1/N)Z^2 and
// equi-spaced boundary points, round(N * component length) per component.
struct QuadratureSet {
    std::vector<Vec2> interior_points;
    std::vector<Vec2> boundary_points;
    std::vector<BoundaryComponent> boundary_components;
    int lattice_constant = 0;
    double interior_cell_measure = 0.0; // 1/N^2

    std::size_t interior_count() const { return interior_points.size(); }
    std::size_t boundary_count() const { return boundary_points.size(); }
};

QuadratureSet build_quadrature(const Domain& domain, int N);

// Measure-weighted lattice rule: (1/N^2) * sum(values).
double integrate_interior(const QuadratureSet& q, std::span<const double> values);

// Arithmetic mean over boundary points; multiply by the perimeter for a
// true boundary integral.
double mean_boundary(const QuadratureSet& q, std::span<const double> values);

// I.i.d. uniform points in the domain, rejection-sampled from the bounding
// box; deterministic given the seed.
std::vector<Vec2> sample_uniform(const Domain& domain, std::size_t n,
                                 std::uint64_t seed);

// I.i.d. uniform points on the boundary (arclength measure).
std::vector<Vec2> sample_boundary_uniform(const Domain& domain, std::size_t n,
                                          std::uint64_t seed);

enum class DistanceId {
    DiskTrig,    // cos(pi r / 2)
    DiskPol,     // r^2 - 1
    SquareTrig,  // sin(pi x) sin(pi y)
    SquarePol,   // x(x-1) y(y-1)
    AnnulusTrig, // sin(pi r)
    AnnulusPol,  // -(r-1)(r-2)
};

// Smooth function vanishing on the boundary of its domain, with exact
// analytic gradient. Sign and scale follow the defining formulas and are
// not normalized.
struct DistanceFunction {
    DistanceId id;
    DomainKind domain;
    std::function<double(const Vec2&)> eval;
    std::function<Vec2(const Vec2&)> grad;
};

DistanceFunction distance_fn(DistanceId id);
DistanceId distance_id_from_name(const std::string& name);
std::string distance_name(DistanceId id);
// The trig/pol pair belonging to a domain.
std::vector<DistanceId> distance_ids_for(DomainKind kind);

} // namespace dritz
