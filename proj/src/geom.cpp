#include "dritz/geom.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dritz/rng.hpp"

namespace dritz {

namespace {
constexpr double kPi = std::numbers::pi;

double norm2(const Vec2& x) { return std::hypot(x[0], x[1]); }
} // namespace

double Domain::area() const {
    switch (kind) {
        case DomainKind::Disk: return kPi;
        case DomainKind::Annulus: return 3.0 * kPi;
        case DomainKind::UnitSquare: return 1.0;
    }
    return 0.0;
}

double Domain::perimeter() const {
    switch (kind) {
        case DomainKind::Disk: return 2.0 * kPi;
        case DomainKind::Annulus: return 6.0 * kPi;
        case DomainKind::UnitSquare: return 4.0;
    }
    return 0.0;
}

bool Domain::contains(const Vec2& x) const {
    switch (kind) {
        case DomainKind::Disk:
            return x[0] * x[0] + x[1] * x[1] < 1.0;
        case DomainKind::Annulus: {
            const double r2 = x[0] * x[0] + x[1] * x[1];
            return r2 > 1.0 && r2 < 4.0;
        }
        case DomainKind::UnitSquare:
            return x[0] > 0.0 && x[0] < 1.0 && x[1] > 0.0 && x[1] < 1.0;
    }
    return false;
}

double Domain::boundary_residual(const Vec2& x) const {
    switch (kind) {
        case DomainKind::Disk:
            return std::abs(norm2(x) - 1.0);
        case DomainKind::Annulus: {
            const double r = norm2(x);
            return std::min(std::abs(r - 1.0), std::abs(r - 2.0));
        }
        case DomainKind::UnitSquare: {
            const double dx = std::min(std::abs(x[0]), std::abs(x[0] - 1.0));
            const double dy = std::min(std::abs(x[1]), std::abs(x[1] - 1.0));
            return std::min(dx, dy);
        }
    }
    return 0.0;
}

void Domain::bounding_box(Vec2& lo, Vec2& hi) const {
    switch (kind) {
        case DomainKind::Disk:
            lo = {-1.0, -1.0};
            hi = {1.0, 1.0};
            break;
        case DomainKind::Annulus:
            lo = {-2.0, -2.0};
            hi = {2.0, 2.0};
            break;
        case DomainKind::UnitSquare:
            lo = {0.0, 0.0};
            hi = {1.0, 1.0};
            break;
    }
}

Vec2 Domain::interior_anchor() const {
    switch (kind) {
        case DomainKind::Disk: return {0.0, 0.0};
        case DomainKind::Annulus: return {1.5, 0.0};
        case DomainKind::UnitSquare: return {0.5, 0.5};
    }
    return {0.0, 0.0};
}

std::string Domain::name() const {
    switch (kind) {
        case DomainKind::Disk: return "disk";
        case DomainKind::Annulus: return "annulus";
        case DomainKind::UnitSquare: return "square";
    }
    return "?";
}

Domain make_domain(DomainKind kind) { return Domain{kind}; }

DomainKind domain_kind_from_name(const std::string& name) {
    if (name == "disk") return DomainKind::Disk;
    if (name == "annulus") return DomainKind::Annulus;
    if (name == "square") return DomainKind::UnitSquare;
    throw std::invalid_argument("unknown problem kind: " + name);
}

namespace {

void append_circle(std::vector<Vec2>& pts, double radius, std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
        const double theta = 2.0 * kPi * static_cast<double>(k) /
                             static_cast<double>(count);
        pts.push_back({radius * std::cos(theta), radius * std::sin(theta)});
    }
}

Vec2 square_perimeter_point(double s) {
    // Arclength parametrization of the unit square, counterclockwise from
    // the origin, s in [0, 4).
    if (s < 1.0) return {s, 0.0};
    if (s < 2.0) return {1.0, s - 1.0};
    if (s < 3.0) return {3.0 - s, 1.0};
    return {0.0, 4.0 - s};
}

} // namespace

QuadratureSet build_quadrature(const Domain& domain, int N) {
    if (N < 2) throw std::invalid_argument("build_quadrature: N must be >= 2");
    QuadratureSet q;
    q.lattice_constant = N;
    q.interior_cell_measure = 1.0 / (static_cast<double>(N) * N);

    Vec2 lo, hi;
    domain.bounding_box(lo, hi);
    const auto ilo = static_cast<long>(std::floor(lo[0] * N)) - 1;
    const auto ihi = static_cast<long>(std::ceil(hi[0] * N)) + 1;
    for (long i = ilo; i <= ihi; ++i) {
        for (long j = ilo; j <= ihi; ++j) {
            const Vec2 x{static_cast<double>(i) / N, static_cast<double>(j) / N};
            if (domain.contains(x)) q.interior_points.push_back(x);
        }
    }

    switch (domain.kind) {
        case DomainKind::Disk: {
            const auto n = static_cast<std::size_t>(std::llround(N * 2.0 * kPi));
            append_circle(q.boundary_points, 1.0, n);
            q.boundary_components.push_back({n, 2.0 * kPi / n});
            break;
        }
        case DomainKind::Annulus: {
            const auto n1 = static_cast<std::size_t>(std::llround(N * 2.0 * kPi));
            const auto n2 = static_cast<std::size_t>(std::llround(N * 4.0 * kPi));
            append_circle(q.boundary_points, 1.0, n1);
            append_circle(q.boundary_points, 2.0, n2);
            q.boundary_components.push_back({n1, 2.0 * kPi / n1});
            q.boundary_components.push_back({n2, 4.0 * kPi / n2});
            break;
        }
        case DomainKind::UnitSquare: {
            const auto n = static_cast<std::size_t>(std::llround(N * 4.0));
            for (std::size_t k = 0; k < n; ++k)
                q.boundary_points.push_back(
                    square_perimeter_point(4.0 * static_cast<double>(k) / n));
            q.boundary_components.push_back({n, 4.0 / n});
            break;
        }
    }
    return q;
}

double integrate_interior(const QuadratureSet& q, std::span<const double> values) {
    if (values.size() != q.interior_count())
        throw std::invalid_argument("integrate_interior: length mismatch");
    double sum = 0.0;
    for (double v : values) sum += v;
    return q.interior_cell_measure * sum;
}

double mean_boundary(const QuadratureSet& q, std::span<const double> values) {
    if (values.size() != q.boundary_count())
        throw std::invalid_argument("mean_boundary: length mismatch");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

std::vector<Vec2> sample_uniform(const Domain& domain, std::size_t n,
                                 std::uint64_t seed) {
    Vec2 lo, hi;
    domain.bounding_box(lo, hi);
    Rng rng(seed);
    std::vector<Vec2> out;
    out.reserve(n);
    while (out.size() < n) {
        const Vec2 x{rng.uniform(lo[0], hi[0]), rng.uniform(lo[1], hi[1])};
        if (domain.contains(x)) out.push_back(x);
    }
    return out;
}

std::vector<Vec2> sample_boundary_uniform(const Domain& domain, std::size_t n,
                                          std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Vec2> out;
    out.reserve(n);
    switch (domain.kind) {
        case DomainKind::Disk:
            for (std::size_t i = 0; i < n; ++i) {
                const double t = rng.uniform(0.0, 2.0 * kPi);
                out.push_back({std::cos(t), std::sin(t)});
            }
            break;
        case DomainKind::Annulus:
            for (std::size_t i = 0; i < n; ++i) {
                // components weighted by arclength: 1/3 inner, 2/3 outer
                const double r = rng.uniform() < 1.0 / 3.0 ? 1.0 : 2.0;
                const double t = rng.uniform(0.0, 2.0 * kPi);
                out.push_back({r * std::cos(t), r * std::sin(t)});
            }
            break;
        case DomainKind::UnitSquare:
            for (std::size_t i = 0; i < n; ++i)
                out.push_back(square_perimeter_point(rng.uniform(0.0, 4.0)));
            break;
    }
    return out;
}

namespace {

Vec2 radial_grad(const Vec2& x, double dval_dr) {
    const double r = std::hypot(x[0], x[1]);
    if (r == 0.0) return {0.0, 0.0}; // smooth extension at the center
    return {dval_dr * x[0] / r, dval_dr * x[1] / r};
}

} // namespace

DistanceFunction distance_fn(DistanceId id) {
    switch (id) {
        case DistanceId::DiskTrig:
            return {id, DomainKind::Disk,
                    [](const Vec2& x) {
                        return std::cos(kPi / 2.0 * std::hypot(x[0], x[1]));
                    },
                    [](const Vec2& x) {
                        const double r = std::hypot(x[0], x[1]);
                        return radial_grad(x, -kPi / 2.0 * std::sin(kPi / 2.0 * r));
                    }};
        case DistanceId::DiskPol:
            return {id, DomainKind::Disk,
                    [](const Vec2& x) {
                        return x[0] * x[0] + x[1] * x[1] - 1.0;
                    },
                    [](const Vec2& x) {
                        return Vec2{2.0 * x[0], 2.0 * x[1]};
                    }};
        case DistanceId::SquareTrig:
            return {id, DomainKind::UnitSquare,
                    [](const Vec2& x) {
                        return std::sin(kPi * x[0]) * std::sin(kPi * x[1]);
                    },
                    [](const Vec2& x) {
                        return Vec2{
                            kPi * std::cos(kPi * x[0]) * std::sin(kPi * x[1]),
                            kPi * std::sin(kPi * x[0]) * std::cos(kPi * x[1])};
                    }};
        case DistanceId::SquarePol:
            return {id, DomainKind::UnitSquare,
                    [](const Vec2& x) {
                        return x[0] * (x[0] - 1.0) * x[1] * (x[1] - 1.0);
                    },
                    [](const Vec2& x) {
                        return Vec2{
                            (2.0 * x[0] - 1.0) * x[1] * (x[1] - 1.0),
                            x[0] * (x[0] - 1.0) * (2.0 * x[1] - 1.0)};
                    }};
        case DistanceId::AnnulusTrig:
            return {id, DomainKind::Annulus,
                    [](const Vec2& x) {
                        return std::sin(kPi * std::hypot(x[0], x[1]));
                    },
                    [](const Vec2& x) {
                        const double r = std::hypot(x[0], x[1]);
                        return radial_grad(x, kPi * std::cos(kPi * r));
                    }};
        case DistanceId::AnnulusPol:
            return {id, DomainKind::Annulus,
                    [](const Vec2& x) {
                        const double r = std::hypot(x[0], x[1]);
                        return -(r - 1.0) * (r - 2.0);
                    },
                    [](const Vec2& x) {
                        const double r = std::hypot(x[0], x[1]);
                        return radial_grad(x, -(2.0 * r - 3.0));
                    }};
    }
    throw std::invalid_argument("unknown distance id");
}

std::string distance_name(DistanceId id) {
    switch (id) {
        case DistanceId::DiskTrig: return "disk_trig";
        case DistanceId::DiskPol: return "disk_pol";
        case DistanceId::SquareTrig: return "square_trig";
        case DistanceId::SquarePol: return "square_pol";
        case DistanceId::AnnulusTrig: return "annulus_trig";
        case DistanceId::AnnulusPol: return "annulus_pol";
    }
    return "?";
}

DistanceId distance_id_from_name(const std::string& name) {
    for (DistanceId id : {DistanceId::DiskTrig, DistanceId::DiskPol,
                          DistanceId::SquareTrig, DistanceId::SquarePol,
                          DistanceId::AnnulusTrig, DistanceId::AnnulusPol})
        if (distance_name(id) == name) return id;
    throw std::invalid_argument("unknown distance function: " + name);
}

std::vector<DistanceId> distance_ids_for(DomainKind kind) {
    switch (kind) {
        case DomainKind::Disk:
            return {DistanceId::DiskTrig, DistanceId::DiskPol};
        case DomainKind::UnitSquare:
            return {DistanceId::SquareTrig, DistanceId::SquarePol};
        case DomainKind::Annulus:
            return {DistanceId::AnnulusTrig, DistanceId::AnnulusPol};
    }
    return {};
}

} // namespace dritz
