#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "dritz/geom.hpp"
#include "test_util.hpp"

using namespace dritz;
using namespace dritz::testutil;

namespace {
constexpr double kPi = std::numbers::pi;

// independent lattice count for the disk
long count_disk_lattice(int N) {
    long count = 0;
    for (long i = -N; i <= N; ++i)
        for (long j = -N; j <= N; ++j)
            if (i * i + j * j < static_cast<long>(N) * N) ++count;
    return count;
}
} // namespace

TEST_CASE("quadrature counts match the lattice rule") {
    const QuadratureSet sq = build_quadrature(make_domain(DomainKind::UnitSquare), 500);
    CHECK(sq.interior_count() == 499 * 499);

    const QuadratureSet dq = build_quadrature(make_domain(DomainKind::Disk), 160);
    CHECK(static_cast<long>(dq.interior_count()) == count_disk_lattice(160));
    CHECK(dq.interior_count() ==
          doctest::Approx(kPi * 160 * 160).epsilon(0.01));
    CHECK(dq.boundary_count() == 1005); // round(160 * 2 pi)

    const QuadratureSet aq = build_quadrature(make_domain(DomainKind::Annulus), 160);
    REQUIRE(aq.boundary_components.size() == 2);
    CHECK(aq.boundary_components[0].count == 1005);
    CHECK(aq.boundary_components[1].count == 2011); // round(160 * 4 pi)
}

TEST_CASE("quadrature points satisfy the membership rules") {
    for (DomainKind kind :
         {DomainKind::Disk, DomainKind::Annulus, DomainKind::UnitSquare}) {
        const Domain dom = make_domain(kind);
        const QuadratureSet q = build_quadrature(dom, 20);
        for (const Vec2& x : q.interior_points) CHECK(dom.contains(x));
        for (const Vec2& z : q.boundary_points)
            CHECK(dom.boundary_residual(z) <= 1e-12);
    }
}

TEST_CASE("integrate_interior is the measure-correct lattice rule") {
    const QuadratureSet dq = build_quadrature(make_domain(DomainKind::Disk), 160);
    const std::vector<double> ones(dq.interior_count(), 1.0);
    CHECK(integrate_interior(dq, ones) == doctest::Approx(kPi).epsilon(0.01));

    const QuadratureSet sq =
        build_quadrature(make_domain(DomainKind::UnitSquare), 500);
    const std::vector<double> ones_sq(sq.interior_count(), 1.0);
    CHECK(integrate_interior(sq, ones_sq) == 249001.0 / 250000.0);

    const std::vector<double> zeros(dq.interior_count(), 0.0);
    CHECK(integrate_interior(dq, zeros) == 0.0);

    CHECK_THROWS_AS((void)integrate_interior(dq, ones_sq), std::invalid_argument);
}

TEST_CASE("lattice area error shrinks with refinement") {
    const Domain disk = make_domain(DomainKind::Disk);
    std::vector<double> errs;
    for (int N : {20, 40, 80, 160}) {
        const QuadratureSet q = build_quadrature(disk, N);
        const std::vector<double> ones(q.interior_count(), 1.0);
        errs.push_back(std::abs(integrate_interior(q, ones) - kPi));
    }
    CHECK(errs[3] < errs[0]);
    CHECK(errs[2] < errs[0]);
    CHECK(errs[3] < errs[1]);
}

TEST_CASE("mean_boundary basics") {
    const QuadratureSet q = build_quadrature(make_domain(DomainKind::Disk), 160);
    const std::vector<double> c(q.boundary_count(), 2.5);
    CHECK(mean_boundary(q, c) == doctest::Approx(2.5).epsilon(1e-15));

    std::vector<double> first, first_sq;
    for (const Vec2& z : q.boundary_points) {
        first.push_back(z[0]);
        first_sq.push_back(z[0] * z[0]);
    }
    CHECK(std::abs(mean_boundary(q, first)) < 1e-10);
    CHECK(mean_boundary(q, first_sq) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("uniform sampling: support, determinism, area fractions") {
    const Domain disk = make_domain(DomainKind::Disk);
    const auto pts = sample_uniform(disk, 1000000, 9);
    std::size_t inner = 0;
    for (const Vec2& x : pts) {
        CHECK(disk.contains(x));
        if (x[0] * x[0] + x[1] * x[1] < 0.25) ++inner;
    }
    CHECK(static_cast<double>(inner) / pts.size() ==
          doctest::Approx(0.25).epsilon(0.008));

    const auto again = sample_uniform(disk, 1000, 5);
    const auto again2 = sample_uniform(disk, 1000, 5);
    CHECK(again == again2);

    const Domain ann = make_domain(DomainKind::Annulus);
    for (const Vec2& x : sample_uniform(ann, 5000, 3)) {
        const double r = std::hypot(x[0], x[1]);
        CHECK(r > 1.0);
        CHECK(r < 2.0);
    }
}

namespace {

// chi-square critical value via the Wilson-Hilferty approximation
double chi2_crit(double dof, double z) {
    const double a = 2.0 / (9.0 * dof);
    const double c = 1.0 - a + z * std::sqrt(a);
    return dof * c * c * c;
}

// occupancy chi-square on a 10x10 grid over the bounding box; cell
// probabilities estimated by sub-grid area counting
void check_uniformity(DomainKind kind) {
    const Domain dom = make_domain(kind);
    Vec2 lo, hi;
    dom.bounding_box(lo, hi);
    const int grid = 10, sub = 100;
    std::vector<double> prob(grid * grid, 0.0);
    const double dx = (hi[0] - lo[0]) / grid, dy = (hi[1] - lo[1]) / grid;
    double total = 0.0;
    for (int cx = 0; cx < grid; ++cx)
        for (int cy = 0; cy < grid; ++cy) {
            long in = 0;
            for (int sx = 0; sx < sub; ++sx)
                for (int sy = 0; sy < sub; ++sy) {
                    const Vec2 p{lo[0] + dx * (cx + (sx + 0.5) / sub),
                                 lo[1] + dy * (cy + (sy + 0.5) / sub)};
                    if (dom.contains(p)) ++in;
                }
            prob[cx * grid + cy] = static_cast<double>(in);
            total += in;
        }
    for (double& p : prob) p /= total;

    const std::size_t n = 100000;
    const auto samples = sample_uniform(dom, n, 2024);
    std::vector<double> counts(grid * grid, 0.0);
    for (const Vec2& s : samples) {
        int cx = static_cast<int>((s[0] - lo[0]) / dx);
        int cy = static_cast<int>((s[1] - lo[1]) / dy);
        cx = std::min(std::max(cx, 0), grid - 1);
        cy = std::min(std::max(cy, 0), grid - 1);
        counts[cx * grid + cy] += 1.0;
    }
    // merge low-expectation cells into one bucket
    double chi2 = 0.0, tail_exp = 0.0, tail_obs = 0.0;
    int buckets = 0;
    for (int i = 0; i < grid * grid; ++i) {
        const double expd = prob[i] * n;
        if (expd >= 10.0) {
            chi2 += (counts[i] - expd) * (counts[i] - expd) / expd;
            ++buckets;
        } else {
            tail_exp += expd;
            tail_obs += counts[i];
        }
    }
    if (tail_exp > 0.0) {
        chi2 += (tail_obs - tail_exp) * (tail_obs - tail_exp) / tail_exp;
        ++buckets;
    }
    // significance 0.001 <-> z = 3.0902
    CHECK(chi2 < chi2_crit(buckets - 1, 3.0902));
}

} // namespace

TEST_CASE("uniform sampling passes a chi-square occupancy test") {
    check_uniformity(DomainKind::Disk);
    check_uniformity(DomainKind::Annulus);
    check_uniformity(DomainKind::UnitSquare);
}

TEST_CASE("boundary sampling stays on the boundary") {
    for (DomainKind kind :
         {DomainKind::Disk, DomainKind::Annulus, DomainKind::UnitSquare}) {
        const Domain dom = make_domain(kind);
        for (const Vec2& z : sample_boundary_uniform(dom, 2000, 77))
            CHECK(dom.boundary_residual(z) <= 1e-12);
    }
}

TEST_CASE("distance functions: values at landmark points") {
    const DistanceFunction dt = distance_fn(DistanceId::DiskTrig);
    CHECK(dt.eval({0.0, 0.0}) == 1.0);
    CHECK(std::abs(dt.eval({1.0, 0.0})) <= 1e-12);

    const DistanceFunction sp = distance_fn(DistanceId::SquarePol);
    CHECK(sp.eval({0.5, 0.5}) == 0.0625);

    const DistanceFunction ap = distance_fn(DistanceId::AnnulusPol);
    CHECK(ap.eval({1.5, 0.0}) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("distance functions vanish on boundary points, not inside") {
    for (DomainKind kind :
         {DomainKind::Disk, DomainKind::Annulus, DomainKind::UnitSquare}) {
        const Domain dom = make_domain(kind);
        const QuadratureSet q = build_quadrature(dom, 20);
        for (DistanceId id : distance_ids_for(kind)) {
            const DistanceFunction d = distance_fn(id);
            for (const Vec2& z : q.boundary_points)
                CHECK(std::abs(d.eval(z)) <= 1e-12);
            CHECK(std::abs(d.eval(dom.interior_anchor())) > 0.01);
        }
    }
}

TEST_CASE("distance function gradients match finite differences") {
    Rng rng(1);
    for (DomainKind kind :
         {DomainKind::Disk, DomainKind::Annulus, DomainKind::UnitSquare}) {
        const Domain dom = make_domain(kind);
        const auto pts = sample_uniform(dom, 20, 31415);
        for (DistanceId id : distance_ids_for(kind)) {
            const DistanceFunction d = distance_fn(id);
            for (const Vec2& x : pts) {
                const Vec2 g = d.grad(x);
                const double h = 1e-6;
                for (int j = 0; j < 2; ++j) {
                    Vec2 xp = x, xm = x;
                    xp[j] += h;
                    xm[j] -= h;
                    const double fd = (d.eval(xp) - d.eval(xm)) / (2.0 * h);
                    CHECK(std::abs(g[j] - fd) <=
                          1e-6 * std::max(1.0, std::abs(g[j])));
                }
            }
        }
    }
}

TEST_CASE("disk distance gradients are zero at the center") {
    CHECK(distance_fn(DistanceId::DiskTrig).grad({0.0, 0.0}) ==
          Vec2{0.0, 0.0});
    CHECK(distance_fn(DistanceId::DiskPol).grad({0.0, 0.0}) == Vec2{0.0, 0.0});
}
