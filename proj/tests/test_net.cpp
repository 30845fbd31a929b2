#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "dritz/net.hpp"
#include "test_util.hpp"

using namespace dritz;
using namespace dritz::testutil;

TEST_CASE("architecture layout tiles the flat vector exactly") {
    const Architecture arch;
    CHECK(arch.param_count() == (2 * 14 + 14) + 3 * (14 * 14 + 14) + (14 + 1));
    int expected = 0;
    for (int l = 0; l < arch.num_layers(); ++l) {
        CHECK(arch.weight_offset(l) == expected);
        expected += arch.layer_out(l) * arch.layer_in(l);
        CHECK(arch.bias_offset(l) == expected);
        expected += arch.layer_out(l);
    }
    CHECK(expected == arch.param_count());
}

TEST_CASE("glorot init: bounds, zero biases, determinism") {
    const Architecture arch;
    const Parameters p = init_glorot(arch, 42);
    // first layer 2 -> 14: bound sqrt(6/16)
    const double bound0 = std::sqrt(6.0 / 16.0);
    CHECK(bound0 == doctest::Approx(0.612372).epsilon(1e-5));
    for (int l = 0; l < arch.num_layers(); ++l) {
        const double bound =
            std::sqrt(6.0 / (arch.layer_in(l) + arch.layer_out(l)));
        const double* w = p.data.data() + arch.weight_offset(l);
        bool nonzero = false;
        for (int i = 0; i < arch.layer_out(l) * arch.layer_in(l); ++i) {
            CHECK(std::abs(w[i]) <= bound);
            nonzero |= w[i] != 0.0;
        }
        CHECK(nonzero);
        const double* b = p.data.data() + arch.bias_offset(l);
        for (int k = 0; k < arch.layer_out(l); ++k) CHECK(b[k] == 0.0);
    }
    const Parameters q = init_glorot(arch, 42);
    CHECK(p.data == q.data);
    const Parameters r = init_glorot(arch, 43);
    CHECK(p.data != r.data);
}

TEST_CASE("forward: zero parameters give the zero map") {
    const Architecture arch;
    const Parameters p{arch, std::vector<double>(arch.param_count(), 0.0)};
    const std::vector<Vec2> pts{{0.3, -0.2}, {0.0, 0.0}, {0.9, 0.1}};
    const EvalBatch batch = forward(p, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(batch.values[i] == 0.0);
        CHECK(batch.input_grads[i][0] == 0.0);
        CHECK(batch.input_grads[i][1] == 0.0);
    }
}

TEST_CASE("forward: single hidden unit analog of tanh(w.x)") {
    Architecture arch;
    arch.hidden_layers = 1;
    arch.hidden_width = 1;
    Parameters p{arch, std::vector<double>(arch.param_count(), 0.0)};
    // layer 0: weights (1, 0), bias 0; layer 1: weight 1, bias 0
    p.data[arch.weight_offset(0)] = 1.0;
    p.data[arch.weight_offset(0) + 1] = 0.0;
    p.data[arch.weight_offset(1)] = 1.0;
    const EvalBatch b = forward(p, std::vector<Vec2>{{0.0, 0.0}, {0.5, 0.7}});
    CHECK(b.values[0] == 0.0);
    CHECK(b.input_grads[0][0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(b.input_grads[0][1] == 0.0);
    CHECK(b.values[1] == doctest::Approx(std::tanh(0.5)).epsilon(1e-15));
}

TEST_CASE("forward input gradients match central finite differences") {
    const Architecture arch;
    Rng rng(7);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const Parameters p = random_params(arch, seed);
        detail::NetWorkspace ws(arch);
        for (int rep = 0; rep < 5; ++rep) {
            const Vec2 x{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
            double u;
            Vec2 g;
            ws.forward_point(p, x, u, g);
            const double h = 1e-5;
            for (int j = 0; j < 2; ++j) {
                Vec2 xp = x, xm = x;
                xp[j] += h;
                xm[j] -= h;
                double up, um;
                Vec2 tmp;
                ws.forward_point(p, xp, up, tmp);
                ws.forward_point(p, xm, um, tmp);
                const double fd = (up - um) / (2.0 * h);
                CHECK(rel_err(g[j], fd) < 1e-6);
            }
        }
    }
}

namespace {

double scalar_objective(const Architecture& arch,
                        const std::vector<double>& theta,
                        const std::vector<Vec2>& pts, const Cotangents& cot) {
    const Parameters p{arch, theta};
    const EvalBatch b = forward(p, pts);
    double s = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        s += cot.value_weights[i] * b.values[i] +
             cot.grad_weights[i][0] * b.input_grads[i][0] +
             cot.grad_weights[i][1] * b.input_grads[i][1];
    return s;
}

} // namespace

TEST_CASE("backprop: zero cotangents give zero gradient") {
    const Architecture arch;
    const Parameters p = random_params(arch, 11);
    const std::vector<Vec2> pts{{0.1, 0.2}, {-0.3, 0.4}};
    const Cotangents cot{{0.0, 0.0}, {{0.0, 0.0}, {0.0, 0.0}}};
    for (double g : backprop(p, pts, cot)) CHECK(g == 0.0);
}

TEST_CASE("backprop: value-only cotangents match finite differences") {
    const Architecture arch;
    const Parameters p = random_params(arch, 3);
    Rng rng(99);
    std::vector<Vec2> pts;
    Cotangents cot;
    for (int i = 0; i < 6; ++i) {
        pts.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
        cot.value_weights.push_back(rng.uniform(-1.0, 1.0));
        cot.grad_weights.push_back({0.0, 0.0});
    }
    const std::vector<double> grad = backprop(p, pts, cot);
    auto f = [&](const std::vector<double>& theta) {
        return scalar_objective(arch, theta, pts, cot);
    };
    for (std::size_t i = 0; i < p.data.size(); i += 37) {
        const double fd = fd_coordinate(f, p.data, i, 1e-6);
        CHECK(rel_err(grad[i], fd) < 1e-6);
    }
}

TEST_CASE("backprop: full cotangents match finite differences") {
    const Architecture arch;
    Rng rng(5);
    for (std::uint64_t seed = 0; seed < 2; ++seed) {
        const Parameters p = random_params(arch, seed + 20);
        std::vector<Vec2> pts;
        Cotangents cot;
        for (int i = 0; i < 10; ++i) {
            pts.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
            cot.value_weights.push_back(rng.uniform(-1.0, 1.0));
            cot.grad_weights.push_back(
                {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
        }
        const std::vector<double> grad = backprop(p, pts, cot);
        auto f = [&](const std::vector<double>& theta) {
            return scalar_objective(arch, theta, pts, cot);
        };
        for (std::size_t i = 0; i < p.data.size(); i += 23) {
            const double fd = fd_coordinate(f, p.data, i, 1e-6);
            CHECK(rel_err(grad[i], fd) < 1e-5);
        }
    }
}

TEST_CASE("backprop rejects mismatched cotangent lengths") {
    const Architecture arch;
    const Parameters p = init_glorot(arch, 0);
    const std::vector<Vec2> pts{{0.0, 0.0}};
    const Cotangents cot{{1.0, 2.0}, {{0.0, 0.0}, {0.0, 0.0}}};
    CHECK_THROWS_AS((void)backprop(p, pts, cot), std::invalid_argument);
}

TEST_CASE("shift_output_bias realizes u + t exactly") {
    const Architecture arch;
    const Parameters p = init_glorot(arch, 17);
    const Parameters same = shift_output_bias(p, 0.0);
    CHECK(same.data == p.data);

    const double t = 0.3125; // exactly representable
    const Parameters shifted = shift_output_bias(p, t);
    const std::vector<Vec2> pts{{0.2, 0.1}, {-0.5, 0.8}, {0.0, 0.0}};
    const EvalBatch before = forward(p, pts);
    const EvalBatch after = forward(shifted, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        // the bias add reassociates, so allow one rounding step
        CHECK(after.values[i] ==
              doctest::Approx(before.values[i] + t).epsilon(1e-15));
        CHECK(after.input_grads[i][0] == before.input_grads[i][0]);
        CHECK(after.input_grads[i][1] == before.input_grads[i][1]);
    }
    // glorot biases start at zero, so shift then unshift is bit-identical
    const Parameters round_trip = shift_output_bias(shifted, -t);
    CHECK(round_trip.data == p.data);
}
