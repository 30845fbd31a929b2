#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>

#include "dritz/opt.hpp"

using namespace dritz;

TEST_CASE("adam first step has the closed-form size lr/(1+eps)") {
    AdamState st(1);
    std::vector<double> theta{0.0};
    const std::vector<double> grad{1.0};
    REQUIRE(adam_step(st, theta, grad, 0.001));
    // mhat = 1, vhat = 1: step = lr / (sqrt(1) + eps)
    CHECK(theta[0] == doctest::Approx(-0.001 / (1.0 + 1e-8)).epsilon(1e-14));
    CHECK(st.t == 1);
}

TEST_CASE("adam matches a scalar reference implementation") {
    AdamState st(1);
    std::vector<double> theta{0.5};
    double m = 0.0, v = 0.0, ref = 0.5;
    const double lr = 0.01;
    for (int t = 1; t <= 50; ++t) {
        const double g = 2.0 * ref; // d/dx x^2, evaluated at the reference
        const std::vector<double> grad{2.0 * theta[0]};
        REQUIRE(adam_step(st, theta, grad, lr));
        m = 0.9 * m + 0.1 * g;
        v = 0.999 * v + 0.001 * g * g;
        const double mh = m / (1.0 - std::pow(0.9, t));
        const double vh = v / (1.0 - std::pow(0.999, t));
        ref -= lr * mh / (std::sqrt(vh) + 1e-8);
        CHECK(theta[0] == doctest::Approx(ref).epsilon(1e-14));
    }
    CHECK(std::abs(theta[0]) < 0.5);
}

TEST_CASE("adam converges on a separable quadratic") {
    AdamState st(3);
    std::vector<double> theta{1.0, -2.0, 0.3};
    for (int t = 0; t < 4000; ++t) {
        const std::vector<double> grad{2.0 * theta[0], 2.0 * theta[1],
                                       2.0 * theta[2]};
        REQUIRE(adam_step(st, theta, grad, 0.01));
    }
    for (double x : theta) CHECK(std::abs(x) < 1e-4);
}

TEST_CASE("adam rejects non-finite gradients without touching state") {
    AdamState st(2);
    std::vector<double> theta{1.0, 2.0};
    REQUIRE(adam_step(st, theta, std::vector<double>{0.1, 0.2}, 0.01));
    const auto theta_before = theta;
    const auto m_before = st.m;
    const long t_before = st.t;
    CHECK_FALSE(adam_step(
        st, theta,
        std::vector<double>{std::numeric_limits<double>::infinity(), 0.0},
        0.01));
    CHECK_FALSE(adam_step(
        st, theta,
        std::vector<double>{0.0, std::numeric_limits<double>::quiet_NaN()},
        0.01));
    CHECK(theta == theta_before);
    CHECK(st.m == m_before);
    CHECK(st.t == t_before);
}

TEST_CASE("adam rejects mismatched lengths and bad learning rates") {
    AdamState st(2);
    std::vector<double> theta{0.0, 0.0};
    CHECK_THROWS_AS(
        (void)adam_step(st, theta, std::vector<double>{1.0}, 0.01),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)adam_step(st, theta, std::vector<double>{1.0, 1.0}, 0.0),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)adam_step(st, theta, std::vector<double>{1.0, 1.0}, -1.0),
        std::invalid_argument);
}

TEST_CASE("lr schedule: phase boundaries and totals") {
    const LRSchedule sched{{{1000, 0.01}, {3000, 0.001}}};
    CHECK(sched.total_iterations() == 4000);
    CHECK(sched.lr_at(0) == 0.01);
    CHECK(sched.lr_at(999) == 0.01);
    CHECK(sched.lr_at(1000) == 0.001);
    CHECK(sched.lr_at(3999) == 0.001);
    // past the end, the last phase's rate holds
    CHECK(sched.lr_at(4000) == 0.001);

    const LRSchedule single{{{10000, 0.001}}};
    CHECK(single.total_iterations() == 10000);
    CHECK(single.lr_at(5000) == 0.001);
}
