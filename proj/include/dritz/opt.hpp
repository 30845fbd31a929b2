#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dritz {

// Standard Adam with bias correction; epsilon sits outside the square root.
struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    long t = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

// One update, in place. Returns false (leaving state and params untouched)
// if the gradient contains a non-finite entry.
bool adam_step(AdamState& state, std::span<double> params,
               std::span<const double> grad, double lr);

// Piecewise-constant learning-rate schedule.
struct LRSchedule {
    struct Phase {
        long iterations;
        double lr;
    };
    std::vector<Phase> phases;

    long total_iterations() const;
    double lr_at(long iteration) const; // 0-based
};

} // namespace dritz
