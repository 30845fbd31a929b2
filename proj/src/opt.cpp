#include "dritz/opt.hpp"

#include <cmath>
#include <stdexcept>

namespace dritz {

bool adam_step(AdamState& state, std::span<double> params,
               std::span<const double> grad, double lr) {
    if (params.size() != state.m.size() || grad.size() != state.m.size())
        throw std::invalid_argument("adam_step: length mismatch");
    if (lr <= 0.0) throw std::invalid_argument("adam_step: lr must be > 0");
    for (double g : grad)
        if (!std::isfinite(g)) return false;

    const long t = state.t + 1;
    const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(t));
    const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grad[i];
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * g;
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * g * g;
        const double mhat = state.m[i] / c1;
        const double vhat = state.v[i] / c2;
        params[i] -= lr * mhat / (std::sqrt(vhat) + state.eps);
    }
    state.t = t;
    return true;
}

long LRSchedule::total_iterations() const {
    long total = 0;
    for (const Phase& p : phases) total += p.iterations;
    return total;
}

double LRSchedule::lr_at(long iteration) const {
    long acc = 0;
    for (const Phase& p : phases) {
        acc += p.iterations;
        if (iteration < acc) return p.lr;
    }
    return phases.empty() ? 0.0 : phases.back().lr;
}

} // namespace dritz
