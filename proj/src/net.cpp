#include "dritz/net.hpp"

#include <cmath>
#include <stdexcept>

#include "dritz/rng.hpp"

namespace dritz {

int Architecture::weight_offset(int l) const {
    int off = 0;
    for (int k = 0; k < l; ++k)
        off += layer_out(k) * layer_in(k) + layer_out(k);
    return off;
}

int Architecture::bias_offset(int l) const {
    return weight_offset(l) + layer_out(l) * layer_in(l);
}

int Architecture::param_count() const {
    return weight_offset(num_layers());
}

Parameters init_glorot(const Architecture& arch, std::uint64_t seed) {
    Parameters p{arch, std::vector<double>(arch.param_count(), 0.0)};
    Rng rng(seed);
    for (int l = 0; l < arch.num_layers(); ++l) {
        const int n_in = arch.layer_in(l);
        const int n_out = arch.layer_out(l);
        const double bound = std::sqrt(6.0 / (n_in + n_out));
        double* w = p.data.data() + arch.weight_offset(l);
        for (int i = 0; i < n_out * n_in; ++i)
            w[i] = rng.uniform(-bound, bound);
        // biases stay zero and consume no stream entries
    }
    return p;
}

Parameters shift_output_bias(const Parameters& params, double t) {
    Parameters out = params;
    const int last = params.arch.num_layers() - 1;
    out.data[params.arch.bias_offset(last)] += t;
    return out;
}

namespace detail {

NetWorkspace::NetWorkspace(const Architecture& arch) : arch_(arch) {
    const int L = arch.num_layers();
    h_.resize(L + 1);
    g_.resize(L + 1);
    zjac_.resize(L);
    h_[0].resize(arch.input_dim);
    for (int j = 0; j < 2; ++j) g_[0][j].resize(arch.input_dim);
    for (int l = 0; l < L; ++l) {
        const int n = arch.layer_out(l);
        h_[l + 1].resize(n);
        for (int j = 0; j < 2; ++j) {
            g_[l + 1][j].resize(n);
            zjac_[l][j].resize(n);
        }
    }
    const int w = std::max(arch.hidden_width, arch.input_dim);
    hbar_.resize(w);
    hbar_prev_.resize(w);
    for (int j = 0; j < 2; ++j) {
        gbar_[j].resize(w);
        gbar_prev_[j].resize(w);
    }
}

void NetWorkspace::forward_point(const Parameters& params, const Vec2& x,
                                 double& value, Vec2& grad) {
    const Architecture& arch = arch_;
    const int L = arch.num_layers();
    h_[0][0] = x[0];
    h_[0][1] = x[1];
    g_[0][0][0] = 1.0; g_[0][0][1] = 0.0;
    g_[0][1][0] = 0.0; g_[0][1][1] = 1.0;
    for (int l = 0; l < L; ++l) {
        const int n_in = arch.layer_in(l);
        const int n_out = arch.layer_out(l);
        const double* W = params.data.data() + arch.weight_offset(l);
        const double* b = params.data.data() + arch.bias_offset(l);
        const double* hp = h_[l].data();
        const double* gp0 = g_[l][0].data();
        const double* gp1 = g_[l][1].data();
        double* hn = h_[l + 1].data();
        double* gn0 = g_[l + 1][0].data();
        double* gn1 = g_[l + 1][1].data();
        double* zj0 = zjac_[l][0].data();
        double* zj1 = zjac_[l][1].data();
        const bool hidden = (l < L - 1);
        for (int k = 0; k < n_out; ++k) {
            const double* wrow = W + k * n_in;
            double z = b[k], z0 = 0.0, z1 = 0.0;
            for (int m = 0; m < n_in; ++m) {
                z += wrow[m] * hp[m];
                z0 += wrow[m] * gp0[m];
                z1 += wrow[m] * gp1[m];
            }
            zj0[k] = z0;
            zj1[k] = z1;
            if (hidden) {
                const double t = std::tanh(z);
                const double d = 1.0 - t * t;
                hn[k] = t;
                gn0[k] = d * z0;
                gn1[k] = d * z1;
            } else {
                hn[k] = z;
                gn0[k] = z0;
                gn1[k] = z1;
            }
        }
    }
    value = h_[L][0];
    grad = {g_[L][0][0], g_[L][1][0]};
}

void NetWorkspace::backward_point(const Parameters& params, double a,
                                  const Vec2& b, std::span<double> grad_out) {
    const Architecture& arch = arch_;
    const int L = arch.num_layers();
    hbar_[0] = a;
    gbar_[0][0] = b[0];
    gbar_[1][0] = b[1];
    for (int l = L - 1; l >= 0; --l) {
        const int n_in = arch.layer_in(l);
        const int n_out = arch.layer_out(l);
        const double* W = params.data.data() + arch.weight_offset(l);
        double* Wbar = grad_out.data() + arch.weight_offset(l);
        double* bbar = grad_out.data() + arch.bias_offset(l);
        const double* hp = h_[l].data();
        const double* gp0 = g_[l][0].data();
        const double* gp1 = g_[l][1].data();
        const double* hn = h_[l + 1].data();
        const double* zj0 = zjac_[l][0].data();
        const double* zj1 = zjac_[l][1].data();
        const bool hidden = (l < L - 1);
        for (int m = 0; m < n_in; ++m) {
            hbar_prev_[m] = 0.0;
            gbar_prev_[0][m] = 0.0;
            gbar_prev_[1][m] = 0.0;
        }
        for (int k = 0; k < n_out; ++k) {
            // pull the adjoint through the activation of this layer
            double zbar, zjbar0, zjbar1;
            if (hidden) {
                const double t = hn[k];
                const double d = 1.0 - t * t;
                zjbar0 = d * gbar_[0][k];
                zjbar1 = d * gbar_[1][k];
                // d depends on z: dd/dz = -2 t d
                zbar = hbar_[k] * d
                     - 2.0 * t * d * (gbar_[0][k] * zj0[k] + gbar_[1][k] * zj1[k]);
            } else {
                zbar = hbar_[k];
                zjbar0 = gbar_[0][k];
                zjbar1 = gbar_[1][k];
            }
            const double* wrow = W + k * n_in;
            double* wbrow = Wbar + k * n_in;
            bbar[k] += zbar;
            for (int m = 0; m < n_in; ++m) {
                wbrow[m] += zbar * hp[m] + zjbar0 * gp0[m] + zjbar1 * gp1[m];
                hbar_prev_[m] += wrow[m] * zbar;
                gbar_prev_[0][m] += wrow[m] * zjbar0;
                gbar_prev_[1][m] += wrow[m] * zjbar1;
            }
        }
        std::swap(hbar_, hbar_prev_);
        std::swap(gbar_[0], gbar_prev_[0]);
        std::swap(gbar_[1], gbar_prev_[1]);
    }
}

} // namespace detail

EvalBatch forward(const Parameters& params, std::span<const Vec2> points) {
    EvalBatch out;
    out.values.resize(points.size());
    out.input_grads.resize(points.size());
    detail::NetWorkspace ws(params.arch);
    for (std::size_t i = 0; i < points.size(); ++i)
        ws.forward_point(params, points[i], out.values[i], out.input_grads[i]);
    return out;
}

std::vector<double> backprop(const Parameters& params,
                             std::span<const Vec2> points,
                             const Cotangents& cot) {
    if (cot.value_weights.size() != points.size() ||
        cot.grad_weights.size() != points.size())
        throw std::invalid_argument("backprop: cotangent length mismatch");
    std::vector<double> grad(params.arch.param_count(), 0.0);
    detail::NetWorkspace ws(params.arch);
    double value;
    Vec2 g;
    for (std::size_t i = 0; i < points.size(); ++i) {
        ws.forward_point(params, points[i], value, g);
        ws.backward_point(params, cot.value_weights[i], cot.grad_weights[i],
                          grad);
    }
    return grad;
}

} // namespace dritz
