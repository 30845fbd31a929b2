#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dritz {

using Vec2 = std::array<double, 2>;

// Fully connected feed-forward tanh network, fixed shape. Layer l maps
// width layer_in(l) to layer_out(l); the last layer is affine (no
// activation).
struct Architecture {
    int input_dim = 2;
    int output_dim = 1;
    int hidden_layers = 4;
    int hidden_width = 14;

    int num_layers() const { return hidden_layers + 1; }
    int layer_in(int l) const { return l == 0 ? input_dim : hidden_width; }
    int layer_out(int l) const {
        return l == num_layers() - 1 ? output_dim : hidden_width;
    }

    // Flat layout: per layer, row-major weight block then bias block.
    int weight_offset(int l) const;
    int bias_offset(int l) const;
    int param_count() const;
};

// Flat parameter vector with its architecture. Immutable by convention:
// training works on private copies.
struct Parameters {
    Architecture arch;
    std::vector<double> data;
};

struct EvalBatch {
    std::vector<double> values;
    std::vector<Vec2> input_grads;
};

// Adjoint seeds for the scalar S(theta) = sum_i a_i u(x_i) + b_i . grad u(x_i).
struct Cotangents {
    std::vector<double> value_weights; // a_i
    std::vector<Vec2> grad_weights;    // b_i
};

// Glorot uniform weights on [-sqrt(6/(fan_in+fan_out)), +...), biases zero.
// Stream order is layer-major, row-major within each weight matrix.
Parameters init_glorot(const Architecture& arch, std::uint64_t seed);

// Network values and exact input gradients at the given points.
EvalBatch forward(const Parameters& params, std::span<const Vec2> points);

// Exact gradient of S(theta) w.r.t. the flat parameter vector, where
// S = sum_i [a_i u(x_i) + b_i . grad u(x_i)]. Throws std::invalid_argument
// on length mismatch.
std::vector<double> backprop(const Parameters& params,
                             std::span<const Vec2> points,
                             const Cotangents& cot);

// Parameters realizing x -> u(x) + t (output bias shifted by t).
Parameters shift_output_bias(const Parameters& params, double t);

namespace detail {

// Workspace for the fused forward/reverse pass; reusable across points.
class NetWorkspace {
public:
    explicit NetWorkspace(const Architecture& arch);

    // Value and input gradient at one point.
    void forward_point(const Parameters& params, const Vec2& x,
                       double& value, Vec2& grad);

    // Reverse pass for the most recent forward_point; accumulates the
    // parameter gradient of a*u(x) + b . grad u(x) into grad_out.
    void backward_point(const Parameters& params, double a, const Vec2& b,
                        std::span<double> grad_out);

private:
    Architecture arch_;
    // Per layer boundary: activations h and input-Jacobian columns g
    // (g[k][j] = d h_k / d x_j). Index 0 holds the input itself.
    std::vector<std::vector<double>> h_;
    std::vector<std::array<std::vector<double>, 2>> g_;
    // Pre-activation Jacobian columns per layer, needed in reverse.
    std::vector<std::array<std::vector<double>, 2>> zjac_;
    // Adjoint buffers.
    std::vector<double> hbar_, hbar_prev_;
    std::array<std::vector<double>, 2> gbar_, gbar_prev_;
};

} // namespace detail

} // namespace dritz
