#pragma once

#include <utility>
#include <vector>

#include "mspp/rng.hpp"
#include "mspp/tensor.hpp"

namespace mspp {

/// Filters and biases of a valid-mode convolution layer.
struct ConvParams {
  int fh = 0;       // filter rows
  int fw = 0;       // filter cols
  int in_maps = 0;  // input map count
  int out_maps = 0; // output map count
  std::vector<double> filters; // [(i*fw + j)*in_maps + m]*out_maps + o
  std::vector<double> bias;    // [out_maps]

  std::size_t filter_index(int i, int j, int m, int o) const {
    return ((static_cast<std::size_t>(i) * fw + j) * in_maps + m) * out_maps +
           o;
  }
};

/// Weights and bias of a fully connected layer: out = x^T W + b.
struct FcParams {
  int in_dim = 0;
  int out_dim = 0;
  std::vector<double> weights; // [i*out_dim + j]
  std::vector<double> bias;    // [out_dim]
};

// Argmax bookkeeping from one maxsub_forward call. Row/col pairs are stored
// in output-tensor order (map planes, then row-major cells). min_margin is
// the smallest gap between a window's max and its runner-up, +inf when every
// window has a single cell; the gradient checker uses it to detect ties.
struct MaxSubRecord {
  Shape in_shape;
  int pool = 0;
  int out_rows = 0;
  int out_cols = 0;
  std::vector<int> arg_row;
  std::vector<int> arg_col;
  double min_margin = 0.0;
};

/// Uniform fan-in init: entries in [-1/sqrt(fan_in), 1/sqrt(fan_in)], bias 0.
ConvParams init_conv(int fh, int fw, int in_maps, int out_maps, Rng& rng);
FcParams init_fc(int in_dim, int out_dim, Rng& rng);

/// Valid-mode cross-correlation, stride 1.
Tensor conv_forward(const Tensor& x, const ConvParams& p);

/// Exact gradients for conv_forward; returns (delta_x, grad_params).
std::pair<Tensor, ConvParams> conv_backward(const Tensor& x,
                                            const ConvParams& p,
                                            const Tensor& delta_out);

Tensor tanh_forward(const Tensor& x);
/// Backward from the forward *output* y: delta * (1 - y^2).
Tensor tanh_backward(const Tensor& y, const Tensor& delta);

// Non-overlapping p x p max pooling. Trailing rows/cols beyond p*floor(H/p)
// are dropped; ties go to the first cell in row-major window order.
std::pair<Tensor, MaxSubRecord> maxsub_forward(const Tensor& x, int pool);
Tensor maxsub_backward(const MaxSubRecord& rec, const Tensor& delta_out);

std::vector<double> fc_forward(const std::vector<double>& x,
                               const FcParams& p);

struct FcBackwardResult {
  std::vector<double> delta_x;
  FcParams grad;
};
FcBackwardResult fc_backward(const std::vector<double>& x, const FcParams& p,
                             const std::vector<double>& delta);

/// Cross-entropy on softmax(logits), max-subtraction stabilized.
struct SoftmaxXentResult {
  double loss = 0.0;
  std::vector<double> delta; // softmax(logits) - onehot(label)
};
SoftmaxXentResult softmax_xent(const std::vector<double>& logits, int label);

/// Softmax probabilities alone (shares the stabilized implementation).
std::vector<double> softmax(const std::vector<double>& logits);

} // namespace mspp
