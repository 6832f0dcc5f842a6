#include "mspp/layers.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mspp {

namespace {

void fill_uniform(std::vector<double>& v, double s, Rng& rng) {
  for (double& x : v) x = rng.uniform(-s, s);
}

} // namespace

ConvParams init_conv(int fh, int fw, int in_maps, int out_maps, Rng& rng) {
  if (fh < 1 || fw < 1 || in_maps < 1 || out_maps < 1) {
    throw ShapeError("conv params need positive extents");
  }
  ConvParams p;
  p.fh = fh;
  p.fw = fw;
  p.in_maps = in_maps;
  p.out_maps = out_maps;
  p.filters.resize(static_cast<std::size_t>(fh) * fw * in_maps * out_maps);
  p.bias.assign(out_maps, 0.0);
  const double s = 1.0 / std::sqrt(static_cast<double>(fh) * fw * in_maps);
  fill_uniform(p.filters, s, rng);
  return p;
}

FcParams init_fc(int in_dim, int out_dim, Rng& rng) {
  if (in_dim < 1 || out_dim < 1) {
    throw ShapeError("fc params need positive dims");
  }
  FcParams p;
  p.in_dim = in_dim;
  p.out_dim = out_dim;
  p.weights.resize(static_cast<std::size_t>(in_dim) * out_dim);
  p.bias.assign(out_dim, 0.0);
  fill_uniform(p.weights, 1.0 / std::sqrt(static_cast<double>(in_dim)), rng);
  return p;
}

Tensor conv_forward(const Tensor& x, const ConvParams& p) {
  if (x.maps() != p.in_maps) {
    throw ShapeError("conv input has " + std::to_string(x.maps()) +
                     " maps, filters expect " + std::to_string(p.in_maps));
  }
  if (x.rows() < p.fh || x.cols() < p.fw) {
    throw ShapeError("conv input " + std::to_string(x.rows()) + "x" +
                     std::to_string(x.cols()) + " smaller than filter " +
                     std::to_string(p.fh) + "x" + std::to_string(p.fw));
  }
  const int oh = x.rows() - p.fh + 1;
  const int ow = x.cols() - p.fw + 1;
  Tensor out(Shape(oh, ow, p.out_maps), 0.0);

  for (int o = 0; o < p.out_maps; ++o) {
    double* op = out.data().data() + static_cast<std::size_t>(o) * out.shape().plane();
    const double b = p.bias[o];
    for (std::size_t i = 0; i < out.shape().plane(); ++i) op[i] = b;
  }
  // Loop order keeps the innermost stride 1 in both x and out planes.
  for (int m = 0; m < p.in_maps; ++m) {
    const double* xp = x.data().data() + static_cast<std::size_t>(m) * x.shape().plane();
    for (int o = 0; o < p.out_maps; ++o) {
      double* op = out.data().data() + static_cast<std::size_t>(o) * out.shape().plane();
      for (int i = 0; i < p.fh; ++i) {
        for (int j = 0; j < p.fw; ++j) {
          const double w = p.filters[p.filter_index(i, j, m, o)];
          for (int r = 0; r < oh; ++r) {
            const double* xr = xp + static_cast<std::size_t>(r + i) * x.cols() + j;
            double* orow = op + static_cast<std::size_t>(r) * ow;
            for (int c = 0; c < ow; ++c) orow[c] += w * xr[c];
          }
        }
      }
    }
  }
  return out;
}

std::pair<Tensor, ConvParams> conv_backward(const Tensor& x,
                                            const ConvParams& p,
                                            const Tensor& delta_out) {
  const int oh = x.rows() - p.fh + 1;
  const int ow = x.cols() - p.fw + 1;
  if (x.maps() != p.in_maps || x.rows() < p.fh || x.cols() < p.fw) {
    throw ShapeError("conv_backward input/filter mismatch");
  }
  if (delta_out.rows() != oh || delta_out.cols() != ow ||
      delta_out.maps() != p.out_maps) {
    throw ShapeError("conv_backward delta shaped " +
                     std::to_string(delta_out.rows()) + "x" +
                     std::to_string(delta_out.cols()) + "x" +
                     std::to_string(delta_out.maps()) + ", expected " +
                     std::to_string(oh) + "x" + std::to_string(ow) + "x" +
                     std::to_string(p.out_maps));
  }

  Tensor delta_x(x.shape(), 0.0);
  ConvParams grad;
  grad.fh = p.fh;
  grad.fw = p.fw;
  grad.in_maps = p.in_maps;
  grad.out_maps = p.out_maps;
  grad.filters.assign(p.filters.size(), 0.0);
  grad.bias.assign(p.out_maps, 0.0);

  for (int o = 0; o < p.out_maps; ++o) {
    const double* dp =
        delta_out.data().data() + static_cast<std::size_t>(o) * delta_out.shape().plane();
    double acc = 0.0;
    for (std::size_t i = 0; i < delta_out.shape().plane(); ++i) acc += dp[i];
    grad.bias[o] = acc;
  }
  for (int m = 0; m < p.in_maps; ++m) {
    const double* xp = x.data().data() + static_cast<std::size_t>(m) * x.shape().plane();
    double* dxp = delta_x.data().data() + static_cast<std::size_t>(m) * x.shape().plane();
    for (int o = 0; o < p.out_maps; ++o) {
      const double* dp =
          delta_out.data().data() + static_cast<std::size_t>(o) * delta_out.shape().plane();
      for (int i = 0; i < p.fh; ++i) {
        for (int j = 0; j < p.fw; ++j) {
          const double w = p.filters[p.filter_index(i, j, m, o)];
          double gw = 0.0;
          for (int r = 0; r < oh; ++r) {
            const double* xr = xp + static_cast<std::size_t>(r + i) * x.cols() + j;
            double* dxr = dxp + static_cast<std::size_t>(r + i) * x.cols() + j;
            const double* drow = dp + static_cast<std::size_t>(r) * ow;
            for (int c = 0; c < ow; ++c) {
              gw += xr[c] * drow[c];
              dxr[c] += w * drow[c];
            }
          }
          grad.filters[p.filter_index(i, j, m, o)] = gw;
        }
      }
    }
  }
  return {std::move(delta_x), std::move(grad)};
}

Tensor tanh_forward(const Tensor& x) {
  Tensor y(x.shape(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) y.data()[i] = std::tanh(x.data()[i]);
  return y;
}

Tensor tanh_backward(const Tensor& y, const Tensor& delta) {
  if (!(y.shape() == delta.shape())) {
    throw ShapeError("tanh_backward shape mismatch");
  }
  Tensor out(y.shape(), 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    out.data()[i] = delta.data()[i] * (1.0 - y.data()[i] * y.data()[i]);
  }
  return out;
}

std::pair<Tensor, MaxSubRecord> maxsub_forward(const Tensor& x, int pool) {
  if (pool < 1) throw ShapeError("pooling size must be positive");
  if (x.rows() < pool || x.cols() < pool) {
    throw ShapeError("pooling size " + std::to_string(pool) +
                     " exceeds input " + std::to_string(x.rows()) + "x" +
                     std::to_string(x.cols()));
  }
  const int oh = x.rows() / pool;
  const int ow = x.cols() / pool;
  Tensor out(Shape(oh, ow, x.maps()), 0.0);

  MaxSubRecord rec;
  rec.in_shape = x.shape();
  rec.pool = pool;
  rec.out_rows = oh;
  rec.out_cols = ow;
  rec.arg_row.resize(out.size());
  rec.arg_col.resize(out.size());
  rec.min_margin = std::numeric_limits<double>::infinity();

  for (int m = 0; m < x.maps(); ++m) {
    for (int r = 0; r < oh; ++r) {
      for (int c = 0; c < ow; ++c) {
        double best = -std::numeric_limits<double>::infinity();
        double second = -std::numeric_limits<double>::infinity();
        int br = 0, bc = 0;
        for (int i = 0; i < pool; ++i) {
          for (int j = 0; j < pool; ++j) {
            const double v = x.at(r * pool + i, c * pool + j, m);
            if (v > best) {
              second = best;
              best = v;
              br = r * pool + i;
              bc = c * pool + j;
            } else if (v > second) {
              second = v;
            }
          }
        }
        const std::size_t oi = out.index(r, c, m);
        out.data()[oi] = best;
        rec.arg_row[oi] = br;
        rec.arg_col[oi] = bc;
        if (pool > 1 && best - second < rec.min_margin) {
          rec.min_margin = best - second;
        }
      }
    }
  }
  return {std::move(out), std::move(rec)};
}

Tensor maxsub_backward(const MaxSubRecord& rec, const Tensor& delta_out) {
  if (delta_out.rows() != rec.out_rows || delta_out.cols() != rec.out_cols ||
      delta_out.maps() != rec.in_shape.maps) {
    throw ShapeError("maxsub_backward delta shape mismatch");
  }
  Tensor delta_x(rec.in_shape, 0.0);
  for (std::size_t i = 0; i < delta_out.size(); ++i) {
    const int m = static_cast<int>(i / delta_out.shape().plane());
    delta_x.at(rec.arg_row[i], rec.arg_col[i], m) += delta_out.data()[i];
  }
  return delta_x;
}

std::vector<double> fc_forward(const std::vector<double>& x,
                               const FcParams& p) {
  if (static_cast<int>(x.size()) != p.in_dim) {
    throw ShapeError("fc input dim " + std::to_string(x.size()) +
                     ", expected " + std::to_string(p.in_dim));
  }
  std::vector<double> out(p.bias);
  for (int i = 0; i < p.in_dim; ++i) {
    const double xi = x[i];
    const double* w = p.weights.data() + static_cast<std::size_t>(i) * p.out_dim;
    for (int j = 0; j < p.out_dim; ++j) out[j] += xi * w[j];
  }
  return out;
}

FcBackwardResult fc_backward(const std::vector<double>& x, const FcParams& p,
                             const std::vector<double>& delta) {
  if (static_cast<int>(x.size()) != p.in_dim ||
      static_cast<int>(delta.size()) != p.out_dim) {
    throw ShapeError("fc_backward dim mismatch");
  }
  FcBackwardResult res;
  res.delta_x.assign(p.in_dim, 0.0);
  res.grad.in_dim = p.in_dim;
  res.grad.out_dim = p.out_dim;
  res.grad.weights.resize(p.weights.size());
  res.grad.bias = delta;
  for (int i = 0; i < p.in_dim; ++i) {
    const double* w = p.weights.data() + static_cast<std::size_t>(i) * p.out_dim;
    double* gw = res.grad.weights.data() + static_cast<std::size_t>(i) * p.out_dim;
    double acc = 0.0;
    const double xi = x[i];
    for (int j = 0; j < p.out_dim; ++j) {
      acc += w[j] * delta[j];
      gw[j] = xi * delta[j];
    }
    res.delta_x[i] = acc;
  }
  return res;
}

std::vector<double> softmax(const std::vector<double>& logits) {
  if (logits.empty()) throw DomainError("softmax of empty vector");
  double mx = logits[0];
  for (double v : logits) mx = std::max(mx, v);
  std::vector<double> p(logits.size());
  double z = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - mx);
    z += p[i];
  }
  for (double& v : p) v /= z;
  return p;
}

SoftmaxXentResult softmax_xent(const std::vector<double>& logits, int label) {
  if (label < 0 || label >= static_cast<int>(logits.size())) {
    throw DomainError("label " + std::to_string(label) + " out of range [0, " +
                      std::to_string(logits.size()) + ")");
  }
  SoftmaxXentResult res;
  res.delta = softmax(logits);
  // -log(p[label]) computed from logits to avoid log(0) for saturated inputs
  double mx = logits[0];
  for (double v : logits) mx = std::max(mx, v);
  double z = 0.0;
  for (double v : logits) z += std::exp(v - mx);
  res.loss = std::log(z) - (logits[label] - mx);
  res.delta[label] -= 1.0;
  return res;
}

} // namespace mspp
