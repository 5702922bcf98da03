#include "spgan/nn/layers.hpp"

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>

namespace spgan::nn {

namespace {

using MatMap = Eigen::Map<Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using ConstMatMap =
    Eigen::Map<const Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

int conv_out(int n, int k, int stride, int pad_lo, int pad_hi) {
  return (n + pad_lo + pad_hi - k) / stride + 1;
}

// cols is (in_c*k*k) x (oh*ow); out-of-bounds taps read as zero.
void im2col(const Tensor& x, int k, int stride, const PadSpec& pad, int oh, int ow,
            std::vector<float>& cols) {
  const int count = x.c * k * k;
  cols.assign(static_cast<size_t>(count) * oh * ow, 0.f);
  for (int c = 0; c < x.c; ++c) {
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        const int row = (c * k + ky) * k + kx;
        float* dst = cols.data() + static_cast<size_t>(row) * oh * ow;
        for (int oy = 0; oy < oh; ++oy) {
          const int iy = oy * stride - pad.top + ky;
          if (iy < 0 || iy >= x.h) continue;
          const float* src = x.data() + (static_cast<size_t>(c) * x.h + iy) * x.w;
          for (int ox = 0; ox < ow; ++ox) {
            const int ix = ox * stride - pad.left + kx;
            if (ix >= 0 && ix < x.w) dst[oy * ow + ox] = src[ix];
          }
        }
      }
    }
  }
}

// Scatter-add inverse of im2col.
void col2im(const std::vector<float>& cols, int channels, int h, int w, int k, int stride,
            const PadSpec& pad, int oh, int ow, Tensor& out) {
  out = Tensor(channels, h, w);
  for (int c = 0; c < channels; ++c) {
    for (int ky = 0; ky < k; ++ky) {
      for (int kx = 0; kx < k; ++kx) {
        const int row = (c * k + ky) * k + kx;
        const float* src = cols.data() + static_cast<size_t>(row) * oh * ow;
        for (int oy = 0; oy < oh; ++oy) {
          const int iy = oy * stride - pad.top + ky;
          if (iy < 0 || iy >= h) continue;
          float* dst = out.data() + (static_cast<size_t>(c) * h + iy) * w;
          for (int ox = 0; ox < ow; ++ox) {
            const int ix = ox * stride - pad.left + kx;
            if (ix >= 0 && ix < w) dst[ix] += src[oy * ow + ox];
          }
        }
      }
    }
  }
}

void init_gaussian(Tensor& t, Rng& rng, float stddev) {
  for (float& x : t.v) x = static_cast<float>(gaussian(rng, stddev));
}

}  // namespace

PadSpec PadSpec::same(int h, int w, int k, int stride) {
  auto pad_total = [&](int n) {
    const int out = (n + stride - 1) / stride;
    return std::max(0, (out - 1) * stride + k - n);
  };
  const int ph = pad_total(h), pw = pad_total(w);
  return {ph / 2, ph - ph / 2, pw / 2, pw - pw / 2};
}

// ---------------------------------------------------------------- Conv2d

Conv2d::Conv2d(int in_c, int out_c, int k, int stride, PadSpec pad)
    : in_c_(in_c), out_c_(out_c), k_(k), stride_(stride), pad_(pad) {
  w_.resize(out_c, in_c * k * k, 1);
  b_.resize(out_c, 1, 1);
}

Conv2d::Conv2d(int in_c, int out_c, int k, int stride) : Conv2d(in_c, out_c, k, stride, {}) {
  same_pad_ = true;
}

PadSpec Conv2d::pad_for(const Tensor& x) const {
  return same_pad_ ? PadSpec::same(x.h, x.w, k_, stride_) : pad_;
}

void Conv2d::init(Rng& rng) {
  init_gaussian(w_.value, rng, kInitStddev);
  b_.value.zero();
}

void Conv2d::collect_params(const std::string& prefix, std::vector<Param*>& out) {
  w_.name = prefix + ".w";
  b_.name = prefix + ".b";
  out.push_back(&w_);
  out.push_back(&b_);
}

Tensor Conv2d::forward(const Tensor& x, LayerCache& cc) const {
  if (x.c != in_c_)
    throw std::invalid_argument("Conv2d: expected " + std::to_string(in_c_) +
                                " input channels, got " + x.shape_str());
  const PadSpec pad = pad_for(x);
  const int oh = conv_out(x.h, k_, stride_, pad.top, pad.bottom);
  const int ow = conv_out(x.w, k_, stride_, pad.left, pad.right);
  if (oh <= 0 || ow <= 0)
    throw std::invalid_argument("Conv2d: input " + x.shape_str() + " too small for kernel");

  std::vector<float> cols;
  im2col(x, k_, stride_, pad, oh, ow, cols);

  Tensor y(out_c_, oh, ow);
  ConstMatMap wm(w_.value.data(), out_c_, in_c_ * k_ * k_);
  ConstMatMap cm(cols.data(), in_c_ * k_ * k_, oh * ow);
  MatMap ym(y.data(), out_c_, oh * ow);
  ym.noalias() = wm * cm;
  for (int c = 0; c < out_c_; ++c) {
    float* row = y.data() + static_cast<size_t>(c) * oh * ow;
    const float bias = b_.value.v[c];
    for (int i = 0; i < oh * ow; ++i) row[i] += bias;
  }
  cc.x = x;
  return y;
}

Tensor Conv2d::backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) {
  const Tensor& x = cc.x;
  const PadSpec pad = pad_for(x);
  const int oh = dy.h, ow = dy.w;

  std::vector<float> cols;
  im2col(x, k_, stride_, pad, oh, ow, cols);
  ConstMatMap dym(dy.data(), out_c_, oh * ow);

  if (acc_param_grads) {
    ConstMatMap cm(cols.data(), in_c_ * k_ * k_, oh * ow);
    MatMap dwm(w_.grad.data(), out_c_, in_c_ * k_ * k_);
    dwm.noalias() += dym * cm.transpose();
    for (int c = 0; c < out_c_; ++c) {
      const float* row = dy.data() + static_cast<size_t>(c) * oh * ow;
      float acc = 0;
      for (int i = 0; i < oh * ow; ++i) acc += row[i];
      b_.grad.v[c] += acc;
    }
  }

  std::vector<float> dcols(static_cast<size_t>(in_c_ * k_ * k_) * oh * ow);
  ConstMatMap wm(w_.value.data(), out_c_, in_c_ * k_ * k_);
  MatMap dcm(dcols.data(), in_c_ * k_ * k_, oh * ow);
  dcm.noalias() = wm.transpose() * dym;

  Tensor dx;
  col2im(dcols, in_c_, x.h, x.w, k_, stride_, pad, oh, ow, dx);
  return dx;
}

// ------------------------------------------------------- ConvTranspose2d

ConvTranspose2d::ConvTranspose2d(int in_c, int out_c, int k, int stride, int pad, int out_pad)
    : in_c_(in_c), out_c_(out_c), k_(k), stride_(stride), pad_(pad), out_pad_(out_pad) {
  w_.resize(in_c, out_c * k * k, 1);
  b_.resize(out_c, 1, 1);
}

void ConvTranspose2d::init(Rng& rng) {
  init_gaussian(w_.value, rng, kInitStddev);
  b_.value.zero();
}

void ConvTranspose2d::collect_params(const std::string& prefix, std::vector<Param*>& out) {
  w_.name = prefix + ".w";
  b_.name = prefix + ".b";
  out.push_back(&w_);
  out.push_back(&b_);
}

Tensor ConvTranspose2d::forward(const Tensor& x, LayerCache& cc) const {
  if (x.c != in_c_)
    throw std::invalid_argument("ConvTranspose2d: expected " + std::to_string(in_c_) +
                                " input channels, got " + x.shape_str());
  const int oh = (x.h - 1) * stride_ - 2 * pad_ + k_ + out_pad_;
  const int ow = (x.w - 1) * stride_ - 2 * pad_ + k_ + out_pad_;

  std::vector<float> cols(static_cast<size_t>(out_c_ * k_ * k_) * x.h * x.w);
  ConstMatMap wm(w_.value.data(), in_c_, out_c_ * k_ * k_);
  ConstMatMap xm(x.data(), in_c_, x.h * x.w);
  MatMap cm(cols.data(), out_c_ * k_ * k_, x.h * x.w);
  cm.noalias() = wm.transpose() * xm;

  Tensor y;
  col2im(cols, out_c_, oh, ow, k_, stride_, PadSpec::symmetric(pad_), x.h, x.w, y);
  for (int c = 0; c < out_c_; ++c) {
    float* row = y.data() + static_cast<size_t>(c) * oh * ow;
    const float bias = b_.value.v[c];
    for (int i = 0; i < oh * ow; ++i) row[i] += bias;
  }
  cc.x = x;
  return y;
}

Tensor ConvTranspose2d::backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) {
  const Tensor& x = cc.x;
  std::vector<float> dcols;
  im2col(dy, k_, stride_, PadSpec::symmetric(pad_), x.h, x.w, dcols);

  ConstMatMap dcm(dcols.data(), out_c_ * k_ * k_, x.h * x.w);
  if (acc_param_grads) {
    ConstMatMap xm(x.data(), in_c_, x.h * x.w);
    MatMap dwm(w_.grad.data(), in_c_, out_c_ * k_ * k_);
    dwm.noalias() += xm * dcm.transpose();
    for (int c = 0; c < out_c_; ++c) {
      const float* row = dy.data() + static_cast<size_t>(c) * dy.h * dy.w;
      float acc = 0;
      for (int i = 0; i < dy.h * dy.w; ++i) acc += row[i];
      b_.grad.v[c] += acc;
    }
  }

  Tensor dx(in_c_, x.h, x.w);
  ConstMatMap wm(w_.value.data(), in_c_, out_c_ * k_ * k_);
  MatMap dxm(dx.data(), in_c_, x.h * x.w);
  dxm.noalias() = wm * dcm;
  return dx;
}

// ---------------------------------------------------------- InstanceNorm

Tensor InstanceNorm::forward(const Tensor& x, LayerCache& cc) const {
  if (x.c != channels_) throw std::invalid_argument("InstanceNorm: channel mismatch");
  const int n = x.plane();
  Tensor y(x.c, x.h, x.w);
  cc.stats.assign(x.c, 0.f);
  for (int c = 0; c < x.c; ++c) {
    const float* src = x.data() + static_cast<size_t>(c) * n;
    float mean = 0;
    for (int i = 0; i < n; ++i) mean += src[i];
    mean /= static_cast<float>(n);
    float var = 0;
    for (int i = 0; i < n; ++i) {
      const float d = src[i] - mean;
      var += d * d;
    }
    var /= static_cast<float>(n);
    const float inv_std = 1.f / std::sqrt(var + kEps);
    float* dst = y.data() + static_cast<size_t>(c) * n;
    for (int i = 0; i < n; ++i) dst[i] = (src[i] - mean) * inv_std;
    cc.stats[c] = inv_std;
  }
  cc.y = y;
  return y;
}

Tensor InstanceNorm::backward(const LayerCache& cc, const Tensor& dy, bool) {
  const Tensor& y = cc.y;
  const int n = y.plane();
  Tensor dx(y.c, y.h, y.w);
  for (int c = 0; c < y.c; ++c) {
    const float* yc = y.data() + static_cast<size_t>(c) * n;
    const float* dyc = dy.data() + static_cast<size_t>(c) * n;
    float* dxc = dx.data() + static_cast<size_t>(c) * n;
    float mean_dy = 0, mean_dyy = 0;
    for (int i = 0; i < n; ++i) {
      mean_dy += dyc[i];
      mean_dyy += dyc[i] * yc[i];
    }
    mean_dy /= static_cast<float>(n);
    mean_dyy /= static_cast<float>(n);
    const float inv_std = cc.stats[c];
    for (int i = 0; i < n; ++i)
      dxc[i] = inv_std * (dyc[i] - mean_dy - yc[i] * mean_dyy);
  }
  return dx;
}

// ----------------------------------------------------------- activations

Tensor Relu::forward(const Tensor& x, LayerCache& cc) const {
  Tensor y = x;
  for (float& v : y.v) v = v > 0 ? v : 0.f;
  cc.x = x;
  return y;
}

Tensor Relu::backward(const LayerCache& cc, const Tensor& dy, bool) {
  Tensor dx = dy;
  for (size_t i = 0; i < dx.size(); ++i)
    if (cc.x.v[i] <= 0) dx.v[i] = 0.f;
  return dx;
}

Tensor LeakyRelu::forward(const Tensor& x, LayerCache& cc) const {
  Tensor y = x;
  for (float& v : y.v) v = v > 0 ? v : slope_ * v;
  cc.x = x;
  return y;
}

Tensor LeakyRelu::backward(const LayerCache& cc, const Tensor& dy, bool) {
  Tensor dx = dy;
  for (size_t i = 0; i < dx.size(); ++i)
    if (cc.x.v[i] <= 0) dx.v[i] *= slope_;
  return dx;
}

Tensor Tanh::forward(const Tensor& x, LayerCache& cc) const {
  Tensor y = x;
  for (float& v : y.v) v = std::tanh(v);
  cc.y = y;
  return y;
}

Tensor Tanh::backward(const LayerCache& cc, const Tensor& dy, bool) {
  Tensor dx = dy;
  for (size_t i = 0; i < dx.size(); ++i) dx.v[i] *= 1.f - cc.y.v[i] * cc.y.v[i];
  return dx;
}

// -------------------------------------------------------------- pooling

Tensor MaxPool2::forward(const Tensor& x, LayerCache& cc) const {
  const int oh = (x.h + 1) / 2, ow = (x.w + 1) / 2;
  Tensor y(x.c, oh, ow);
  cc.idx.assign(y.size(), 0);
  cc.x = Tensor(x.c, x.h, x.w);  // shape only; values not needed in backward
  size_t o = 0;
  for (int c = 0; c < x.c; ++c) {
    for (int oy = 0; oy < oh; ++oy) {
      for (int ox = 0; ox < ow; ++ox, ++o) {
        float best = -std::numeric_limits<float>::infinity();
        int best_i = 0;
        for (int ky = 0; ky < 2; ++ky) {
          const int iy = oy * 2 + ky;
          if (iy >= x.h) continue;
          for (int kx = 0; kx < 2; ++kx) {
            const int ix = ox * 2 + kx;
            if (ix >= x.w) continue;
            const int i = (c * x.h + iy) * x.w + ix;
            if (x.v[i] > best) {
              best = x.v[i];
              best_i = i;
            }
          }
        }
        y.v[o] = best;
        cc.idx[o] = best_i;
      }
    }
  }
  return y;
}

Tensor MaxPool2::backward(const LayerCache& cc, const Tensor& dy, bool) {
  Tensor dx(cc.x.c, cc.x.h, cc.x.w);
  for (size_t o = 0; o < dy.size(); ++o) dx.v[cc.idx[o]] += dy.v[o];
  return dx;
}

Tensor GlobalAvgPool::forward(const Tensor& x, LayerCache& cc) const {
  Tensor y(x.c, 1, 1);
  const int n = x.plane();
  for (int c = 0; c < x.c; ++c) {
    const float* src = x.data() + static_cast<size_t>(c) * n;
    float acc = 0;
    for (int i = 0; i < n; ++i) acc += src[i];
    y.v[c] = acc / static_cast<float>(n);
  }
  cc.x = Tensor(x.c, x.h, x.w);
  return y;
}

Tensor GlobalAvgPool::backward(const LayerCache& cc, const Tensor& dy, bool) {
  Tensor dx(cc.x.c, cc.x.h, cc.x.w);
  const int n = dx.plane();
  for (int c = 0; c < dx.c; ++c) {
    const float g = dy.v[c] / static_cast<float>(n);
    float* dst = dx.data() + static_cast<size_t>(c) * n;
    for (int i = 0; i < n; ++i) dst[i] = g;
  }
  return dx;
}

// --------------------------------------------------------------- Linear

Linear::Linear(int in_n, int out_n) : in_n_(in_n), out_n_(out_n) {
  w_.resize(out_n, in_n, 1);
  b_.resize(out_n, 1, 1);
}

void Linear::init(Rng& rng) {
  init_gaussian(w_.value, rng, kInitStddev);
  b_.value.zero();
}

void Linear::collect_params(const std::string& prefix, std::vector<Param*>& out) {
  w_.name = prefix + ".w";
  b_.name = prefix + ".b";
  out.push_back(&w_);
  out.push_back(&b_);
}

Tensor Linear::forward(const Tensor& x, LayerCache& cc) const {
  if (static_cast<int>(x.size()) != in_n_)
    throw std::invalid_argument("Linear: expected " + std::to_string(in_n_) +
                                " inputs, got " + x.shape_str());
  Tensor y(out_n_, 1, 1);
  ConstMatMap wm(w_.value.data(), out_n_, in_n_);
  Eigen::Map<const Eigen::VectorXf> xv(x.data(), in_n_);
  Eigen::Map<Eigen::VectorXf> yv(y.data(), out_n_);
  yv.noalias() = wm * xv;
  for (int i = 0; i < out_n_; ++i) y.v[i] += b_.value.v[i];
  cc.x = x;
  return y;
}

Tensor Linear::backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) {
  if (acc_param_grads) {
    MatMap dwm(w_.grad.data(), out_n_, in_n_);
    Eigen::Map<const Eigen::VectorXf> dyv(dy.data(), out_n_);
    Eigen::Map<const Eigen::VectorXf> xv(cc.x.data(), in_n_);
    dwm.noalias() += dyv * xv.transpose();
    for (int i = 0; i < out_n_; ++i) b_.grad.v[i] += dy.v[i];
  }
  Tensor dx(cc.x.c, cc.x.h, cc.x.w);
  ConstMatMap wm(w_.value.data(), out_n_, in_n_);
  Eigen::Map<const Eigen::VectorXf> dyv(dy.data(), out_n_);
  Eigen::Map<Eigen::VectorXf> dxv(dx.data(), in_n_);
  dxv.noalias() = wm.transpose() * dyv;
  return dx;
}

// -------------------------------------------------------- ResidualBlock

ResidualBlock::ResidualBlock(int channels) {
  body_.push_back(std::make_unique<Conv2d>(channels, channels, 3, 1, PadSpec::symmetric(1)));
  body_.push_back(std::make_unique<InstanceNorm>(channels));
  body_.push_back(std::make_unique<Relu>());
  body_.push_back(std::make_unique<Conv2d>(channels, channels, 3, 1, PadSpec::symmetric(1)));
  body_.push_back(std::make_unique<InstanceNorm>(channels));
}

void ResidualBlock::init(Rng& rng) {
  for (auto& l : body_) l->init(rng);
}

void ResidualBlock::collect_params(const std::string& prefix, std::vector<Param*>& out) {
  for (size_t i = 0; i < body_.size(); ++i)
    body_[i]->collect_params(prefix + "." + std::to_string(i), out);
}

Tensor ResidualBlock::forward(const Tensor& x, LayerCache& cc) const {
  cc.sub.resize(body_.size());
  Tensor t = x;
  for (size_t i = 0; i < body_.size(); ++i) t = body_[i]->forward(t, cc.sub[i]);
  check_same_shape(t, x, "ResidualBlock");
  for (size_t i = 0; i < t.size(); ++i) t.v[i] += x.v[i];
  return t;
}

Tensor ResidualBlock::backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) {
  Tensor d = dy;
  for (size_t i = body_.size(); i-- > 0;) d = body_[i]->backward(cc.sub[i], d, acc_param_grads);
  for (size_t i = 0; i < d.size(); ++i) d.v[i] += dy.v[i];
  return d;
}

// ----------------------------------------------------------- Sequential

Tensor Sequential::forward(const Tensor& x, LayerCache& cc) const {
  cc.sub.resize(layers_.size());
  Tensor t = x;
  for (size_t i = 0; i < layers_.size(); ++i) t = layers_[i]->forward(t, cc.sub[i]);
  return t;
}

Tensor Sequential::backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) {
  Tensor d = dy;
  for (size_t i = layers_.size(); i-- > 0;) d = layers_[i]->backward(cc.sub[i], d, acc_param_grads);
  return d;
}

void Sequential::collect_params(const std::string& prefix, std::vector<Param*>& out) {
  for (size_t i = 0; i < layers_.size(); ++i)
    layers_[i]->collect_params(prefix + "." + std::to_string(i), out);
}

void Sequential::init(Rng& rng) {
  for (auto& l : layers_) l->init(rng);
}

// -------------------------------------------------------------- helpers

size_t param_count(const std::vector<Param*>& params) {
  size_t n = 0;
  for (const Param* p : params) n += p->value.size();
  return n;
}

void zero_grads(const std::vector<Param*>& params) {
  for (Param* p : params) p->grad.zero();
}

uint64_t hash_params(const std::vector<Param*>& params) {
  uint64_t h = 1469598103934665603ull;
  for (const Param* p : params) {
    const uint64_t t = hash_tensor(p->value);
    h ^= t;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace spgan::nn
