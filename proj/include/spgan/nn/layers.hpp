#pragma once

#include <memory>
#include <string>
#include <vector>

#include "spgan/rng.hpp"
#include "spgan/tensor.hpp"

namespace spgan::nn {

// Named parameter blob: value and accumulated gradient, Caffe-style.
struct Param {
  std::string name;
  Tensor value;
  Tensor grad;

  void resize(int c, int h, int w) {
    value = Tensor(c, h, w);
    grad = Tensor(c, h, w);
  }
};

// Per-call activation cache. forward() is const and writes only here, so one
// layer can serve several live forward passes (cycle, identity, pair terms).
struct LayerCache {
  Tensor x;                     // saved input
  Tensor y;                     // saved output where backward needs it
  std::vector<int> idx;         // argmax routing for max pooling
  std::vector<float> stats;     // per-channel normalization stats
  std::vector<LayerCache> sub;  // composite layers
};

class Layer {
 public:
  virtual ~Layer() = default;
  virtual Tensor forward(const Tensor& x, LayerCache& cc) const = 0;
  // Returns dL/dx; accumulates dL/dw into Param.grad when acc_param_grads.
  virtual Tensor backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) = 0;
  virtual void collect_params(const std::string& prefix, std::vector<Param*>& out) {}
  virtual void init(Rng& rng) {}
};

struct PadSpec {
  int top = 0, bottom = 0, left = 0, right = 0;

  static PadSpec symmetric(int p) { return {p, p, p, p}; }
  // TF-style SAME: output ceil(n/stride), extra padding at bottom/right.
  static PadSpec same(int h, int w, int k, int stride);
};

class Conv2d : public Layer {
 public:
  Conv2d(int in_c, int out_c, int k, int stride, PadSpec pad);
  // SAME-padding variant; padding recomputed per input size.
  Conv2d(int in_c, int out_c, int k, int stride);

  Tensor forward(const Tensor& x, LayerCache& cc) const override;
  Tensor backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) override;
  void collect_params(const std::string& prefix, std::vector<Param*>& out) override;
  void init(Rng& rng) override;

  int in_c() const { return in_c_; }
  int out_c() const { return out_c_; }

 private:
  PadSpec pad_for(const Tensor& x) const;

  int in_c_, out_c_, k_, stride_;
  bool same_pad_ = false;
  PadSpec pad_{};
  Param w_, b_;
};

// Fractionally-strided conv; doubles spatial dims with k=3, s=2, p=1, outp=1.
class ConvTranspose2d : public Layer {
 public:
  ConvTranspose2d(int in_c, int out_c, int k, int stride, int pad, int out_pad);

  Tensor forward(const Tensor& x, LayerCache& cc) const override;
  Tensor backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) override;
  void collect_params(const std::string& prefix, std::vector<Param*>& out) override;
  void init(Rng& rng) override;

 private:
  int in_c_, out_c_, k_, stride_, pad_, out_pad_;
  Param w_, b_;
};

// Per-channel normalization over the spatial plane, no learned affine.
class InstanceNorm : public Layer {
 public:
  explicit InstanceNorm(int channels) : channels_(channels) {}
  Tensor forward(const Tensor& x, LayerCache& cc) const override;
  Tensor backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) override;

 private:
  int channels_;
  static constexpr float kEps = 1e-5f;
};

class Relu : public Layer {
 public:
  Tensor forward(const Tensor& x, LayerCache& cc) const override;
  Tensor backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) override;
};

class LeakyRelu : public Layer {
 public:
  explicit LeakyRelu(float slope = 0.2f) : slope_(slope) {}
  Tensor forward(const Tensor& x, LayerCache& cc) const override;
  Tensor backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) override;

 private:
  float slope_;
};

class Tanh : public Layer {
 public:
  Tensor forward(const Tensor& x, LayerCache& cc) const override;
  Tensor backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) override;
};

// 2x2 stride-2 max pool, ceil mode (a 1-pixel edge still yields one output).
class MaxPool2 : public Layer {
 public:
  Tensor forward(const Tensor& x, LayerCache& cc) const override;
  Tensor backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) override;
};

class GlobalAvgPool : public Layer {
 public:
  Tensor forward(const Tensor& x, LayerCache& cc) const override;
  Tensor backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) override;
};

class Linear : public Layer {
 public:
  Linear(int in_n, int out_n);
  Tensor forward(const Tensor& x, LayerCache& cc) const override;
  Tensor backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) override;
  void collect_params(const std::string& prefix, std::vector<Param*>& out) override;
  void init(Rng& rng) override;

 private:
  int in_n_, out_n_;
  Param w_, b_;
};

// conv3x3 -> IN -> ReLU -> conv3x3 -> IN, plus skip. No activation after the add.
class ResidualBlock : public Layer {
 public:
  explicit ResidualBlock(int channels);
  Tensor forward(const Tensor& x, LayerCache& cc) const override;
  Tensor backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) override;
  void collect_params(const std::string& prefix, std::vector<Param*>& out) override;
  void init(Rng& rng) override;

 private:
  std::vector<std::unique_ptr<Layer>> body_;
};

class Sequential : public Layer {
 public:
  Sequential() = default;
  void add(std::unique_ptr<Layer> layer) { layers_.push_back(std::move(layer)); }
  template <typename T, typename... Args>
  T& add(Args&&... args) {
    layers_.push_back(std::make_unique<T>(std::forward<Args>(args)...));
    return static_cast<T&>(*layers_.back());
  }
  size_t size() const { return layers_.size(); }

  Tensor forward(const Tensor& x, LayerCache& cc) const override;
  Tensor backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) override;
  void collect_params(const std::string& prefix, std::vector<Param*>& out) override;
  void init(Rng& rng) override;

 private:
  std::vector<std::unique_ptr<Layer>> layers_;
};

size_t param_count(const std::vector<Param*>& params);
void zero_grads(const std::vector<Param*>& params);
uint64_t hash_params(const std::vector<Param*>& params);

constexpr float kInitStddev = 0.02f;

}  // namespace spgan::nn
