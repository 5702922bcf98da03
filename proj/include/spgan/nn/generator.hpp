#pragma once

#include "spgan/nn/layers.hpp"

#include <string>
#include <vector>

namespace spgan::nn {

// ResNet-style encoder/decoder translator: c7s1 stem, two stride-2
// down-convolutions, a run of residual blocks, two stride-2 up-convolutions,
// and a tanh output head. Shape-preserving whenever both sides of the input
// are divisible by 4.
class Generator {
 public:
  Generator(int base_filters, int n_blocks, int in_c = 3, int out_c = 3);

  Tensor forward(const Tensor& x, LayerCache& cc) const;
  Tensor backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads = true);
  void init(Rng& rng);

  const std::vector<Param*>& params() { return params_; }
  size_t param_count() const;
  std::string arch() const { return arch_; }

 private:
  Sequential net_;
  std::vector<Param*> params_;
  std::string arch_;
};

// Patch-level convolutional classifier producing a real-valued score map.
// First block is norm-free; later blocks use instance normalization.
class Discriminator {
 public:
  explicit Discriminator(int base_filters, int in_c = 3);

  Tensor forward(const Tensor& x, LayerCache& cc) const;
  Tensor backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads = true);
  void init(Rng& rng);

  const std::vector<Param*>& params() { return params_; }
  size_t param_count() const;
  std::string arch() const { return arch_; }

  // Spatial extent of the score map for a given input size (k=4, pad=1
  // convolutions: two stride-2 halvings then two stride-1 reductions by one).
  static std::pair<int, int> score_shape(int h, int w);

 private:
  Sequential net_;
  std::vector<Param*> params_;
  std::string arch_;
};

}  // namespace spgan::nn
