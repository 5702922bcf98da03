#pragma once

#include "spgan/nn/layers.hpp"

#include <string>
#include <vector>

namespace spgan::nn {

// Siamese embedder: four conv(4x4, stride 2) + maxpool(2x2, stride 2) stages
// at 64/128/256/512 channels, then a global average pool feeding an FC head.
// The pooled FC input makes the 128-dim output independent of resolution.
class SiaNet {
 public:
  static constexpr int kEmbedDim = 128;
  // The eight halving stages collapse small inputs to 1x1 almost immediately;
  // below this the layer stack degenerates, so we refuse the input.
  static constexpr int kMinSide = 16;

  SiaNet();

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

}  // namespace spgan::nn
