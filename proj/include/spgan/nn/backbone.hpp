#pragma once

#include "spgan/nn/layers.hpp"

#include <string>
#include <utility>
#include <vector>

namespace spgan::nn {

struct BackboneConfig {
  int base_filters = 16;   // stem width; the three stages run 2x, 4x, 8x this
  int feat_channels = 128; // C_f; a 1x1 expansion is appended when > 8x base
  int n_classes = 0;       // classifier head width; 0 = headless

  // Small residual CNN, 128-channel feature map.
  static BackboneConfig desk(int n_classes);
  // Wider trunk with a bottleneck-style 1x1 expansion to a 2048-channel map.
  static BackboneConfig full_scale(int n_classes);
};

struct BackboneCache {
  LayerCache trunk, gap, fc;
};

// Re-ID feature extractor. The trunk ends at the final spatial map (the input
// to any pooling); train mode adds global average pooling and the identity
// classifier head on top.
class Backbone {
 public:
  explicit Backbone(const BackboneConfig& cfg);

  // Spatial feature map, C_f x H/8 x W/8.
  Tensor forward_map(const Tensor& x, BackboneCache& cc) const;
  // Train mode: logits over the configured identity count.
  Tensor forward_logits(const Tensor& x, BackboneCache& cc) const;
  // Feature mode: (spatial map, pooled C_f vector). Requires initialized params.
  std::pair<Tensor, Tensor> forward_feature(const Tensor& x, BackboneCache& cc) const;

  // Backprop from dL/dlogits through head and trunk.
  Tensor backward_logits(const BackboneCache& cc, const Tensor& dlogits,
                         bool acc_param_grads = true);

  void init(Rng& rng);
  void mark_initialized() { initialized_ = true; }
  bool initialized() const { return initialized_; }

  const std::vector<Param*>& params() { return params_; }
  size_t param_count() const;
  std::string arch() const { return arch_; }
  const BackboneConfig& config() const { return cfg_; }

 private:
  BackboneConfig cfg_;
  Sequential trunk_;
  GlobalAvgPool gap_;
  Linear fc_;
  std::vector<Param*> params_;
  std::string arch_;
  bool initialized_ = false;
};

}  // namespace spgan::nn
