#include "spgan/nn/backbone.hpp"

#include <stdexcept>

namespace spgan::nn {

BackboneConfig BackboneConfig::desk(int n_classes) { return {16, 128, n_classes}; }

BackboneConfig BackboneConfig::full_scale(int n_classes) { return {64, 2048, n_classes}; }

Backbone::Backbone(const BackboneConfig& cfg)
    : cfg_(cfg), fc_(cfg.feat_channels, std::max(cfg.n_classes, 1)) {
  const int b = cfg.base_filters;
  trunk_.add<Conv2d>(3, b, 3, 1, PadSpec::symmetric(1));
  trunk_.add<InstanceNorm>(b);
  trunk_.add<Relu>();
  int in_c = b;
  for (int out_c : {2 * b, 4 * b, 8 * b}) {
    trunk_.add<Conv2d>(in_c, out_c, 3, 2, PadSpec::symmetric(1));
    trunk_.add<InstanceNorm>(out_c);
    trunk_.add<Relu>();
    trunk_.add<ResidualBlock>(out_c);
    in_c = out_c;
  }
  if (cfg.feat_channels != in_c) {
    if (cfg.feat_channels < in_c)
      throw std::invalid_argument("Backbone: feat_channels below trunk width");
    trunk_.add<Conv2d>(in_c, cfg.feat_channels, 1, 1, PadSpec::symmetric(0));
    trunk_.add<InstanceNorm>(cfg.feat_channels);
    trunk_.add<Relu>();
  }
  trunk_.collect_params("trunk", params_);
  if (cfg.n_classes > 0) fc_.collect_params("head", params_);
  arch_ = "backbone(base=" + std::to_string(cfg.base_filters) +
          ",feat=" + std::to_string(cfg.feat_channels) +
          ",classes=" + std::to_string(cfg.n_classes) + ")";
}

Tensor Backbone::forward_map(const Tensor& x, BackboneCache& cc) const {
  return trunk_.forward(x, cc.trunk);
}

Tensor Backbone::forward_logits(const Tensor& x, BackboneCache& cc) const {
  if (cfg_.n_classes <= 0) throw std::logic_error("Backbone: headless model has no logits");
  Tensor fmap = forward_map(x, cc);
  Tensor pooled = gap_.forward(fmap, cc.gap);
  return fc_.forward(pooled, cc.fc);
}

std::pair<Tensor, Tensor> Backbone::forward_feature(const Tensor& x, BackboneCache& cc) const {
  if (!initialized_)
    throw std::logic_error("Backbone: feature extraction requires initialized parameters");
  Tensor fmap = forward_map(x, cc);
  Tensor pooled = gap_.forward(fmap, cc.gap);
  return {std::move(fmap), std::move(pooled)};
}

Tensor Backbone::backward_logits(const BackboneCache& cc, const Tensor& dlogits,
                                 bool acc_param_grads) {
  Tensor d = fc_.backward(cc.fc, dlogits, acc_param_grads);
  d = gap_.backward(cc.gap, d, acc_param_grads);
  return trunk_.backward(cc.trunk, d, acc_param_grads);
}

void Backbone::init(Rng& rng) {
  trunk_.init(rng);
  fc_.init(rng);
  initialized_ = true;
}

size_t Backbone::param_count() const { return nn::param_count(params_); }

}  // namespace spgan::nn
