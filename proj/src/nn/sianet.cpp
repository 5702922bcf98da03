#include "spgan/nn/sianet.hpp"

namespace spgan::nn {

SiaNet::SiaNet() {
  int in_c = 3;
  for (int out_c : {64, 128, 256, 512}) {
    net_.add<Conv2d>(in_c, out_c, 4, 2);  // SAME padding
    net_.add<LeakyRelu>(0.2f);
    net_.add<MaxPool2>();
    in_c = out_c;
  }
  net_.add<GlobalAvgPool>();
  net_.add<Linear>(512, kEmbedDim);
  net_.collect_params("sia", params_);
  arch_ = "sianet(conv64-128-256-512,fc128)";
}

Tensor SiaNet::forward(const Tensor& x, LayerCache& cc) const {
  if (x.h < kMinSide || x.w < kMinSide)
    throw std::invalid_argument("SiaNet: input " + x.shape_str() + " below minimum side " +
                                std::to_string(kMinSide));
  return net_.forward(x, cc);
}

Tensor SiaNet::backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) {
  return net_.backward(cc, dy, acc_param_grads);
}

void SiaNet::init(Rng& rng) { net_.init(rng); }

size_t SiaNet::param_count() const { return nn::param_count(params_); }

}  // namespace spgan::nn
