#include "spgan/nn/generator.hpp"

namespace spgan::nn {

Generator::Generator(int base_filters, int n_blocks, int in_c, int out_c) {
  const int f = base_filters;
  net_.add<Conv2d>(in_c, f, 7, 1, PadSpec::symmetric(3));
  net_.add<InstanceNorm>(f);
  net_.add<Relu>();
  net_.add<Conv2d>(f, 2 * f, 3, 2, PadSpec::symmetric(1));
  net_.add<InstanceNorm>(2 * f);
  net_.add<Relu>();
  net_.add<Conv2d>(2 * f, 4 * f, 3, 2, PadSpec::symmetric(1));
  net_.add<InstanceNorm>(4 * f);
  net_.add<Relu>();
  for (int i = 0; i < n_blocks; ++i) net_.add<ResidualBlock>(4 * f);
  net_.add<ConvTranspose2d>(4 * f, 2 * f, 3, 2, 1, 1);
  net_.add<InstanceNorm>(2 * f);
  net_.add<Relu>();
  net_.add<ConvTranspose2d>(2 * f, f, 3, 2, 1, 1);
  net_.add<InstanceNorm>(f);
  net_.add<Relu>();
  net_.add<Conv2d>(f, out_c, 7, 1, PadSpec::symmetric(3));
  net_.add<Tanh>();
  net_.collect_params("gen", params_);
  arch_ = "generator(base=" + std::to_string(base_filters) +
          ",blocks=" + std::to_string(n_blocks) + ",in=" + std::to_string(in_c) +
          ",out=" + std::to_string(out_c) + ")";
}

Tensor Generator::forward(const Tensor& x, LayerCache& cc) const {
  if (x.h % 4 != 0 || x.w % 4 != 0)
    throw std::invalid_argument("Generator: input sides must be divisible by 4, got " +
                                x.shape_str());
  return net_.forward(x, cc);
}

Tensor Generator::backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) {
  return net_.backward(cc, dy, acc_param_grads);
}

void Generator::init(Rng& rng) { net_.init(rng); }

size_t Generator::param_count() const { return nn::param_count(params_); }

Discriminator::Discriminator(int base_filters, int in_c) {
  const int d = base_filters;
  net_.add<Conv2d>(in_c, d, 4, 2, PadSpec::symmetric(1));
  net_.add<LeakyRelu>(0.2f);
  net_.add<Conv2d>(d, 2 * d, 4, 2, PadSpec::symmetric(1));
  net_.add<InstanceNorm>(2 * d);
  net_.add<LeakyRelu>(0.2f);
  net_.add<Conv2d>(2 * d, 4 * d, 4, 1, PadSpec::symmetric(1));
  net_.add<InstanceNorm>(4 * d);
  net_.add<LeakyRelu>(0.2f);
  net_.add<Conv2d>(4 * d, 1, 4, 1, PadSpec::symmetric(1));
  net_.collect_params("disc", params_);
  arch_ = "discriminator(base=" + std::to_string(base_filters) + ",in=" +
          std::to_string(in_c) + ")";
}

Tensor Discriminator::forward(const Tensor& x, LayerCache& cc) const {
  return net_.forward(x, cc);
}

Tensor Discriminator::backward(const LayerCache& cc, const Tensor& dy, bool acc_param_grads) {
  return net_.backward(cc, dy, acc_param_grads);
}

void Discriminator::init(Rng& rng) { net_.init(rng); }

size_t Discriminator::param_count() const { return nn::param_count(params_); }

std::pair<int, int> Discriminator::score_shape(int h, int w) {
  auto down = [](int n) { return (n + 2 - 4) / 2 + 1; };
  auto keep = [](int n) { return n + 2 - 4 + 1; };
  return {keep(keep(down(down(h)))), keep(keep(down(down(w))))};
}

}  // namespace spgan::nn
