#include "spgan/pairs.hpp"

namespace spgan {

std::string pair_tag_name(PairTag tag) {
  switch (tag) {
    case PairTag::src_pos: return "src_pos";
    case PairTag::tgt_pos: return "tgt_pos";
    case PairTag::src_neg: return "src_neg";
    default: return "tgt_neg";
  }
}

PairBatch make_pair_batch(const Tensor& x_s, const Tensor& x_t, const Tensor& g_xs,
                          const Tensor& f_xt) {
  PairBatch batch;
  auto add = [&batch](PairTag tag, const Tensor& a, const Tensor& b) {
    batch.items.push_back({tag, pair_label(tag), a, b});
  };
  add(PairTag::src_pos, x_s, g_xs);
  add(PairTag::tgt_pos, x_t, f_xt);
  add(PairTag::src_neg, g_xs, x_t);
  add(PairTag::tgt_neg, f_xt, x_s);
  return batch;
}

PairBatch build_pair_batch(const Tensor& x_s, const Tensor& x_t, const nn::Generator& g,
                           const nn::Generator& f) {
  nn::LayerCache cg, cf;
  return make_pair_batch(x_s, x_t, g.forward(x_s, cg), f.forward(x_t, cf));
}

}  // namespace spgan
