#pragma once

#include "spgan/nn/generator.hpp"
#include "spgan/tensor.hpp"

#include <string>
#include <vector>

namespace spgan {

enum class PairTag { src_pos, tgt_pos, src_neg, tgt_neg };

// The label is a pure function of provenance: an image and its own
// translation share an identity; a translated source image can never match a
// target image because the domains share no identities.
constexpr int pair_label(PairTag tag) {
  return tag == PairTag::src_pos || tag == PairTag::tgt_pos ? 1 : 0;
}

std::string pair_tag_name(PairTag tag);

struct PairBatch {
  struct Item {
    PairTag tag;
    int label;
    Tensor a, b;
  };
  std::vector<Item> items;  // always 4, in tag declaration order
};

// Assemble the four pairs from a step's inputs and their translations:
// (x_S, G(x_S)) and (x_T, F(x_T)) positive, (G(x_S), x_T) and (F(x_T), x_S)
// negative.
PairBatch make_pair_batch(const Tensor& x_s, const Tensor& x_t, const Tensor& g_xs,
                          const Tensor& f_xt);

// Convenience form that runs the translations itself.
PairBatch build_pair_batch(const Tensor& x_s, const Tensor& x_t, const nn::Generator& g,
                           const nn::Generator& f);

}  // namespace spgan
