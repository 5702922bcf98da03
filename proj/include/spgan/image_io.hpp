#pragma once

#include "spgan/tensor.hpp"

#include <string>

namespace spgan {

// Decode an image file to 3xHxW in [-1, 1]. Grayscale files are replicated
// across channels. Throws std::runtime_error naming the path on failure.
Tensor load_image(const std::string& path);

// Same, but resized to h x w (area interpolation) before normalization.
Tensor load_image(const std::string& path, int h, int w);

// Clamp to [-1, 1], quantize to 8-bit, and write a PNG. The compression
// level is pinned so identical tensors produce identical bytes.
void save_image_png(const Tensor& t, const std::string& path);

}  // namespace spgan
