#include "spgan/image_io.hpp"

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include <cmath>
#include <stdexcept>

namespace spgan {

namespace {

Tensor mat_to_tensor(const cv::Mat& bgr) {
  Tensor t(3, bgr.rows, bgr.cols);
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x) {
      // BGR on disk -> RGB channel order in the tensor.
      t.at(0, y, x) = static_cast<float>(row[x][2]) / 127.5f - 1.f;
      t.at(1, y, x) = static_cast<float>(row[x][1]) / 127.5f - 1.f;
      t.at(2, y, x) = static_cast<float>(row[x][0]) / 127.5f - 1.f;
    }
  }
  return t;
}

cv::Mat decode(const std::string& path) {
  cv::Mat img = cv::imread(path, cv::IMREAD_COLOR);  // grayscale -> 3 channels
  if (img.empty()) throw std::runtime_error("failed to decode image: " + path);
  return img;
}

}  // namespace

Tensor load_image(const std::string& path) { return mat_to_tensor(decode(path)); }

Tensor load_image(const std::string& path, int h, int w) {
  cv::Mat img = decode(path);
  if (img.rows != h || img.cols != w) {
    cv::Mat resized;
    cv::resize(img, resized, cv::Size(w, h), 0, 0, cv::INTER_AREA);
    img = resized;
  }
  return mat_to_tensor(img);
}

void save_image_png(const Tensor& t, const std::string& path) {
  if (t.c != 3) throw std::invalid_argument("save_image_png: need 3 channels, got " + t.shape_str());
  cv::Mat bgr(t.h, t.w, CV_8UC3);
  auto to_byte = [](float v) {
    const float scaled = (std::clamp(v, -1.f, 1.f) + 1.f) * 127.5f;
    return static_cast<unsigned char>(std::lround(scaled));
  };
  for (int y = 0; y < t.h; ++y) {
    auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < t.w; ++x) {
      row[x][0] = to_byte(t.at(2, y, x));
      row[x][1] = to_byte(t.at(1, y, x));
      row[x][2] = to_byte(t.at(0, y, x));
    }
  }
  if (!cv::imwrite(path, bgr, {cv::IMWRITE_PNG_COMPRESSION, 3}))
    throw std::runtime_error("failed to write image: " + path);
}

}  // namespace spgan
