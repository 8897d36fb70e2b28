#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace unienv {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Row-major height x width x channels array of bytes. Used both for RGB
/// frames and for symbolic observation encodings.
struct Image {
  int height = 0;
  int width = 0;
  int channels = 3;
  std::vector<std::uint8_t> data;

  Image() = default;
  Image(int h, int w, int c = 3, std::uint8_t fill = 0)
      : height(h), width(w), channels(c), data(static_cast<std::size_t>(h) * w * c, fill) {}

  std::size_t index(int row, int col, int ch = 0) const {
    return (static_cast<std::size_t>(row) * width + col) * channels + ch;
  }
  std::uint8_t& at(int row, int col, int ch) { return data[index(row, col, ch)]; }
  std::uint8_t at(int row, int col, int ch) const { return data[index(row, col, ch)]; }

  Rgb pixel(int row, int col) const {
    const auto i = index(row, col);
    return {data[i], data[i + 1], data[i + 2]};
  }
  void set_pixel(int row, int col, Rgb c) {
    const auto i = index(row, col);
    data[i] = c.r;
    data[i + 1] = c.g;
    data[i + 2] = c.b;
  }

  friend bool operator==(const Image&, const Image&) = default;
};

/// Binary PPM (P6). Raster fallback for renderer tests.
std::string encode_ppm(const Image& rgb);

/// Lossless 8-bit RGB PNG.
std::string encode_png(const Image& rgb);

std::string base64_encode(const std::string& bytes);

}  // namespace unienv
