#include "unienv/image.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/transform_width.hpp>
#include <zlib.h>

namespace unienv {

std::string encode_ppm(const Image& rgb) {
  std::string out = "P6\n" + std::to_string(rgb.width) + " " + std::to_string(rgb.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(rgb.data.data()), rgb.data.size());
  return out;
}

namespace {

void put_u32(std::string& s, std::uint32_t v) {
  s.push_back(static_cast<char>(v >> 24));
  s.push_back(static_cast<char>(v >> 16));
  s.push_back(static_cast<char>(v >> 8));
  s.push_back(static_cast<char>(v));
}

void put_chunk(std::string& png, const char* type, const std::string& payload) {
  put_u32(png, static_cast<std::uint32_t>(payload.size()));
  std::string body(type, 4);
  body += payload;
  png += body;
  const auto crc = crc32(0, reinterpret_cast<const Bytef*>(body.data()), static_cast<uInt>(body.size()));
  put_u32(png, static_cast<std::uint32_t>(crc));
}

}  // namespace

std::string encode_png(const Image& rgb) {
  if (rgb.channels != 3) throw std::invalid_argument("encode_png expects 3 channels");
  std::string raw;
  raw.reserve(static_cast<std::size_t>(rgb.height) * (rgb.width * 3 + 1));
  for (int r = 0; r < rgb.height; ++r) {
    raw.push_back(0);  // filter: none
    raw.append(reinterpret_cast<const char*>(&rgb.data[rgb.index(r, 0)]), rgb.width * 3);
  }
  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::string compressed(bound, '\0');
  if (compress2(reinterpret_cast<Bytef*>(compressed.data()), &bound,
                reinterpret_cast<const Bytef*>(raw.data()), static_cast<uLong>(raw.size()), 6) != Z_OK) {
    throw std::runtime_error("zlib compression failed");
  }
  compressed.resize(bound);

  std::string png("\x89PNG\r\n\x1a\n", 8);
  std::string ihdr;
  put_u32(ihdr, static_cast<std::uint32_t>(rgb.width));
  put_u32(ihdr, static_cast<std::uint32_t>(rgb.height));
  ihdr += std::string{'\x08', '\x02', '\x00', '\x00', '\x00'};  // 8-bit RGB
  put_chunk(png, "IHDR", ihdr);
  put_chunk(png, "IDAT", compressed);
  put_chunk(png, "IEND", "");
  return png;
}

std::string base64_encode(const std::string& bytes) {
  using namespace boost::archive::iterators;
  using It = base64_from_binary<transform_width<std::string::const_iterator, 6, 8>>;
  std::string out(It(bytes.begin()), It(bytes.end()));
  out.append((3 - bytes.size() % 3) % 3, '=');
  return out;
}

}  // namespace unienv
