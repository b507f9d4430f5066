#include "fdn/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace fdn {

namespace {

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) {
    out.push_back(static_cast<unsigned char>((v >> (8 * k)) & 0xff));
  }
}

void put_tag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

void write_wav_mono(const std::string& path, std::span<const double> samples,
                    int sample_rate, WavFormat format) {
  if (sample_rate < 1) {
    throw std::invalid_argument("write_wav_mono: bad sample rate");
  }
  const bool is_float = (format == WavFormat::float32);
  const std::uint16_t bits = is_float ? 32 : 16;
  const std::uint16_t block_align = bits / 8;  // mono
  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(samples.size()) * block_align;

  std::vector<unsigned char> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, is_float ? 3 : 1);  // IEEE float / PCM
  put_u16(out, 1);                 // channels
  put_u32(out, static_cast<std::uint32_t>(sample_rate));
  put_u32(out, static_cast<std::uint32_t>(sample_rate) * block_align);
  put_u16(out, block_align);
  put_u16(out, bits);
  put_tag(out, "data");
  put_u32(out, data_bytes);

  if (is_float) {
    for (double s : samples) {
      const float f = static_cast<float>(s);
      std::uint32_t raw;
      std::memcpy(&raw, &f, 4);
      put_u32(out, raw);
    }
  } else {
    for (double s : samples) {
      const double clamped = std::clamp(s, -1.0, 1.0);
      const auto q = static_cast<std::int16_t>(
          std::lround(clamped * 32767.0));
      put_u16(out, static_cast<std::uint16_t>(q));
    }
  }

  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
}

}  // namespace fdn
