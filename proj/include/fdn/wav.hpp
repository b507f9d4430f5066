#pragma once

#include <span>
#include <string>

namespace fdn {

enum class WavFormat { pcm16, float32 };

// Minimal mono RIFF/WAVE writer. Samples are written as-is; scale before
// calling if normalization is wanted.
void write_wav_mono(const std::string& path, std::span<const double> samples,
                    int sample_rate, WavFormat format);

}  // namespace fdn
