#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lowfreq {

/// Mono waveform with its sampling rate. Samples are dimensionless
/// amplitudes, nominally in [-1, 1], stored as doubles for processing.
struct AudioBuffer {
    std::vector<double> samples;
    int sample_rate = 0;

    std::size_t size() const { return samples.size(); }
    double duration_s() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

enum class WavEncoding { pcm16, float32 };

/// Reads a mono RIFF/WAVE file (PCM16 or IEEE float32) and normalizes to
/// [-1, 1]. PCM16 values are divided by 32768 so -1.0 round-trips exactly.
/// Throws MalformedHeader, UnsupportedEncoding, MultiChannel, IoFailure.
AudioBuffer read_wav(const std::string& path);

/// Reads a RIFF/WAVE file with any channel count and averages the channels.
/// Downmixing never happens implicitly in read_wav; call this explicitly.
AudioBuffer read_wav_downmix(const std::string& path);

/// Writes a mono WAV file. For pcm16 the samples are clamped to
/// [-1, 1 - 2^-15] and rounded to the nearest step; float32 stores the
/// values rounded to single precision (exact when the buffer holds
/// float-representable samples, e.g. anything read from a file).
void write_wav(const AudioBuffer& buffer, const std::string& path,
               WavEncoding encoding = WavEncoding::float32);

}  // namespace lowfreq
