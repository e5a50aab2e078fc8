#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lowfreq/audio.hpp"

namespace lowfreq {

/// Framing parameters. fft_size == 0 picks the next power of two at or
/// above the window length.
struct FrameSpec {
    double window_ms = 25.0;
    double hop_ms = 10.0;
    int fft_size = 0;

    int window_samples(int rate) const;
    int hop_samples(int rate) const;
    int resolve_fft_size(int rate) const;
};

struct MelSpec {
    int n_mels = 80;
    double f_min = 0.0;
    double f_max = 0.0;  // 0 -> rate/2
    double floor_log = -23.025850929940457;  // ln(1e-10)
};

enum class FeatureKind { spectrogram_db, log_mel };

struct FeatureMatrix {
    std::size_t n_frames = 0;
    std::size_t n_dims = 0;
    double frame_rate = 0.0;  // frames per second
    FeatureKind kind = FeatureKind::spectrogram_db;
    std::vector<double> data;  // row-major, n_frames x n_dims

    double& at(std::size_t t, std::size_t d) { return data[t * n_dims + d]; }
    double at(std::size_t t, std::size_t d) const { return data[t * n_dims + d]; }
};

/// Frame count for N samples with window W and hop H, no centering.
inline std::size_t frame_count(std::size_t n_samples, std::size_t window, std::size_t hop) {
    return n_samples < window ? 0 : 1 + (n_samples - window) / hop;
}

/// Hann-windowed magnitude spectrogram in dB: 20*log10(|X| + 1e-10).
FeatureMatrix stft_magnitude(const AudioBuffer& audio, const FrameSpec& spec = {});

/// Triangular mel filterbank weights (HTK-style mel scale,
/// mel = 2595*log10(1 + f/700)), n_mels rows of fft_size/2 + 1 bins.
std::vector<std::vector<double>> mel_filterbank(int n_mels, int fft_size, int rate,
                                                double f_min, double f_max);

/// Center frequency in Hz of mel band k (0-based).
double mel_band_center_hz(int k, int n_mels, double f_min, double f_max);

/// Natural-log mel filterbank energies, clamped at mel.floor_log.
FeatureMatrix log_mel(const AudioBuffer& audio, const FrameSpec& frame = {},
                      const MelSpec& mel = {});

/// CSV serialization: one frame per row.
void save_feature_csv(const FeatureMatrix& matrix, const std::string& path);

/// Little-endian binary layout: magic "LFB1", uint32 T, uint32 D,
/// float64 frame_rate, then T*D row-major float32 values.
void save_feature_binary(const FeatureMatrix& matrix, const std::string& path);
FeatureMatrix load_feature_binary(const std::string& path);

}  // namespace lowfreq
