#include "lowfreq/features.hpp"

#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <numbers>

#include "lowfreq/error.hpp"
#include "lowfreq/fft.hpp"

namespace lowfreq {

namespace {

constexpr double kSpectrumEpsilon = 1e-10;

double hz_to_mel(double f) { return 2595.0 * std::log10(1.0 + f / 700.0); }
double mel_to_hz(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }

std::vector<double> hann_window(int n) {
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        w[static_cast<std::size_t>(i)] =
            0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / static_cast<double>(n));
    }
    return w;
}

void validate_framing(const AudioBuffer& audio, const FrameSpec& spec, int& window, int& hop,
                      int& fft_size) {
    if (audio.sample_rate <= 0) raise(ErrorKind::InvalidParameter, "invalid sample rate");
    window = spec.window_samples(audio.sample_rate);
    hop = spec.hop_samples(audio.sample_rate);
    if (window <= 0 || hop <= 0 || hop > window) {
        raise(ErrorKind::InvalidParameter, "need 0 < hop_ms <= window_ms");
    }
    fft_size = spec.resolve_fft_size(audio.sample_rate);
    if (!is_power_of_two(static_cast<std::size_t>(fft_size)) || fft_size < window) {
        raise(ErrorKind::InvalidParameter, "fft_size must be a power of two >= window length");
    }
    if (audio.samples.size() < static_cast<std::size_t>(window)) {
        raise(ErrorKind::TooShort, "signal shorter than one analysis window");
    }
}

/// Power spectra of all frames, row-major T x (fft/2+1).
std::vector<double> frame_power_spectra(const AudioBuffer& audio, int window, int hop,
                                        int fft_size, std::size_t& n_frames) {
    n_frames = frame_count(audio.samples.size(), static_cast<std::size_t>(window),
                           static_cast<std::size_t>(hop));
    const std::size_t n_bins = static_cast<std::size_t>(fft_size) / 2 + 1;
    const std::vector<double> win = hann_window(window);

    std::vector<double> power(n_frames * n_bins);
    std::vector<std::complex<double>> buf(static_cast<std::size_t>(fft_size));
    for (std::size_t t = 0; t < n_frames; ++t) {
        const double* x = audio.samples.data() + t * static_cast<std::size_t>(hop);
        for (int i = 0; i < window; ++i) {
            buf[static_cast<std::size_t>(i)] = {x[i] * win[static_cast<std::size_t>(i)], 0.0};
        }
        for (int i = window; i < fft_size; ++i) buf[static_cast<std::size_t>(i)] = {0.0, 0.0};
        fft_pow2(buf);
        for (std::size_t k = 0; k < n_bins; ++k) power[t * n_bins + k] = std::norm(buf[k]);
    }
    return power;
}

}  // namespace

int FrameSpec::window_samples(int rate) const {
    return static_cast<int>(std::lround(window_ms * rate / 1000.0));
}

int FrameSpec::hop_samples(int rate) const {
    return static_cast<int>(std::lround(hop_ms * rate / 1000.0));
}

int FrameSpec::resolve_fft_size(int rate) const {
    if (fft_size > 0) return fft_size;
    return static_cast<int>(next_power_of_two(static_cast<std::size_t>(window_samples(rate))));
}

FeatureMatrix stft_magnitude(const AudioBuffer& audio, const FrameSpec& spec) {
    int window, hop, fft_size;
    validate_framing(audio, spec, window, hop, fft_size);

    FeatureMatrix m;
    std::size_t n_frames = 0;
    std::vector<double> power = frame_power_spectra(audio, window, hop, fft_size, n_frames);
    m.n_frames = n_frames;
    m.n_dims = static_cast<std::size_t>(fft_size) / 2 + 1;
    m.frame_rate = static_cast<double>(audio.sample_rate) / hop;
    m.kind = FeatureKind::spectrogram_db;
    m.data.resize(power.size());
    for (std::size_t i = 0; i < power.size(); ++i) {
        m.data[i] = 20.0 * std::log10(std::sqrt(power[i]) + kSpectrumEpsilon);
    }
    return m;
}

std::vector<std::vector<double>> mel_filterbank(int n_mels, int fft_size, int rate, double f_min,
                                                double f_max) {
    if (n_mels < 1) raise(ErrorKind::InvalidParameter, "n_mels must be >= 1");
    if (f_max <= 0.0) f_max = rate / 2.0;
    if (!(f_min < f_max) || f_max > rate / 2.0 + 1e-9) {
        raise(ErrorKind::InvalidParameter, "need f_min < f_max <= rate/2");
    }
    const std::size_t n_bins = static_cast<std::size_t>(fft_size) / 2 + 1;
    const double mel_lo = hz_to_mel(f_min);
    const double mel_hi = hz_to_mel(f_max);

    // n_mels + 2 equally spaced mel points; triangle k spans points k-1..k+1
    std::vector<double> mel_points(static_cast<std::size_t>(n_mels) + 2);
    for (std::size_t i = 0; i < mel_points.size(); ++i) {
        mel_points[i] = mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) / (n_mels + 1);
    }

    std::vector<std::vector<double>> bank(static_cast<std::size_t>(n_mels),
                                          std::vector<double>(n_bins, 0.0));
    for (std::size_t b = 0; b < n_bins; ++b) {
        const double f = static_cast<double>(b) * rate / fft_size;
        if (f < f_min || f > f_max) continue;
        const double mel = hz_to_mel(f);
        for (int k = 0; k < n_mels; ++k) {
            const double left = mel_points[static_cast<std::size_t>(k)];
            const double center = mel_points[static_cast<std::size_t>(k) + 1];
            const double right = mel_points[static_cast<std::size_t>(k) + 2];
            double w = 0.0;
            if (mel >= left && mel <= center && center > left) {
                w = (mel - left) / (center - left);
            } else if (mel > center && mel <= right && right > center) {
                w = (right - mel) / (right - center);
            }
            if (w > 0.0) bank[static_cast<std::size_t>(k)][b] = w;
        }
    }
    return bank;
}

double mel_band_center_hz(int k, int n_mels, double f_min, double f_max) {
    const double mel_lo = hz_to_mel(f_min);
    const double mel_hi = hz_to_mel(f_max);
    return mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(k + 1) / (n_mels + 1));
}

FeatureMatrix log_mel(const AudioBuffer& audio, const FrameSpec& frame, const MelSpec& mel) {
    int window, hop, fft_size;
    validate_framing(audio, frame, window, hop, fft_size);
    const double f_max = mel.f_max > 0.0 ? mel.f_max : audio.sample_rate / 2.0;
    const auto bank = mel_filterbank(mel.n_mels, fft_size, audio.sample_rate, mel.f_min, f_max);

    std::size_t n_frames = 0;
    const std::vector<double> power = frame_power_spectra(audio, window, hop, fft_size, n_frames);
    const std::size_t n_bins = static_cast<std::size_t>(fft_size) / 2 + 1;

    FeatureMatrix m;
    m.n_frames = n_frames;
    m.n_dims = static_cast<std::size_t>(mel.n_mels);
    m.frame_rate = static_cast<double>(audio.sample_rate) / hop;
    m.kind = FeatureKind::log_mel;
    m.data.resize(n_frames * m.n_dims);
    for (std::size_t t = 0; t < n_frames; ++t) {
        const double* p = power.data() + t * n_bins;
        for (std::size_t k = 0; k < m.n_dims; ++k) {
            double energy = 0.0;
            const auto& row = bank[k];
            for (std::size_t b = 0; b < n_bins; ++b) energy += row[b] * p[b];
            const double value = energy > 0.0 ? std::log(energy) : mel.floor_log;
            m.data[t * m.n_dims + k] = std::max(value, mel.floor_log);
        }
    }
    return m;
}

void save_feature_csv(const FeatureMatrix& matrix, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) raise(ErrorKind::IoFailure, "cannot open " + path + " for writing");
    out.precision(9);
    for (std::size_t t = 0; t < matrix.n_frames; ++t) {
        for (std::size_t d = 0; d < matrix.n_dims; ++d) {
            if (d) out << ',';
            out << matrix.at(t, d);
        }
        out << '\n';
    }
    if (!out) raise(ErrorKind::IoFailure, "short write to " + path);
}

void save_feature_binary(const FeatureMatrix& matrix, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorKind::IoFailure, "cannot open " + path + " for writing");
    out.write("LFB1", 4);
    const std::uint32_t t = static_cast<std::uint32_t>(matrix.n_frames);
    const std::uint32_t d = static_cast<std::uint32_t>(matrix.n_dims);
    out.write(reinterpret_cast<const char*>(&t), 4);
    out.write(reinterpret_cast<const char*>(&d), 4);
    out.write(reinterpret_cast<const char*>(&matrix.frame_rate), 8);
    for (double v : matrix.data) {
        const float f = static_cast<float>(v);
        out.write(reinterpret_cast<const char*>(&f), 4);
    }
    if (!out) raise(ErrorKind::IoFailure, "short write to " + path);
}

FeatureMatrix load_feature_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::IoFailure, "cannot open " + path);
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "LFB1", 4) != 0) {
        raise(ErrorKind::MalformedHeader, path + " is not a feature matrix file");
    }
    std::uint32_t t = 0, d = 0;
    FeatureMatrix m;
    in.read(reinterpret_cast<char*>(&t), 4);
    in.read(reinterpret_cast<char*>(&d), 4);
    in.read(reinterpret_cast<char*>(&m.frame_rate), 8);
    if (!in) raise(ErrorKind::MalformedHeader, "truncated header in " + path);
    m.n_frames = t;
    m.n_dims = d;
    m.data.resize(static_cast<std::size_t>(t) * d);
    for (double& v : m.data) {
        float f;
        if (!in.read(reinterpret_cast<char*>(&f), 4)) {
            raise(ErrorKind::MalformedHeader, "truncated body in " + path);
        }
        v = static_cast<double>(f);
    }
    return m;
}

}  // namespace lowfreq
