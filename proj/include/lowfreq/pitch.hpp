#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lowfreq/audio.hpp"
#include "lowfreq/features.hpp"

namespace lowfreq {

struct PitchFrame {
    std::size_t frame_index = 0;
    double time_s = 0.0;  // center of the analysis frame
    double f0_hz = 0.0;   // meaningful only when voiced
    bool voiced = false;
};

struct PitchTrack {
    std::vector<PitchFrame> frames;
    double threshold = 0.15;
    double f_min = 80.0;
    double f_max = 400.0;
    std::optional<double> mean_f0;
};

/// YIN fundamental-frequency estimation. The analysis frame spans two full
/// periods of f_min (frame.window_ms is ignored, the hop comes from
/// frame.hop_ms). A frame is voiced when the cumulative-mean-normalized
/// difference dips below the threshold within [rate/f_max, rate/f_min];
/// the lag is refined by parabolic interpolation and the estimate clamped
/// to [f_min, f_max].
PitchTrack yin_track(const AudioBuffer& audio, double f_min = 80.0, double f_max = 400.0,
                     const FrameSpec& frame = {}, double threshold = 0.15);

/// Arithmetic mean of voiced frames; empty when none are voiced.
std::optional<double> mean_pitch(const PitchTrack& track);

/// CSV rows: frame_index, time_s, f0_hz (empty when unvoiced).
void save_pitch_csv(const PitchTrack& track, const std::string& path);

}  // namespace lowfreq
