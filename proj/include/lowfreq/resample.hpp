#pragma once

#include <vector>

#include "lowfreq/audio.hpp"

namespace lowfreq {

/// One polyphase branch of a windowed-sinc interpolation filter.
struct FirPhase {
    int anchor = 0;                // input-sample offset of the center tap
    std::vector<double> taps;      // length 2*half_width + 1
};

/// Linear-phase low-pass interpolation kernel in polyphase form.
/// Output sample n maps to input time n*down/up; phase p = n mod up.
struct FirKernel {
    std::vector<FirPhase> phases;  // size == up
    int up = 1;
    int down = 1;
    int src_rate = 0;
    int dst_rate = 0;
    double cutoff_hz = 0.0;
    int zero_crossings = 6;
    double rolloff = 0.99;
    int half_width = 0;
};

inline constexpr int kDefaultZeroCrossings = 6;
inline constexpr double kDefaultRolloff = 0.99;

struct DegradeSpec {
    int low_rate = 320;
    bool anti_alias = true;
    int zero_crossings = kDefaultZeroCrossings;
    double rolloff = kDefaultRolloff;
};

/// Designs a Hann-windowed sinc kernel with cutoff rolloff*min(src,dst)/2 Hz
/// spanning +-zero_crossings sinc lobes. Each polyphase branch is normalized
/// to unit DC gain. src == dst yields the single-tap identity kernel.
FirKernel design_kernel(int src_rate, int dst_rate,
                        int zero_crossings = kDefaultZeroCrossings,
                        double rolloff = kDefaultRolloff);

/// Applies a kernel, producing ceil(len * up/down) output samples at
/// dst_rate. The signal is treated as zero outside its bounds.
AudioBuffer apply_kernel(const AudioBuffer& audio, const FirKernel& kernel);

/// Anti-aliased rate conversion (low-pass filter, then resample).
AudioBuffer resample_aa(const AudioBuffer& audio, int dst_rate,
                        int zero_crossings = kDefaultZeroCrossings,
                        double rolloff = kDefaultRolloff);

/// Keeps every factor-th sample with no filtering, deliberately folding
/// content above the new Nyquist frequency into the retained band.
AudioBuffer subsample(const AudioBuffer& audio, int factor);

/// Interpolates up to dst_rate >= source rate. The low-pass cutoff sits at
/// rolloff * source_rate / 2, so content already in the low-rate signal
/// (aliases included) passes through unchanged.
AudioBuffer upsample(const AudioBuffer& audio, int dst_rate,
                     int zero_crossings = kDefaultZeroCrossings,
                     double rolloff = kDefaultRolloff);

/// Full degradation pipeline: down to spec.low_rate (with or without
/// anti-aliasing), then back up to the original rate. Output has exactly
/// the input's length and rate.
AudioBuffer degrade(const AudioBuffer& audio, const DegradeSpec& spec);

}  // namespace lowfreq
