#include "lowfreq/pitch.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "lowfreq/error.hpp"

namespace lowfreq {

namespace {

/// Difference function d(tau) over one integration window, then the
/// cumulative-mean-normalized form d'(tau) with d'(0) = 1.
std::vector<double> cmnd(const double* x, int window, int tau_max) {
    std::vector<double> d(static_cast<std::size_t>(tau_max) + 1, 0.0);
    for (int tau = 1; tau <= tau_max; ++tau) {
        double acc = 0.0;
        for (int j = 0; j < window; ++j) {
            const double delta = x[j] - x[j + tau];
            acc += delta * delta;
        }
        d[static_cast<std::size_t>(tau)] = acc;
    }
    std::vector<double> dn(d.size(), 1.0);
    double running = 0.0;
    for (int tau = 1; tau <= tau_max; ++tau) {
        running += d[static_cast<std::size_t>(tau)];
        dn[static_cast<std::size_t>(tau)] =
            running > 0.0 ? d[static_cast<std::size_t>(tau)] * tau / running : 1.0;
    }
    return dn;
}

/// Sub-sample minimum location via a parabola through (tau-1, tau, tau+1).
double refine_lag(const std::vector<double>& dn, int tau) {
    if (tau <= 1 || tau + 1 >= static_cast<int>(dn.size())) return static_cast<double>(tau);
    const double a = dn[static_cast<std::size_t>(tau) - 1];
    const double b = dn[static_cast<std::size_t>(tau)];
    const double c = dn[static_cast<std::size_t>(tau) + 1];
    const double denom = a - 2.0 * b + c;
    if (denom <= 0.0) return static_cast<double>(tau);
    const double shift = 0.5 * (a - c) / denom;
    return static_cast<double>(tau) + std::clamp(shift, -1.0, 1.0);
}

}  // namespace

PitchTrack yin_track(const AudioBuffer& audio, double f_min, double f_max, const FrameSpec& frame,
                     double threshold) {
    if (!(f_min > 0.0) || f_min >= f_max) {
        raise(ErrorKind::InvalidRange, "need 0 < f_min < f_max");
    }
    const int rate = audio.sample_rate;
    if (rate < 4.0 * f_max) {
        raise(ErrorKind::InvalidRange, "sample rate must be at least 4*f_max");
    }

    const int tau_max = static_cast<int>(std::floor(rate / f_min));
    const int tau_min = std::max(1, static_cast<int>(std::ceil(rate / f_max)));
    const int frame_len = 2 * tau_max;  // two periods of the lowest pitch
    const int hop = frame.hop_samples(rate);
    if (hop <= 0) raise(ErrorKind::InvalidParameter, "hop_ms must be positive");
    if (audio.samples.size() < static_cast<std::size_t>(frame_len)) {
        raise(ErrorKind::TooShort, "signal shorter than one pitch analysis frame");
    }

    PitchTrack track;
    track.threshold = threshold;
    track.f_min = f_min;
    track.f_max = f_max;

    const std::size_t n_frames = frame_count(audio.samples.size(),
                                             static_cast<std::size_t>(frame_len),
                                             static_cast<std::size_t>(hop));
    track.frames.reserve(n_frames);
    for (std::size_t t = 0; t < n_frames; ++t) {
        const double* x = audio.samples.data() + t * static_cast<std::size_t>(hop);
        const std::vector<double> dn = cmnd(x, tau_max, tau_max);

        PitchFrame out;
        out.frame_index = t;
        out.time_s = (static_cast<double>(t) * hop + frame_len / 2.0) / rate;

        int tau = 0;
        for (int candidate = tau_min; candidate <= tau_max; ++candidate) {
            if (dn[static_cast<std::size_t>(candidate)] < threshold) {
                // walk to the bottom of this dip
                while (candidate + 1 <= tau_max &&
                       dn[static_cast<std::size_t>(candidate) + 1] <
                           dn[static_cast<std::size_t>(candidate)]) {
                    ++candidate;
                }
                tau = candidate;
                break;
            }
        }
        if (tau > 0) {
            const double lag = refine_lag(dn, tau);
            out.voiced = true;
            out.f0_hz = std::clamp(rate / lag, f_min, f_max);
        }
        track.frames.push_back(out);
    }
    track.mean_f0 = mean_pitch(track);
    return track;
}

std::optional<double> mean_pitch(const PitchTrack& track) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const PitchFrame& f : track.frames) {
        if (f.voiced) {
            sum += f.f0_hz;
            ++n;
        }
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

void save_pitch_csv(const PitchTrack& track, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) raise(ErrorKind::IoFailure, "cannot open " + path + " for writing");
    out.precision(9);
    out << "frame_index,time_s,f0_hz\n";
    for (const PitchFrame& f : track.frames) {
        out << f.frame_index << ',' << f.time_s << ',';
        if (f.voiced) out << f.f0_hz;
        out << '\n';
    }
    if (!out) raise(ErrorKind::IoFailure, "short write to " + path);
}

}  // namespace lowfreq
