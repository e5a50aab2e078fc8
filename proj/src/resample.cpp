#include "lowfreq/resample.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "lowfreq/error.hpp"

namespace lowfreq {

namespace {

double sinc(double x) {
    if (x == 0.0) return 1.0;
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

}  // namespace

FirKernel design_kernel(int src_rate, int dst_rate, int zero_crossings, double rolloff) {
    if (src_rate <= 0 || dst_rate <= 0) {
        raise(ErrorKind::InvalidParameter, "sample rates must be positive");
    }
    if (zero_crossings < 1) {
        raise(ErrorKind::InvalidParameter, "zero_crossings must be >= 1");
    }
    if (!(rolloff > 0.0) || rolloff > 1.0) {
        raise(ErrorKind::InvalidParameter, "rolloff must lie in (0, 1]");
    }

    FirKernel kernel;
    kernel.src_rate = src_rate;
    kernel.dst_rate = dst_rate;
    kernel.zero_crossings = zero_crossings;
    kernel.rolloff = rolloff;
    kernel.cutoff_hz = rolloff * 0.5 * static_cast<double>(std::min(src_rate, dst_rate));

    if (src_rate == dst_rate) {
        kernel.up = 1;
        kernel.down = 1;
        kernel.half_width = 0;
        kernel.phases = {FirPhase{0, {1.0}}};
        return kernel;
    }

    const int g = std::gcd(src_rate, dst_rate);
    kernel.up = dst_rate / g;
    kernel.down = src_rate / g;

    // support of the windowed sinc in input samples
    const double lobes_per_sample = 2.0 * kernel.cutoff_hz / static_cast<double>(src_rate);
    kernel.half_width = static_cast<int>(std::ceil(zero_crossings / lobes_per_sample));

    kernel.phases.resize(static_cast<std::size_t>(kernel.up));
    for (int p = 0; p < kernel.up; ++p) {
        FirPhase& phase = kernel.phases[static_cast<std::size_t>(p)];
        const long long num = static_cast<long long>(p) * kernel.down;
        phase.anchor = static_cast<int>(num / kernel.up);
        const double frac = static_cast<double>(num % kernel.up) / kernel.up;

        phase.taps.resize(static_cast<std::size_t>(2 * kernel.half_width + 1));
        double dc = 0.0;
        for (int k = -kernel.half_width; k <= kernel.half_width; ++k) {
            // u counts sinc lobes away from the interpolation point
            const double u = (static_cast<double>(k) - frac) * lobes_per_sample;
            double tap = 0.0;
            if (std::abs(u) <= static_cast<double>(zero_crossings)) {
                const double w = std::cos(std::numbers::pi * u / (2.0 * zero_crossings));
                tap = sinc(u) * w * w;
            }
            phase.taps[static_cast<std::size_t>(k + kernel.half_width)] = tap;
            dc += tap;
        }
        for (double& tap : phase.taps) tap /= dc;
    }
    return kernel;
}

AudioBuffer apply_kernel(const AudioBuffer& audio, const FirKernel& kernel) {
    if (audio.sample_rate != kernel.src_rate) {
        raise(ErrorKind::InvalidParameter, "kernel source rate " + std::to_string(kernel.src_rate) +
                                               " does not match audio rate " +
                                               std::to_string(audio.sample_rate));
    }
    const std::size_t in_len = audio.samples.size();
    const std::size_t out_len =
        (in_len * static_cast<std::size_t>(kernel.up) + static_cast<std::size_t>(kernel.down) - 1) /
        static_cast<std::size_t>(kernel.down);

    AudioBuffer out;
    out.sample_rate = kernel.dst_rate;
    out.samples.resize(out_len);

    const auto n_in = static_cast<long long>(in_len);
    for (std::size_t n = 0; n < out_len; ++n) {
        const long long q = static_cast<long long>(n) / kernel.up;
        const int p = static_cast<int>(static_cast<long long>(n) % kernel.up);
        const FirPhase& phase = kernel.phases[static_cast<std::size_t>(p)];
        const long long center = q * kernel.down + phase.anchor;

        long long lo = center - kernel.half_width;
        long long hi = center + kernel.half_width;
        std::size_t j = 0;
        if (lo < 0) {
            j = static_cast<std::size_t>(-lo);
            lo = 0;
        }
        if (hi >= n_in) hi = n_in - 1;

        double acc = 0.0;
        const double* taps = phase.taps.data() + j;
        const double* x = audio.samples.data() + lo;
        for (long long m = lo; m <= hi; ++m) acc += *x++ * *taps++;
        out.samples[n] = acc;
    }
    return out;
}

AudioBuffer resample_aa(const AudioBuffer& audio, int dst_rate, int zero_crossings,
                        double rolloff) {
    if (dst_rate <= 0) raise(ErrorKind::InvalidParameter, "dst_rate must be positive");
    if (audio.sample_rate == dst_rate) return audio;
    const FirKernel kernel = design_kernel(audio.sample_rate, dst_rate, zero_crossings, rolloff);
    return apply_kernel(audio, kernel);
}

AudioBuffer subsample(const AudioBuffer& audio, int factor) {
    if (factor < 1) raise(ErrorKind::InvalidParameter, "factor must be >= 1");
    if (audio.sample_rate % factor != 0) {
        raise(ErrorKind::NonIntegerFactor, "rate " + std::to_string(audio.sample_rate) +
                                               " is not divisible by " + std::to_string(factor));
    }
    AudioBuffer out;
    out.sample_rate = audio.sample_rate / factor;
    const std::size_t n = audio.samples.size();
    out.samples.reserve((n + static_cast<std::size_t>(factor) - 1) / factor);
    for (std::size_t k = 0; k * static_cast<std::size_t>(factor) < n; ++k) {
        out.samples.push_back(audio.samples[k * static_cast<std::size_t>(factor)]);
    }
    return out;
}

AudioBuffer upsample(const AudioBuffer& audio, int dst_rate, int zero_crossings, double rolloff) {
    if (dst_rate < audio.sample_rate) {
        raise(ErrorKind::InvalidParameter, "upsample requires dst_rate >= source rate");
    }
    return resample_aa(audio, dst_rate, zero_crossings, rolloff);
}

AudioBuffer degrade(const AudioBuffer& audio, const DegradeSpec& spec) {
    if (audio.sample_rate <= 0) raise(ErrorKind::InvalidParameter, "invalid sample rate");
    if (spec.low_rate <= 0) raise(ErrorKind::InvalidParameter, "low_rate must be positive");
    if (spec.low_rate == audio.sample_rate) return audio;

    const int original_rate = audio.sample_rate;
    AudioBuffer low;
    if (spec.anti_alias) {
        low = resample_aa(audio, spec.low_rate, spec.zero_crossings, spec.rolloff);
    } else {
        if (audio.sample_rate % spec.low_rate != 0) {
            raise(ErrorKind::NonIntegerFactor,
                  "naive subsampling needs an integer factor; " + std::to_string(spec.low_rate) +
                      " does not divide " + std::to_string(audio.sample_rate));
        }
        low = subsample(audio, audio.sample_rate / spec.low_rate);
    }
    AudioBuffer out = upsample(low, original_rate, spec.zero_crossings, spec.rolloff);
    out.samples.resize(audio.samples.size(), 0.0);  // trim or zero-pad to the input length
    return out;
}

}  // namespace lowfreq
