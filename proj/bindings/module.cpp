// Python bindings for the core operations: audio I/O, degradation,
// features, pitch, and the evaluation metrics.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lowfreq/asr_metrics.hpp"
#include "lowfreq/audio.hpp"
#include "lowfreq/error.hpp"
#include "lowfreq/features.hpp"
#include "lowfreq/pitch.hpp"
#include "lowfreq/resample.hpp"
#include "lowfreq/stats.hpp"
#include "lowfreq/vad_metrics.hpp"

namespace py = pybind11;
using namespace lowfreq;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

AudioBuffer to_buffer(const DoubleArray& samples, int rate) {
    if (samples.ndim() != 1) throw py::value_error("samples must be a 1-D array");
    AudioBuffer audio;
    audio.sample_rate = rate;
    audio.samples.assign(samples.data(), samples.data() + samples.size());
    return audio;
}

py::array_t<double> to_array(const std::vector<double>& values) {
    py::array_t<double> out({static_cast<py::ssize_t>(values.size())});
    std::memcpy(out.mutable_data(), values.data(), values.size() * sizeof(double));
    return out;
}

py::array_t<std::uint8_t> to_byte_array(const std::vector<std::uint8_t>& values) {
    py::array_t<std::uint8_t> out({static_cast<py::ssize_t>(values.size())});
    std::memcpy(out.mutable_data(), values.data(), values.size());
    return out;
}

py::array_t<double> to_matrix(const FeatureMatrix& matrix) {
    py::array_t<double> out({static_cast<py::ssize_t>(matrix.n_frames),
                             static_cast<py::ssize_t>(matrix.n_dims)});
    std::memcpy(out.mutable_data(), matrix.data.data(), matrix.data.size() * sizeof(double));
    return out;
}

ScoredFrames to_frames(const DoubleArray& scores, const py::array& labels) {
    ScoredFrames frames;
    frames.scores.assign(scores.data(), scores.data() + scores.size());
    auto labels_cast = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>(labels);
    frames.labels.assign(labels_cast.data(), labels_cast.data() + labels_cast.size());
    return frames;
}

py::dict breakdown_to_dict(const WerBreakdown& b) {
    py::dict d;
    d["wer"] = b.wer;
    d["hits"] = b.hits;
    d["substitutions"] = b.substitutions;
    d["deletions"] = b.deletions;
    d["insertions"] = b.insertions;
    d["ref_tokens"] = b.ref_tokens;
    return d;
}

Alternative parse_alternative(const std::string& name) {
    if (name == "greater") return Alternative::greater;
    if (name == "less") return Alternative::less;
    if (name == "two-sided" || name == "two_sided") return Alternative::two_sided;
    throw py::value_error("alternative must be greater, less or two-sided");
}

}  // namespace

PYBIND11_MODULE(_lowfreq, m) {
    m.doc() = "Sub-Nyquist speech degradation and evaluation toolkit";

    py::register_exception<Error>(m, "LowfreqError", PyExc_RuntimeError);

    m.def(
        "read_wav",
        [](const std::string& path) {
            const AudioBuffer audio = read_wav(path);
            return py::make_tuple(to_array(audio.samples), audio.sample_rate);
        },
        py::arg("path"), "Read a mono WAV file; returns (samples, sample_rate).");

    m.def(
        "write_wav",
        [](const DoubleArray& samples, int rate, const std::string& path,
           const std::string& encoding) {
            WavEncoding enc;
            if (encoding == "float32") {
                enc = WavEncoding::float32;
            } else if (encoding == "pcm16") {
                enc = WavEncoding::pcm16;
            } else {
                throw py::value_error("encoding must be float32 or pcm16");
            }
            write_wav(to_buffer(samples, rate), path, enc);
        },
        py::arg("samples"), py::arg("rate"), py::arg("path"), py::arg("encoding") = "float32",
        "Write a mono WAV file.");

    m.def(
        "degrade",
        [](const DoubleArray& samples, int rate, int low_rate, bool anti_alias,
           int zero_crossings, double rolloff) {
            DegradeSpec spec;
            spec.low_rate = low_rate;
            spec.anti_alias = anti_alias;
            spec.zero_crossings = zero_crossings;
            spec.rolloff = rolloff;
            return to_array(degrade(to_buffer(samples, rate), spec).samples);
        },
        py::arg("samples"), py::arg("rate"), py::arg("low_rate") = 320,
        py::arg("anti_alias") = true, py::arg("zero_crossings") = kDefaultZeroCrossings,
        py::arg("rolloff") = kDefaultRolloff,
        "Degrade through a low sample rate and back; output length equals input length.");

    m.def(
        "resample",
        [](const DoubleArray& samples, int rate, int dst_rate, int zero_crossings,
           double rolloff) {
            return to_array(
                resample_aa(to_buffer(samples, rate), dst_rate, zero_crossings, rolloff).samples);
        },
        py::arg("samples"), py::arg("rate"), py::arg("dst_rate"),
        py::arg("zero_crossings") = kDefaultZeroCrossings, py::arg("rolloff") = kDefaultRolloff,
        "Anti-aliased resampling with a Hann-windowed sinc kernel.");

    m.def(
        "subsample",
        [](const DoubleArray& samples, int rate, int factor) {
            return to_array(subsample(to_buffer(samples, rate), factor).samples);
        },
        py::arg("samples"), py::arg("rate"), py::arg("factor"),
        "Keep every factor-th sample without filtering (aliases deliberately).");

    m.def(
        "upsample",
        [](const DoubleArray& samples, int rate, int dst_rate, int zero_crossings,
           double rolloff) {
            return to_array(
                upsample(to_buffer(samples, rate), dst_rate, zero_crossings, rolloff).samples);
        },
        py::arg("samples"), py::arg("rate"), py::arg("dst_rate"),
        py::arg("zero_crossings") = kDefaultZeroCrossings, py::arg("rolloff") = kDefaultRolloff,
        "Interpolate to a higher rate, preserving the existing band.");

    m.def(
        "stft_magnitude",
        [](const DoubleArray& samples, int rate, double window_ms, double hop_ms, int fft_size) {
            FrameSpec spec;
            spec.window_ms = window_ms;
            spec.hop_ms = hop_ms;
            spec.fft_size = fft_size;
            return to_matrix(stft_magnitude(to_buffer(samples, rate), spec));
        },
        py::arg("samples"), py::arg("rate"), py::arg("window_ms") = 25.0,
        py::arg("hop_ms") = 10.0, py::arg("fft_size") = 0,
        "Hann-windowed magnitude spectrogram in dB, frames by bins.");

    m.def(
        "log_mel",
        [](const DoubleArray& samples, int rate, double window_ms, double hop_ms, int n_mels,
           int fft_size) {
            FrameSpec spec;
            spec.window_ms = window_ms;
            spec.hop_ms = hop_ms;
            spec.fft_size = fft_size;
            MelSpec mel;
            mel.n_mels = n_mels;
            return to_matrix(log_mel(to_buffer(samples, rate), spec, mel));
        },
        py::arg("samples"), py::arg("rate"), py::arg("window_ms") = 25.0,
        py::arg("hop_ms") = 10.0, py::arg("n_mels") = 80, py::arg("fft_size") = 0,
        "Log mel filterbank energies, frames by bands.");

    m.def(
        "yin",
        [](const DoubleArray& samples, int rate, double f_min, double f_max, double hop_ms,
           double threshold) {
            FrameSpec spec;
            spec.hop_ms = hop_ms;
            const PitchTrack track =
                yin_track(to_buffer(samples, rate), f_min, f_max, spec, threshold);
            std::vector<double> times, f0;
            std::vector<std::uint8_t> voiced;
            for (const PitchFrame& f : track.frames) {
                times.push_back(f.time_s);
                f0.push_back(f.voiced ? f.f0_hz : 0.0);
                voiced.push_back(f.voiced ? 1 : 0);
            }
            py::dict d;
            d["times"] = to_array(times);
            d["f0"] = to_array(f0);
            d["voiced"] = to_byte_array(voiced);
            d["mean_f0"] = track.mean_f0 ? py::cast(*track.mean_f0) : py::none();
            return d;
        },
        py::arg("samples"), py::arg("rate"), py::arg("f_min") = 80.0, py::arg("f_max") = 400.0,
        py::arg("hop_ms") = 10.0, py::arg("threshold") = 0.15,
        "YIN pitch track: times, f0 (0 when unvoiced), voiced flags, mean_f0.");

    m.def(
        "wer",
        [](const std::string& reference, const std::string& hypothesis) {
            return breakdown_to_dict(wer_utterance(tokenize(reference), tokenize(hypothesis)));
        },
        py::arg("reference"), py::arg("hypothesis"),
        "Word error rate breakdown for one utterance.");

    m.def(
        "wer_corpus",
        [](const std::vector<std::pair<std::string, std::string>>& pairs) {
            std::vector<std::pair<TokenSeq, TokenSeq>> token_pairs;
            token_pairs.reserve(pairs.size());
            for (const auto& [ref, hyp] : pairs)
                token_pairs.emplace_back(tokenize(ref), tokenize(hyp));
            return breakdown_to_dict(wer_corpus(token_pairs));
        },
        py::arg("pairs"), "Pooled word error rate over (reference, hypothesis) pairs.");

    m.def(
        "roc_curve",
        [](const DoubleArray& scores, const py::array& labels) {
            const RocCurve curve = roc(to_frames(scores, labels));
            std::vector<double> fpr, tpr;
            for (const RocPoint& p : curve.points) {
                fpr.push_back(p.fpr);
                tpr.push_back(p.tpr);
            }
            return py::make_tuple(to_array(fpr), to_array(tpr));
        },
        py::arg("scores"), py::arg("labels"), "ROC curve as (fpr, tpr) arrays.");

    m.def(
        "auc_score",
        [](const DoubleArray& scores, const py::array& labels) {
            return auc(roc(to_frames(scores, labels)));
        },
        py::arg("scores"), py::arg("labels"), "Area under the ROC curve.");

    m.def(
        "mcc_score",
        [](const DoubleArray& scores, const py::array& labels, double threshold) {
            return mcc(confusion(to_frames(scores, labels), threshold));
        },
        py::arg("scores"), py::arg("labels"), py::arg("threshold") = 0.5,
        "Matthews correlation coefficient at an operating threshold.");

    m.def(
        "rasterize_segments",
        [](const std::vector<std::pair<double, double>>& segments, double frame_rate_hz,
           std::size_t n_frames) {
            return to_byte_array(rasterize_segments(segments, frame_rate_hz, n_frames));
        },
        py::arg("segments"), py::arg("frame_rate_hz"), py::arg("n_frames"),
        "Binary frame labels from [start_s, end_s] speech segments.");

    m.def(
        "bootstrap_ci_mean",
        [](const DoubleArray& values, double alpha, int n_resamples, std::uint64_t seed) {
            std::vector<double> v(values.data(), values.data() + values.size());
            const BootstrapCI ci = bootstrap_ci_mean(v, alpha, n_resamples, seed);
            return py::make_tuple(ci.point, ci.low, ci.high);
        },
        py::arg("values"), py::arg("alpha") = 0.05, py::arg("n_resamples") = 1000,
        py::arg("seed") = 0,
        "Percentile bootstrap interval for the mean; returns (point, low, high).");

    m.def(
        "mann_whitney_u",
        [](const DoubleArray& a, const DoubleArray& b, const std::string& alternative) {
            std::vector<double> va(a.data(), a.data() + a.size());
            std::vector<double> vb(b.data(), b.data() + b.size());
            const UTestResult r = mann_whitney_u(va, vb, parse_alternative(alternative));
            return py::make_tuple(r.u, r.p);
        },
        py::arg("a"), py::arg("b"), py::arg("alternative") = "greater",
        "Mann-Whitney U test; returns (U, p).");
}
