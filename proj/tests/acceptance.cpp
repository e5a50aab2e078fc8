// Acceptance harness: one pass/fail line per criterion, nonzero exit on
// any failure. Each criterion is self-contained and uses independent
// oracles (naive DFT probes, exhaustive enumeration, closed forms).
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lowfreq/asr_metrics.hpp"
#include "lowfreq/audio.hpp"
#include "lowfreq/corpus.hpp"
#include "lowfreq/error.hpp"
#include "lowfreq/features.hpp"
#include "lowfreq/pitch.hpp"
#include "lowfreq/resample.hpp"
#include "lowfreq/stats.hpp"
#include "lowfreq/vad_metrics.hpp"

#include "oracles.hpp"

namespace {

int g_failures = 0;

void report(int n, const std::string& label, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << label;
    if (!ok && !detail.empty()) std::cout << " — " << detail;
    std::cout << std::endl;
    if (!ok) ++g_failures;
}

void run(int n, const std::string& label, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& ex) {
        ok = false;
        detail = std::string("exception: ") + ex.what();
    }
    report(n, label, ok, detail);
}

double folded_frequency(double f, double rate) {
    return std::abs(f - rate * std::round(f / rate));
}

std::vector<double> degraded_tone(double freq, int low_rate, bool anti_alias,
                                  std::size_t n = 8000) {
    lowfreq::AudioBuffer in;
    in.sample_rate = 16000;
    in.samples = oracles::tone(freq, 16000, n);
    lowfreq::DegradeSpec spec;
    spec.low_rate = low_rate;
    spec.anti_alias = anti_alias;
    return lowfreq::degrade(in, spec).samples;
}

// ---------------------------------------------------------------- 1
bool aliasing_folding_law(std::string& detail) {
    const double bin = 16000.0 / 8000.0;  // one DFT bin of the analyzed signal

    // paper-anchored cases first: 1 kHz folds to 40 Hz at 320 Hz, and a
    // 5 kHz tone lands at 3 kHz when every second sample is kept
    {
        const auto out = degraded_tone(1000.0, 320, false);
        const double peak = oracles::dominant_frequency_hz(out, 16000);
        if (std::abs(peak - 40.0) > bin) {
            detail = "1 kHz at 320 Hz peaked at " + std::to_string(peak) + " Hz, wanted 40";
            return false;
        }
    }
    {
        const auto out = degraded_tone(5000.0, 8000, false);
        const double peak = oracles::dominant_frequency_hz(out, 16000);
        if (std::abs(peak - 3000.0) > bin) {
            detail = "5 kHz at factor 2 peaked at " + std::to_string(peak) + " Hz, wanted 3000";
            return false;
        }
    }

    std::mt19937_64 rng(2026);
    const std::vector<int> rates = {1600, 800, 500, 320};
    std::uniform_int_distribution<std::size_t> pick_rate(0, rates.size() - 1);
    std::uniform_real_distribution<double> pick_freq(50.0, 7000.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int rate = rates[pick_rate(rng)];
        double f = 0.0, folded = 0.0;
        // keep the folded image inside the reconstruction passband and
        // away from DC so "dominant peak" is well defined
        do {
            f = pick_freq(rng);
            folded = folded_frequency(f, rate);
        } while (folded < 20.0 || folded > 0.425 * rate);

        const auto out = degraded_tone(f, rate, false);
        const double peak = oracles::dominant_frequency_hz(out, 16000);
        if (std::abs(peak - folded) > bin) {
            std::ostringstream msg;
            msg << f << " Hz at " << rate << " Hz peaked at " << peak << ", wanted " << folded;
            detail = msg.str();
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- 2
bool anti_alias_suppression(std::string& detail) {
    const auto in = oracles::tone(1000.0, 16000, 8000);
    const auto out = degraded_tone(1000.0, 320, true);
    const double drop = oracles::db(oracles::rms(out) / oracles::rms(in));
    if (!(drop <= -30.0)) {
        detail = "1 kHz tone attenuated by only " + std::to_string(-drop) + " dB";
        return false;
    }

    lowfreq::AudioBuffer noise;
    noise.sample_rate = 16000;
    noise.samples = oracles::white_noise(16000, 4242);
    lowfreq::DegradeSpec spec;
    spec.low_rate = 320;
    spec.anti_alias = true;
    const auto degraded = lowfreq::degrade(noise, spec);

    const lowfreq::FeatureMatrix spec_db = lowfreq::stft_magnitude(degraded);
    const double bin_hz = 16000.0 / static_cast<double>((spec_db.n_dims - 1) * 2);
    double low = 0.0, high = 0.0;
    std::size_t n_low = 0, n_high = 0;
    for (std::size_t t = 0; t < spec_db.n_frames; ++t) {
        for (std::size_t k = 0; k < spec_db.n_dims; ++k) {
            const double f = static_cast<double>(k) * bin_hz;
            const double power = std::pow(10.0, spec_db.at(t, k) / 10.0);
            if (f <= 160.0) {
                low += power;
                ++n_low;
            } else if (f > 200.0) {
                high += power;
                ++n_high;
            }
        }
    }
    const double ratio_db = 10.0 * std::log10((high / n_high) / (low / n_low));
    if (!(ratio_db <= -30.0)) {
        detail = "spectrogram band ratio " + std::to_string(ratio_db) + " dB";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------- 3
bool passband_fidelity(std::string& detail) {
    const auto in = oracles::tone(100.0, 16000, 8000);
    const auto out = degraded_tone(100.0, 320, true);
    const double gain =
        oracles::db(oracles::amplitude_at_hz(out, 16000, 100.0) /
                    oracles::amplitude_at_hz(in, 16000, 100.0));
    if (std::abs(gain) > 1.0) {
        detail = "100 Hz amplitude changed by " + std::to_string(gain) + " dB";
        return false;
    }
    const double peak = oracles::dominant_frequency_hz(out, 16000);
    if (std::abs(peak - 100.0) > 2.0) {
        detail = "100 Hz tone peaked at " + std::to_string(peak) + " Hz";
        return false;
    }

    lowfreq::AudioBuffer buf;
    buf.sample_rate = 16000;
    buf.samples = oracles::white_noise(8000, 17);
    for (bool aa : {true, false}) {
        lowfreq::DegradeSpec spec;
        spec.low_rate = 16000;
        spec.anti_alias = aa;
        const auto same = lowfreq::degrade(buf, spec);
        if (oracles::rms_diff(same.samples, buf.samples) > 1e-6) {
            detail = "pass-through rate altered the signal";
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- 4
bool wer_oracle_equivalence(std::string& detail) {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> pick_len(0, 6);
    std::uniform_int_distribution<int> pick_tok(0, 2);
    const std::vector<std::string> alphabet = {"A", "B", "C"};
    for (int trial = 0; trial < 1000; ++trial) {
        lowfreq::TokenSeq ref(pick_len(rng)), hyp(pick_len(rng));
        for (auto& t : ref) t = alphabet[pick_tok(rng)];
        for (auto& t : hyp) t = alphabet[pick_tok(rng)];
        const auto result = lowfreq::align(ref, hyp);
        const std::size_t oracle = oracles::edit_distance_exhaustive(ref, hyp);
        if (result.cost != oracle) {
            detail = "alignment cost mismatch on trial " + std::to_string(trial);
            return false;
        }
        if (result.hits + result.substitutions + result.deletions != ref.size() ||
            result.hits + result.substitutions + result.insertions != hyp.size()) {
            detail = "breakdown identities violated on trial " + std::to_string(trial);
            return false;
        }
    }

    // 2-token reference vs 5-token unrelated hypothesis: WER 250 %
    const auto ref = lowfreq::tokenize("good morning");
    const auto hyp = lowfreq::tokenize("one two three four five");
    const lowfreq::WerBreakdown utt = lowfreq::wer_utterance(ref, hyp);
    const lowfreq::WerBreakdown pooled = lowfreq::wer_corpus({{ref, hyp}});
    if (utt.wer != 2.5 || pooled.wer != 2.5) {
        detail = "expected WER 2.5, got " + std::to_string(pooled.wer);
        return false;
    }
    if (!(pooled.wer > 1.0)) {
        detail = "WER above 100 % not representable";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------- 5
bool auc_u_identity(std::string& detail) {
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<int> pick_n(1, 40);
    std::uniform_int_distribution<int> level(0, 10);  // coarse grid forces ties
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n_pos = static_cast<std::size_t>(pick_n(rng));
        const std::size_t n_neg = static_cast<std::size_t>(pick_n(rng));
        lowfreq::ScoredFrames frames;
        std::vector<double> pos, neg;
        for (std::size_t i = 0; i < n_pos; ++i) {
            const double s = level(rng) / 10.0;
            frames.scores.push_back(s);
            frames.labels.push_back(1);
            pos.push_back(s);
        }
        for (std::size_t i = 0; i < n_neg; ++i) {
            const double s = level(rng) / 10.0;
            frames.scores.push_back(s);
            frames.labels.push_back(0);
            neg.push_back(s);
        }
        const double area = lowfreq::auc(lowfreq::roc(frames));
        const double u = lowfreq::mann_whitney_u(pos, neg).u;
        if (std::abs(area * static_cast<double>(n_pos) * static_cast<double>(n_neg) - u) > 1e-9) {
            detail = "AUC x pairs diverged from U on trial " + std::to_string(trial);
            return false;
        }
    }

    lowfreq::ConfusionCounts spot;
    spot.tp = 40;
    spot.fp = 10;
    spot.tn = 45;
    spot.fn = 5;
    const double value = lowfreq::mcc(spot);
    if (std::abs(value - 1750.0 / 2487.4686) > 1e-4 || std::abs(value - 0.7035) > 1e-3) {
        detail = "MCC spot check gave " + std::to_string(value);
        return false;
    }

    lowfreq::ConfusionCounts one_class;
    one_class.tp = 30;
    one_class.fn = 12;
    if (lowfreq::mcc(one_class) != 0.0) {
        detail = "degenerate MCC not zero";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------- 6
bool yin_accuracy(std::string& detail) {
    for (int k = 0; k < 20; ++k) {
        const double f = 80.0 + static_cast<double>(k) * (320.0 / 19.0);

        lowfreq::AudioBuffer tone_buf;
        tone_buf.sample_rate = 16000;
        tone_buf.samples = oracles::tone(f, 16000, 8000);
        const lowfreq::PitchTrack tone_track = lowfreq::yin_track(tone_buf);
        if (!tone_track.mean_f0 || std::abs(*tone_track.mean_f0 - f) / f > 0.01) {
            detail = "tone at " + std::to_string(f) + " Hz estimated poorly";
            return false;
        }

        lowfreq::AudioBuffer cplx;
        cplx.sample_rate = 16000;
        cplx.samples = oracles::harmonic_complex(f, 16000, 8000, {1.0, 0.6, 0.3});
        const lowfreq::PitchTrack cplx_track = lowfreq::yin_track(cplx);
        if (!cplx_track.mean_f0 || std::abs(*cplx_track.mean_f0 - f) / f > 0.01) {
            detail = "harmonic complex at " + std::to_string(f) + " Hz estimated poorly";
            return false;
        }
        for (const lowfreq::PitchFrame& frame : cplx_track.frames) {
            if (frame.voiced && std::abs(frame.f0_hz - f) / f > 0.2) {
                detail = "octave error at " + std::to_string(f) + " Hz: frame gave " +
                         std::to_string(frame.f0_hz);
                return false;
            }
        }

        // doubling the gain must not move a single estimate
        lowfreq::AudioBuffer scaled = tone_buf;
        for (double& s : scaled.samples) s *= 2.0;
        const lowfreq::PitchTrack scaled_track = lowfreq::yin_track(scaled);
        if (scaled_track.frames.size() != tone_track.frames.size()) {
            detail = "scaled track has a different frame count";
            return false;
        }
        for (std::size_t i = 0; i < tone_track.frames.size(); ++i) {
            if (tone_track.frames[i].voiced != scaled_track.frames[i].voiced ||
                (tone_track.frames[i].voiced &&
                 tone_track.frames[i].f0_hz != scaled_track.frames[i].f0_hz)) {
                detail = "scale invariance broken at " + std::to_string(f) + " Hz";
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- 7
bool statistics_contract(std::string& detail) {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> uniform(0.0, 1000.0);
    for (std::size_t n1 = 1; n1 <= 8; ++n1) {
        for (std::size_t n2 = 1; n2 <= 8; ++n2) {
            std::vector<double> a(n1), b(n2);
            bool distinct = false;
            while (!distinct) {
                for (auto& v : a) v = uniform(rng);
                for (auto& v : b) v = uniform(rng);
                std::vector<double> all(a);
                all.insert(all.end(), b.begin(), b.end());
                std::sort(all.begin(), all.end());
                distinct = std::adjacent_find(all.begin(), all.end()) == all.end();
            }
            const auto oracle = oracles::enumerate_u_test(a, b);
            const auto greater = lowfreq::mann_whitney_u(a, b, lowfreq::Alternative::greater);
            const auto less = lowfreq::mann_whitney_u(a, b, lowfreq::Alternative::less);
            const auto two = lowfreq::mann_whitney_u(a, b, lowfreq::Alternative::two_sided);
            if (!greater.exact || std::abs(greater.u - oracle.u) > 1e-12 ||
                std::abs(greater.p - oracle.p_greater) > 1e-9 ||
                std::abs(less.p - oracle.p_less) > 1e-9 ||
                std::abs(two.p - oracle.p_two_sided) > 1e-9) {
                detail = "enumeration mismatch at n1=" + std::to_string(n1) +
                         " n2=" + std::to_string(n2);
                return false;
            }
        }
    }

    const std::vector<double> constant(25, 4.5);
    const lowfreq::BootstrapCI flat = lowfreq::bootstrap_ci_mean(constant);
    if (flat.low != flat.point || flat.high != flat.point || flat.point != 4.5) {
        detail = "constant-data interval did not collapse";
        return false;
    }

    std::vector<double> sample(40);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (auto& v : sample) v = normal(rng);
    const lowfreq::BootstrapCI first = lowfreq::bootstrap_ci_mean(sample, 0.05, 1000, 9);
    const lowfreq::BootstrapCI second = lowfreq::bootstrap_ci_mean(sample, 0.05, 1000, 9);
    if (first.low != second.low || first.high != second.high) {
        detail = "same seed gave different intervals";
        return false;
    }

    std::mt19937_64 data_rng(777);
    int covered = 0;
    const int trials = 500;
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<double> values(30);
        for (auto& v : values) v = normal(data_rng);
        const lowfreq::BootstrapCI ci =
            lowfreq::bootstrap_ci_mean(values, 0.05, 1000, static_cast<std::uint64_t>(trial));
        if (ci.low <= 0.0 && 0.0 <= ci.high) ++covered;
    }
    const double coverage = static_cast<double>(covered) / trials;
    if (coverage < 0.90 || coverage > 0.99) {
        detail = "coverage " + std::to_string(coverage) + " outside [0.90, 0.99]";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------- 8
bool feature_contracts(std::string& detail) {
    std::mt19937_64 rng(83);
    std::uniform_int_distribution<int> pick_n(1, 5000);
    std::uniform_int_distribution<int> pick_w(1, 600);
    std::uniform_int_distribution<int> pick_h(1, 300);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = static_cast<std::size_t>(pick_n(rng));
        const std::size_t w = static_cast<std::size_t>(pick_w(rng));
        const std::size_t h = static_cast<std::size_t>(pick_h(rng));
        std::size_t walked = 0;
        for (std::size_t start = 0; start + w <= n; start += h) ++walked;
        if (lowfreq::frame_count(n, w, h) != walked) {
            detail = "frame count mismatch at N=" + std::to_string(n) +
                     " W=" + std::to_string(w) + " H=" + std::to_string(h);
            return false;
        }
    }

    lowfreq::AudioBuffer noise;
    noise.sample_rate = 16000;
    noise.samples = oracles::white_noise(16000, 29);
    const lowfreq::FeatureMatrix mel = lowfreq::log_mel(noise);
    if (mel.n_frames != 98 || mel.n_dims != 80) {
        detail = "log-Mel shape " + std::to_string(mel.n_frames) + "x" + std::to_string(mel.n_dims);
        return false;
    }

    lowfreq::AudioBuffer doubled = noise;
    for (double& s : doubled.samples) s *= 2.0;
    const lowfreq::FeatureMatrix mel2 = lowfreq::log_mel(doubled);
    const double shift = 2.0 * std::log(2.0);
    const double floor_log = -23.025850929940457;
    for (std::size_t t = 0; t < mel.n_frames; ++t) {
        for (std::size_t k = 0; k < mel.n_dims; ++k) {
            if (mel.at(t, k) <= floor_log + 1.0) {
                detail = "band energy hit the floor; the shift law cannot be read";
                return false;
            }
            if (std::abs(mel2.at(t, k) - mel.at(t, k) - shift) > 1e-9) {
                detail = "doubling shifted a band by " +
                         std::to_string(mel2.at(t, k) - mel.at(t, k));
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- 9
#ifndef LOWFREQ_CLI_PATH
#error "LOWFREQ_CLI_PATH must point at the command-line binary"
#endif

int run_cli(const std::string& args, const std::string& log_path) {
    const std::string command =
        std::string("\"") + LOWFREQ_CLI_PATH + "\" " + args + " > \"" + log_path + "\" 2>&1";
    return std::system(command.c_str());
}

struct MiniCorpus {
    std::string manifest;
    std::string hyps;
    std::string scores;
    std::string labels;
};

MiniCorpus build_mini_corpus(const oracles::TempDir& tmp) {
    const std::vector<std::string> transcripts = {
        "the quick brown fox",  "jumped over the dog", "open the window now",
        "close the door please", "speech stays private", "rates drop below nyquist",
        "forty hertz remains",   "pitch survives here",  "words do not survive",
        "ten short utterances"};
    const std::vector<std::string> hyp_texts = {
        "the quick brown fox",   "jumped over a dog",   "open the window",
        "close the door please", "speech stays secret", "rates drop below nyquist",
        "forty hertz remains",   "pitch survives",      "words do not survive today",
        "ten short utterances"};

    MiniCorpus files;
    files.manifest = tmp.file("manifest.jsonl");
    files.hyps = tmp.file("hyps.jsonl");
    files.scores = tmp.file("scores.jsonl");
    files.labels = tmp.file("labels.jsonl");

    std::string manifest, hyps, scores, labels;
    for (int i = 0; i < 10; ++i) {
        const std::string id = "utt" + std::to_string(i);
        const bool female = i < 5;
        const double f0 = female ? 190.0 + 10.0 * i : 100.0 + 8.0 * (i - 5);
        lowfreq::AudioBuffer buf;
        buf.sample_rate = 16000;
        buf.samples = oracles::harmonic_complex(f0, 16000, 8000, {1.0, 0.5, 0.25});
        const std::string wav = tmp.file(id + ".wav");
        lowfreq::write_wav(buf, wav, lowfreq::WavEncoding::float32);

        manifest += "{\"id\":\"" + id + "\",\"audio_path\":\"" + wav + "\",\"transcript\":\"" +
                    transcripts[i] + "\",\"sex\":\"" + (female ? "F" : "M") + "\"}\n";
        hyps += "{\"id\":\"" + id + "\",\"text\":\"" + hyp_texts[i] + "\"}\n";

        // 50 frames at 100 Hz; speech occupies a per-utterance window
        const double start = 0.05 + 0.01 * i;
        const double end = start + 0.25;
        labels += "{\"id\":\"" + id + "\",\"segments\":[[" + std::to_string(start) + "," +
                  std::to_string(end) + "]]}\n";
        scores += "{\"id\":\"" + id + "\",\"frame_rate_hz\":100.0,\"scores\":[";
        for (int t = 0; t < 50; ++t) {
            const double center = (t + 0.5) / 100.0;
            const bool speech = center >= start && center <= end;
            const double jitter = 0.01 * ((t * 7 + i * 3) % 5);
            if (t) scores += ",";
            scores += std::to_string((speech ? 0.8 : 0.1) + jitter);
        }
        scores += "]}\n";
    }
    oracles::write_text_file(files.manifest, manifest);
    oracles::write_text_file(files.hyps, hyps);
    oracles::write_text_file(files.scores, scores);
    oracles::write_text_file(files.labels, labels);
    return files;
}

/// Byte-compares the same relative WAV layout under two degrade output roots.
bool same_wav_bytes(const std::string& dir_a, const std::string& dir_b, std::string& detail) {
    namespace fs = std::filesystem;
    std::size_t n_compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator(dir_a)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".wav") continue;
        const auto rel = fs::relative(entry.path(), dir_a);
        const auto other = fs::path(dir_b) / rel;
        if (!fs::exists(other)) {
            detail = "missing " + other.string();
            return false;
        }
        if (oracles::read_file_bytes(entry.path().string()) !=
            oracles::read_file_bytes(other.string())) {
            detail = rel.string() + " differs between runs";
            return false;
        }
        ++n_compared;
    }
    if (n_compared != 20) {  // 10 utterances x {aa, alias}
        detail = "expected 20 degraded files, compared " + std::to_string(n_compared);
        return false;
    }
    return true;
}

bool end_to_end_determinism(std::string& detail) {
    oracles::TempDir tmp("acceptance-e2e");
    const MiniCorpus corpus = build_mini_corpus(tmp);

    struct Run {
        std::string name;
        int workers;
    };
    const std::vector<Run> runs = {{"run_a", 1}, {"run_b", 1}, {"run_c", 4}};
    for (const Run& r : runs) {
        namespace fs = std::filesystem;
        const std::string root = tmp.file(r.name);
        fs::create_directories(root);
        const std::string log = root + "/cli.log";

        std::ostringstream degrade_cmd;
        degrade_cmd << "--seed 42 --workers " << r.workers << " degrade --manifest \""
                    << corpus.manifest << "\" --rates 320 --variants aa,alias --out \"" << root
                    << "/degraded\"";
        if (run_cli(degrade_cmd.str(), log) != 0) {
            detail = r.name + ": degrade failed, see " + log;
            return false;
        }

        std::ostringstream asr_cmd;
        asr_cmd << "--seed 42 --workers " << r.workers << " score-asr --refs \""
                << corpus.manifest << "\" --hyps \"" << corpus.hyps
                << "\" --group-by sex --resamples 500 --out \"" << root << "/asr.json\"";
        if (run_cli(asr_cmd.str(), log) != 0) {
            detail = r.name + ": score-asr failed, see " + log;
            return false;
        }

        std::ostringstream vad_cmd;
        vad_cmd << "--seed 42 --workers " << r.workers << " score-vad --scores \""
                << corpus.scores << "\" --labels \"" << corpus.labels << "\" --manifest \""
                << corpus.manifest << "\" --resamples 500 --out \"" << root << "/vad.json\"";
        if (run_cli(vad_cmd.str(), log) != 0) {
            detail = r.name + ": score-vad failed, see " + log;
            return false;
        }
    }

    const std::string a = tmp.file("run_a"), b = tmp.file("run_b"), c = tmp.file("run_c");
    if (!same_wav_bytes(a + "/degraded", b + "/degraded", detail)) return false;
    if (!same_wav_bytes(a + "/degraded", c + "/degraded", detail)) return false;
    for (const char* name : {"/asr.json", "/asr_utterances.csv", "/vad.json", "/vad_roc.csv"}) {
        const auto bytes_a = oracles::read_file_bytes(a + name);
        if (bytes_a != oracles::read_file_bytes(b + name)) {
            detail = std::string(name + 1) + " differs between identical runs";
            return false;
        }
        if (bytes_a != oracles::read_file_bytes(c + name)) {
            detail = std::string(name + 1) + " differs across worker counts";
            return false;
        }
    }
    return true;
}

}  // namespace

int main() {
    run(1, "aliasing folds tones to |f - r round(f/r)| within one DFT bin", aliasing_folding_law);
    run(2, "anti-aliased degradation suppresses out-of-band energy by 30 dB",
        anti_alias_suppression);
    run(3, "the passband survives the low-rate round trip", passband_fidelity);
    run(4, "alignment matches exhaustive edit distance; WER above 100 % pools correctly",
        wer_oracle_equivalence);
    run(5, "AUC times pair count equals the rank-sum U; MCC spot checks hold", auc_u_identity);
    run(6, "pitch estimates stay within 1 % with no octave errors and exact scale invariance",
        yin_accuracy);
    run(7, "exact rank tests match enumeration; bootstrap is seeded and covers",
        statistics_contract);
    run(8, "framing arithmetic, log-Mel shape, and the gain shift law hold", feature_contracts);
    run(9, "degrade and scoring runs are byte-identical across seeds and workers",
        end_to_end_determinism);

    if (g_failures != 0) {
        std::cout << g_failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
