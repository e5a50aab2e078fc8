// lowfreq: batch degradation and evaluation for sub-Nyquist speech privacy.
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lowfreq/corpus.hpp"
#include "lowfreq/error.hpp"
#include "lowfreq/features.hpp"
#include "lowfreq/pitch.hpp"

namespace fs = std::filesystem;
using namespace lowfreq;

namespace {

struct GlobalOptions {
    std::uint64_t seed = 0;
    int workers = 1;
    double frame_ms = 25.0;
    double hop_ms = 10.0;
};

std::string sibling_path(const std::string& report_path, const std::string& suffix) {
    fs::path p(report_path);
    fs::path stem = p.parent_path() / p.stem();
    return stem.string() + suffix;
}

int run_degrade_cmd(const std::string& manifest_path, const std::vector<int>& rates,
                    const std::vector<std::string>& variant_names, const std::string& out_dir,
                    int reference_rate, const std::string& encoding_name, int zero_crossings,
                    double rolloff, const GlobalOptions& globals) {
    ConditionGrid grid;
    grid.rates = rates;
    grid.variants.clear();
    for (const std::string& name : variant_names) {
        if (name == "aa") {
            grid.variants.push_back(Variant::resampled);
        } else if (name == "alias") {
            grid.variants.push_back(Variant::sub_upsampled);
        } else {
            raise(ErrorKind::InvalidParameter, "unknown variant \"" + name + "\" (use aa, alias)");
        }
    }
    DegradeOptions options;
    options.reference_rate = reference_rate;
    options.zero_crossings = zero_crossings;
    options.rolloff = rolloff;
    options.workers = globals.workers;
    if (encoding_name == "float32") {
        options.encoding = WavEncoding::float32;
    } else if (encoding_name == "pcm16") {
        options.encoding = WavEncoding::pcm16;
    } else {
        raise(ErrorKind::InvalidParameter, "unknown encoding \"" + encoding_name + "\"");
    }

    const std::vector<ManifestEntry> manifest = load_manifest(manifest_path);
    const DegradeRunResult result = run_degrade(manifest, grid, out_dir, options);
    for (const ConditionOutput& c : result.conditions) {
        std::cout << c.rate << "/" << variant_name(c.variant) << ": " << c.n_written
                  << " files in " << c.dir << "\n";
    }
    for (const FileError& e : result.errors)
        std::cerr << "error: " << e.id << ": " << e.message << "\n";
    return result.errors.empty() ? 0 : 1;
}

int run_features_cmd(const std::string& manifest_path, const std::string& kind,
                     const std::string& out_dir, const std::string& format, int n_mels,
                     int fft_size, const GlobalOptions& globals) {
    if (kind != "logmel" && kind != "spec")
        raise(ErrorKind::InvalidParameter, "unknown kind \"" + kind + "\" (use logmel, spec)");
    if (format != "csv" && format != "bin")
        raise(ErrorKind::InvalidParameter, "unknown format \"" + format + "\" (use csv, bin)");

    const std::vector<ManifestEntry> manifest = load_manifest(manifest_path);
    fs::create_directories(out_dir);
    FrameSpec frame;
    frame.window_ms = globals.frame_ms;
    frame.hop_ms = globals.hop_ms;
    frame.fft_size = fft_size;
    MelSpec mel;
    mel.n_mels = n_mels;

    std::vector<std::string> errors(manifest.size());
    parallel_for(manifest.size(), globals.workers, [&](std::size_t i) {
        const ManifestEntry& entry = manifest[i];
        try {
            const AudioBuffer audio = read_wav(entry.audio_path);
            const FeatureMatrix matrix =
                kind == "logmel" ? log_mel(audio, frame, mel) : stft_magnitude(audio, frame);
            const std::string ext = format == "csv" ? ".csv" : ".lfb";
            const std::string path =
                (fs::path(out_dir) / (entry.id + "__" + kind + ext)).string();
            if (format == "csv") {
                save_feature_csv(matrix, path);
            } else {
                save_feature_binary(matrix, path);
            }
        } catch (const std::exception& ex) {
            errors[i] = ex.what();
        }
    });

    std::size_t n_ok = 0;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        if (errors[i].empty()) {
            ++n_ok;
        } else {
            std::cerr << "error: " << manifest[i].id << ": " << errors[i] << "\n";
        }
    }
    std::cout << kind << ": " << n_ok << "/" << manifest.size() << " files in " << out_dir << "\n";
    return n_ok == manifest.size() ? 0 : 1;
}

int run_pitch_cmd(const std::string& manifest_path, const std::string& out_csv,
                  const std::string& tracks_dir, double f_min, double f_max, double threshold,
                  const GlobalOptions& globals) {
    const std::vector<ManifestEntry> manifest = load_manifest(manifest_path);
    if (!tracks_dir.empty()) fs::create_directories(tracks_dir);
    FrameSpec frame;
    frame.window_ms = globals.frame_ms;
    frame.hop_ms = globals.hop_ms;

    std::vector<PitchSummaryRow> rows(manifest.size());
    std::vector<std::string> errors(manifest.size());
    parallel_for(manifest.size(), globals.workers, [&](std::size_t i) {
        const ManifestEntry& entry = manifest[i];
        try {
            const AudioBuffer audio = read_wav(entry.audio_path);
            const PitchTrack track = yin_track(audio, f_min, f_max, frame, threshold);
            PitchSummaryRow row;
            row.id = entry.id;
            row.n_frames = track.frames.size();
            for (const PitchFrame& f : track.frames)
                if (f.voiced) ++row.n_voiced;
            row.mean_f0 = track.mean_f0;
            rows[i] = std::move(row);
            if (!tracks_dir.empty())
                save_pitch_csv(track, (fs::path(tracks_dir) / (entry.id + ".csv")).string());
        } catch (const std::exception& ex) {
            errors[i] = ex.what();
        }
    });

    std::vector<PitchSummaryRow> kept;
    std::size_t n_failed = 0;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        if (errors[i].empty()) {
            kept.push_back(rows[i]);
        } else {
            ++n_failed;
            std::cerr << "error: " << manifest[i].id << ": " << errors[i] << "\n";
        }
    }
    std::sort(kept.begin(), kept.end(),
              [](const PitchSummaryRow& a, const PitchSummaryRow& b) { return a.id < b.id; });
    save_pitch_summary_csv(kept, out_csv);
    std::cout << "pitch: " << kept.size() << "/" << manifest.size() << " rows in " << out_csv
              << "\n";
    return n_failed == 0 ? 0 : 1;
}

int run_score_asr_cmd(const std::string& refs_path, const std::string& hyps_path,
                      const std::vector<std::string>& group_by, const std::string& pitch_path,
                      const std::string& out_path, double alpha, int n_resamples,
                      const std::string& condition, const GlobalOptions& globals) {
    ReportOptions options;
    options.alpha = alpha;
    options.n_resamples = n_resamples;
    options.seed = globals.seed;
    options.condition = condition;
    options.group_by_sex = false;
    options.group_by_pitch = false;
    for (const std::string& g : group_by) {
        if (g == "sex") {
            options.group_by_sex = true;
        } else if (g == "pitch") {
            options.group_by_pitch = true;
        } else {
            raise(ErrorKind::InvalidParameter, "unknown group \"" + g + "\" (use sex, pitch)");
        }
    }
    if (options.group_by_pitch && pitch_path.empty())
        raise(ErrorKind::InvalidParameter, "grouping by pitch needs --pitch");

    const std::vector<ManifestEntry> manifest = load_manifest(refs_path);
    const std::map<std::string, std::string> hypotheses = load_hypotheses_jsonl(hyps_path);
    std::map<std::string, double> mean_pitch;
    if (!pitch_path.empty()) mean_pitch = load_pitch_csv(pitch_path);

    const AsrReport report = report_asr(manifest, hypotheses, mean_pitch, options);
    save_asr_report_json(report, out_path);
    save_asr_utterances_csv(report, sibling_path(out_path, "_utterances.csv"));
    if (!mean_pitch.empty())
        save_pitch_scatter_csv(report, sibling_path(out_path, "_pitch_scatter.csv"));

    for (const auto& [name, metric] : report.groups) {
        std::cout << name << ": wer " << metric.pooled.wer << " [" << metric.wer_ci.low << ", "
                  << metric.wer_ci.high << "] over " << metric.n_utterances << " utterances\n";
    }
    if (report.female_vs_male)
        std::cout << "female > male: U " << report.female_vs_male->u << ", p "
                  << report.female_vs_male->p << "\n";
    std::cout << "report: " << out_path << "\n";
    return 0;
}

int run_score_vad_cmd(const std::string& scores_path, const std::string& labels_path,
                      const std::string& manifest_path, const std::string& out_path,
                      double threshold, double alpha, int n_resamples,
                      const std::string& condition, bool no_sex_groups,
                      const GlobalOptions& globals) {
    ReportOptions options;
    options.alpha = alpha;
    options.n_resamples = n_resamples;
    options.seed = globals.seed;
    options.condition = condition;
    options.vad_threshold = threshold;
    options.group_by_sex = !no_sex_groups;

    std::vector<VadRecording> recordings = load_scores_jsonl(scores_path);
    merge_labels_jsonl(labels_path, recordings);
    std::vector<ManifestEntry> manifest;
    if (!manifest_path.empty()) manifest = load_manifest(manifest_path);

    const VadReport report = report_vad(recordings, manifest, options);
    save_vad_report_json(report, out_path);
    auto all_it = report.groups.find("all");
    if (all_it != report.groups.end() && !all_it->second.roc_curve.points.empty())
        save_roc_csv(all_it->second.roc_curve, sibling_path(out_path, "_roc.csv"));

    for (const auto& [name, metric] : report.groups) {
        std::cout << name << ": mcc " << metric.mcc_value << " [" << metric.mcc_ci.low << ", "
                  << metric.mcc_ci.high << "], auc " << metric.auc_value << " ["
                  << metric.auc_ci.low << ", " << metric.auc_ci.high << "] over "
                  << metric.n_recordings << " recordings\n";
    }
    for (const FileError& e : report.errors)
        std::cerr << "error: " << e.id << ": " << e.message << "\n";
    std::cout << "report: " << out_path << "\n";
    return report.errors.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sub-Nyquist speech degradation and evaluation toolkit"};
    app.require_subcommand(1);

    GlobalOptions globals;
    app.add_option("--seed", globals.seed, "Random seed for bootstrap resampling")
        ->capture_default_str();
    app.add_option("--workers", globals.workers, "Worker threads for per-file stages")
        ->capture_default_str();
    app.add_option("--frame-ms", globals.frame_ms, "Analysis window in milliseconds")
        ->capture_default_str();
    app.add_option("--hop-ms", globals.hop_ms, "Analysis hop in milliseconds")
        ->capture_default_str();

    // degrade
    auto* degrade_cmd = app.add_subcommand("degrade", "Degrade a corpus across a rate grid");
    std::string degrade_manifest, degrade_out;
    std::vector<int> degrade_rates = {16000, 1600, 800, 500, 320};
    std::vector<std::string> degrade_variants = {"aa", "alias"};
    int reference_rate = 16000;
    std::string encoding = "float32";
    int zero_crossings = kDefaultZeroCrossings;
    double rolloff = kDefaultRolloff;
    degrade_cmd->add_option("--manifest", degrade_manifest, "Input manifest (JSON lines)")
        ->required();
    degrade_cmd->add_option("--rates", degrade_rates, "Target sample rates in Hz")
        ->delimiter(',')
        ->capture_default_str();
    degrade_cmd
        ->add_option("--variants", degrade_variants,
                     "Degradation variants: aa (anti-aliased) and/or alias (sub-upsampled)")
        ->delimiter(',')
        ->capture_default_str();
    degrade_cmd->add_option("--out", degrade_out, "Output directory")->required();
    degrade_cmd->add_option("--reference-rate", reference_rate, "Expected input rate in Hz")
        ->capture_default_str();
    degrade_cmd->add_option("--encoding", encoding, "Output WAV encoding: float32 or pcm16")
        ->capture_default_str();
    degrade_cmd->add_option("--zero-crossings", zero_crossings, "Sinc lobes per filter side")
        ->capture_default_str();
    degrade_cmd->add_option("--rolloff", rolloff, "Low-pass cutoff as a fraction of Nyquist")
        ->capture_default_str();

    // features
    auto* features_cmd = app.add_subcommand("features", "Extract spectral features per utterance");
    std::string features_manifest, features_out, features_kind = "logmel",
                                                 features_format = "csv";
    int n_mels = 80, fft_size = 0;
    features_cmd->add_option("--manifest", features_manifest, "Input manifest (JSON lines)")
        ->required();
    features_cmd->add_option("--kind", features_kind, "Feature kind: logmel or spec")
        ->capture_default_str();
    features_cmd->add_option("--out", features_out, "Output directory")->required();
    features_cmd->add_option("--format", features_format, "Output format: csv or bin")
        ->capture_default_str();
    features_cmd->add_option("--n-mels", n_mels, "Mel band count")->capture_default_str();
    features_cmd->add_option("--fft-size", fft_size, "FFT size (0 = next power of two)")
        ->capture_default_str();

    // pitch
    auto* pitch_cmd = app.add_subcommand("pitch", "Estimate per-utterance pitch statistics");
    std::string pitch_manifest, pitch_out, pitch_tracks;
    double f_min = 80.0, f_max = 400.0, yin_threshold = 0.15;
    pitch_cmd->add_option("--manifest", pitch_manifest, "Input manifest (JSON lines)")
        ->required();
    pitch_cmd->add_option("--out", pitch_out, "Summary CSV path")->required();
    pitch_cmd->add_option("--tracks", pitch_tracks, "Directory for per-frame pitch CSVs");
    pitch_cmd->add_option("--f-min", f_min, "Minimum fundamental in Hz")->capture_default_str();
    pitch_cmd->add_option("--f-max", f_max, "Maximum fundamental in Hz")->capture_default_str();
    pitch_cmd->add_option("--threshold", yin_threshold, "Voicing threshold on the normalized difference")
        ->capture_default_str();

    // score-asr
    auto* asr_cmd = app.add_subcommand("score-asr", "Score ASR hypotheses against references");
    std::string asr_refs, asr_hyps, asr_pitch, asr_out, asr_condition;
    std::vector<std::string> asr_group_by = {"sex"};
    double asr_alpha = 0.05;
    int asr_resamples = 1000;
    asr_cmd->add_option("--refs", asr_refs, "Reference manifest (JSON lines)")->required();
    asr_cmd->add_option("--hyps", asr_hyps, "Hypotheses (JSON lines with id, text)")->required();
    asr_cmd->add_option("--group-by", asr_group_by, "Groupings: sex and/or pitch")
        ->delimiter(',')
        ->capture_default_str();
    asr_cmd->add_option("--pitch", asr_pitch, "Pitch summary CSV for pitch grouping/scatter");
    asr_cmd->add_option("--out", asr_out, "Report JSON path")->required();
    asr_cmd->add_option("--alpha", asr_alpha, "Bootstrap CI significance level")
        ->capture_default_str();
    asr_cmd->add_option("--resamples", asr_resamples, "Bootstrap resample count")
        ->capture_default_str();
    asr_cmd->add_option("--condition", asr_condition, "Condition label copied into the report");

    // score-vad
    auto* vad_cmd = app.add_subcommand("score-vad", "Score VAD posteriors against segment labels");
    std::string vad_scores, vad_labels, vad_manifest, vad_out, vad_condition;
    double vad_threshold = 0.5, vad_alpha = 0.05;
    int vad_resamples = 1000;
    bool vad_no_sex = false;
    vad_cmd->add_option("--scores", vad_scores, "Posterior JSON lines (id, frame_rate_hz, scores)")
        ->required();
    vad_cmd->add_option("--labels", vad_labels, "Label JSON lines (id, segments)")->required();
    vad_cmd->add_option("--manifest", vad_manifest, "Manifest supplying per-id sex for grouping");
    vad_cmd->add_option("--out", vad_out, "Report JSON path")->required();
    vad_cmd->add_option("--threshold", vad_threshold, "Operating threshold for the confusion matrix")
        ->capture_default_str();
    vad_cmd->add_option("--alpha", vad_alpha, "Bootstrap CI significance level")
        ->capture_default_str();
    vad_cmd->add_option("--resamples", vad_resamples, "Bootstrap resample count")
        ->capture_default_str();
    vad_cmd->add_option("--condition", vad_condition, "Condition label copied into the report");
    vad_cmd->add_flag("--no-sex-groups", vad_no_sex, "Report only the pooled group");

    CLI11_PARSE(app, argc, argv);

    try {
        if (degrade_cmd->parsed())
            return run_degrade_cmd(degrade_manifest, degrade_rates, degrade_variants, degrade_out,
                                   reference_rate, encoding, zero_crossings, rolloff, globals);
        if (features_cmd->parsed())
            return run_features_cmd(features_manifest, features_kind, features_out,
                                    features_format, n_mels, fft_size, globals);
        if (pitch_cmd->parsed())
            return run_pitch_cmd(pitch_manifest, pitch_out, pitch_tracks, f_min, f_max,
                                 yin_threshold, globals);
        if (asr_cmd->parsed())
            return run_score_asr_cmd(asr_refs, asr_hyps, asr_group_by, asr_pitch, asr_out,
                                     asr_alpha, asr_resamples, asr_condition, globals);
        if (vad_cmd->parsed())
            return run_score_vad_cmd(vad_scores, vad_labels, vad_manifest, vad_out, vad_threshold,
                                     vad_alpha, vad_resamples, vad_condition, vad_no_sex, globals);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
