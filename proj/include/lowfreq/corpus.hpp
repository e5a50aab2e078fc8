#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lowfreq/asr_metrics.hpp"
#include "lowfreq/audio.hpp"
#include "lowfreq/resample.hpp"
#include "lowfreq/stats.hpp"
#include "lowfreq/vad_metrics.hpp"

namespace lowfreq {

struct ManifestEntry {
    std::string id;
    std::string audio_path;
    std::string transcript;   // empty when absent
    std::string speaker_id;   // empty when absent
    char sex = 'U';           // 'F', 'M' or 'U' (unknown)
    std::optional<double> duration_s;
};

/// Parses a JSON-lines manifest, one entry per line. Throws ParseError
/// (with the line number) and DuplicateId.
std::vector<ManifestEntry> load_manifest(const std::string& path);

void save_manifest(const std::vector<ManifestEntry>& entries, const std::string& path);

enum class Variant { resampled, sub_upsampled, passthrough };

/// Short names used in file names and the CLI: aa / alias / orig.
const char* variant_name(Variant v);

struct ConditionGrid {
    std::vector<int> rates = {16000, 1600, 800, 500, 320};
    std::vector<Variant> variants = {Variant::resampled, Variant::sub_upsampled};
};

struct DegradeOptions {
    int reference_rate = 16000;
    int zero_crossings = kDefaultZeroCrossings;
    double rolloff = kDefaultRolloff;
    WavEncoding encoding = WavEncoding::float32;
    int workers = 1;
};

struct FileError {
    std::string id;
    std::string message;
};

struct ConditionOutput {
    int rate = 0;
    Variant variant = Variant::resampled;
    std::string dir;
    std::string manifest_path;
    std::size_t n_written = 0;
};

struct DegradeRunResult {
    std::vector<ConditionOutput> conditions;
    std::vector<FileError> errors;
};

/// Degrades every manifest entry across the condition grid. Each (rate,
/// variant) pair gets its own directory of WAVs at the original rate,
/// named {id}__{rate}__{variant}.wav, plus a derived manifest. The
/// reference rate appears once as a pass-through condition regardless of
/// the variant set. Per-file failures are collected, never fatal.
DegradeRunResult run_degrade(const std::vector<ManifestEntry>& manifest,
                             const ConditionGrid& grid, const std::string& out_dir,
                             const DegradeOptions& options = {});

struct ReportOptions {
    double alpha = 0.05;
    int n_resamples = 1000;
    std::uint64_t seed = 0;
    bool group_by_sex = true;
    bool group_by_pitch = false;
    double vad_threshold = 0.5;
    std::string condition;  // free-form label copied into the report
};

struct AsrGroupMetric {
    std::size_t n_utterances = 0;
    WerBreakdown pooled;
    BootstrapCI wer_ci;
};

struct UtteranceScore {
    std::string id;
    char sex = 'U';
    WerBreakdown breakdown;
    std::optional<double> mean_f0;
};

struct AsrReport {
    std::map<std::string, AsrGroupMetric> groups;  // "all", "F", "M", pitch bins
    std::vector<UtteranceScore> utterances;        // sorted by id
    std::optional<UTestResult> female_vs_male;     // one-sided, F > M
    std::size_t excluded_empty_refs = 0;
    std::size_t excluded_from_pitch = 0;  // no pitch estimate available
    ReportOptions options;
};

/// Scores hypotheses (id -> text) against manifest transcripts. Groups:
/// "all" always; per sex when requested; pitch bins [80, 160) and
/// [160, 400) Hz when mean-pitch data is supplied. Throws
/// MissingHypotheses when transcribed entries lack hypotheses or
/// hypothesis ids are not in the manifest.
AsrReport report_asr(const std::vector<ManifestEntry>& manifest,
                     const std::map<std::string, std::string>& hypotheses,
                     const std::map<std::string, double>& mean_pitch = {},
                     const ReportOptions& options = {});

struct VadRecording {
    std::string id;
    double frame_rate_hz = 100.0;
    std::vector<double> scores;
    std::vector<std::pair<double, double>> segments;
};

struct VadGroupMetric {
    std::size_t n_recordings = 0;
    ConfusionCounts counts;  // at the operating threshold
    double mcc_value = 0.0;
    double auc_value = 0.0;
    BootstrapCI mcc_ci;
    BootstrapCI auc_ci;
    RocCurve roc_curve;  // pooled frames
};

struct VadReport {
    std::map<std::string, VadGroupMetric> groups;  // "all", "F", "M"
    std::size_t excluded = 0;                      // sex unknown under sex grouping
    std::vector<FileError> errors;
    ReportOptions options;
};

/// Scores frame-level posteriors against rasterized segment labels,
/// pooled per group; CIs resample recordings. Recordings with unknown sex
/// are excluded from the sex groups but stay in "all".
VadReport report_vad(const std::vector<VadRecording>& recordings,
                     const std::vector<ManifestEntry>& manifest = {},
                     const ReportOptions& options = {});

/// JSON-lines loaders for the scoring inputs.
std::map<std::string, std::string> load_hypotheses_jsonl(const std::string& path);
std::vector<VadRecording> load_scores_jsonl(const std::string& path);
void merge_labels_jsonl(const std::string& path, std::vector<VadRecording>& recordings);

/// Pitch summary CSV (id, n_frames, n_voiced, mean_f0_hz) reader/writer;
/// utterances without a voiced frame have an empty mean field.
std::map<std::string, double> load_pitch_csv(const std::string& path);

struct PitchSummaryRow {
    std::string id;
    std::size_t n_frames = 0;
    std::size_t n_voiced = 0;
    std::optional<double> mean_f0;
};
void save_pitch_summary_csv(const std::vector<PitchSummaryRow>& rows, const std::string& path);

/// Report serialization. JSON objects have sorted keys, so equal reports
/// are byte-identical.
void save_asr_report_json(const AsrReport& report, const std::string& path);
void save_asr_utterances_csv(const AsrReport& report, const std::string& path);
void save_pitch_scatter_csv(const AsrReport& report, const std::string& path);
void save_vad_report_json(const VadReport& report, const std::string& path);
void save_roc_csv(const RocCurve& curve, const std::string& path);

/// Runs fn(i) for i in [0, n) on `workers` threads. Results must be
/// written to per-index slots; the call order is unspecified.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace lowfreq
