#include "lowfreq/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "lowfreq/error.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace lowfreq {

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::IoFailure, "cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorKind::IoFailure, "cannot open " + path + " for writing");
    return out;
}

[[noreturn]] void raise_parse(const std::string& path, std::size_t line, const std::string& what) {
    raise(ErrorKind::ParseError, path + ":" + std::to_string(line) + ": " + what);
}

/// Runs fn over every non-blank line with its 1-based line number,
/// converting JSON exceptions into ParseError with location.
void for_each_json_line(const std::string& path,
                        const std::function<void(std::size_t, const json&)>& fn) {
    std::ifstream in = open_input(path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& ex) {
            raise_parse(path, line_no, ex.what());
        }
        if (!j.is_object()) raise_parse(path, line_no, "expected a JSON object");
        try {
            fn(line_no, j);
        } catch (const json::exception& ex) {
            raise_parse(path, line_no, ex.what());
        }
    }
}

char parse_sex(const json& j, const std::string& path, std::size_t line_no) {
    if (!j.contains("sex") || j.at("sex").is_null()) return 'U';
    const std::string s = j.at("sex").get<std::string>();
    if (s == "F" || s == "f" || s == "female") return 'F';
    if (s == "M" || s == "m" || s == "male") return 'M';
    if (s == "U" || s == "u" || s == "unknown") return 'U';
    raise_parse(path, line_no, "sex must be F, M or unknown, got \"" + s + "\"");
}

std::string format_double(double v, int precision = 9) {
    std::ostringstream out;
    out.precision(precision);
    out << v;
    return out.str();
}

json ci_to_json(const BootstrapCI& ci) {
    return json{{"low", ci.low}, {"high", ci.high}};
}

json utest_to_json(const UTestResult& t) {
    const char* alt = t.alternative == Alternative::greater   ? "greater"
                      : t.alternative == Alternative::less    ? "less"
                                                              : "two_sided";
    return json{{"u", t.u},   {"p", t.p},           {"n1", t.n1},
                {"n2", t.n2}, {"alternative", alt}, {"exact", t.exact}};
}

/// Single-item groups cannot be resampled; the interval collapses to the
/// point so CI fields stay present wherever the metric is.
BootstrapCI point_ci(double point, const ReportOptions& options) {
    BootstrapCI ci;
    ci.point = ci.low = ci.high = point;
    ci.alpha = options.alpha;
    ci.n_resamples = options.n_resamples;
    ci.seed = options.seed;
    return ci;
}

}  // namespace

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t n_threads = std::min<std::size_t>(std::max(workers, 1), n);
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(work);
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<ManifestEntry> load_manifest(const std::string& path) {
    std::vector<ManifestEntry> entries;
    std::set<std::string> seen;
    for_each_json_line(path, [&](std::size_t line_no, const json& j) {
        ManifestEntry entry;
        if (!j.contains("id")) raise_parse(path, line_no, "missing \"id\"");
        entry.id = j.at("id").get<std::string>();
        if (entry.id.empty()) raise_parse(path, line_no, "empty \"id\"");
        if (!j.contains("audio_path")) raise_parse(path, line_no, "missing \"audio_path\"");
        entry.audio_path = j.at("audio_path").get<std::string>();
        if (j.contains("transcript") && !j.at("transcript").is_null())
            entry.transcript = j.at("transcript").get<std::string>();
        if (j.contains("speaker_id") && !j.at("speaker_id").is_null())
            entry.speaker_id = j.at("speaker_id").get<std::string>();
        entry.sex = parse_sex(j, path, line_no);
        if (j.contains("duration_s") && !j.at("duration_s").is_null())
            entry.duration_s = j.at("duration_s").get<double>();
        if (!seen.insert(entry.id).second)
            raise(ErrorKind::DuplicateId, path + ":" + std::to_string(line_no) +
                                              ": duplicate id \"" + entry.id + "\"");
        entries.push_back(std::move(entry));
    });
    return entries;
}

void save_manifest(const std::vector<ManifestEntry>& entries, const std::string& path) {
    std::ofstream out = open_output(path);
    for (const ManifestEntry& entry : entries) {
        json j;
        j["id"] = entry.id;
        j["audio_path"] = entry.audio_path;
        if (!entry.transcript.empty()) j["transcript"] = entry.transcript;
        if (!entry.speaker_id.empty()) j["speaker_id"] = entry.speaker_id;
        j["sex"] = std::string(1, entry.sex);
        if (entry.duration_s) j["duration_s"] = *entry.duration_s;
        out << j.dump() << '\n';
    }
    if (!out) raise(ErrorKind::IoFailure, "write failed: " + path);
}

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::resampled: return "aa";
        case Variant::sub_upsampled: return "alias";
        case Variant::passthrough: return "orig";
    }
    return "?";
}

DegradeRunResult run_degrade(const std::vector<ManifestEntry>& manifest, const ConditionGrid& grid,
                             const std::string& out_dir, const DegradeOptions& options) {
    if (options.reference_rate <= 0)
        raise(ErrorKind::InvalidParameter, "reference rate must be positive");
    {
        std::set<std::string> seen;
        for (const ManifestEntry& e : manifest)
            if (!seen.insert(e.id).second)
                raise(ErrorKind::DuplicateId, "duplicate id \"" + e.id + "\"");
    }

    struct Condition {
        int rate;
        Variant variant;
        std::string dir;
    };
    std::vector<Condition> conditions;
    std::set<std::pair<int, int>> seen_conditions;
    for (int rate : grid.rates) {
        if (rate <= 0) raise(ErrorKind::InvalidParameter, "rates must be positive");
        if (rate == options.reference_rate) {
            if (seen_conditions.insert({rate, -1}).second)
                conditions.push_back({rate, Variant::passthrough, {}});
            continue;
        }
        for (Variant v : grid.variants) {
            if (seen_conditions.insert({rate, static_cast<int>(v)}).second)
                conditions.push_back({rate, v, {}});
        }
    }

    fs::create_directories(out_dir);
    for (Condition& c : conditions) {
        c.dir = (fs::path(out_dir) /
                 (std::to_string(c.rate) + std::string("_") + variant_name(c.variant)))
                    .string();
        fs::create_directories(c.dir);
    }

    const std::size_t n_entries = manifest.size();
    const std::size_t n_tasks = conditions.size() * n_entries;
    std::vector<std::string> task_errors(n_tasks);  // empty string = success
    std::vector<ManifestEntry> derived(n_tasks);

    parallel_for(n_tasks, options.workers, [&](std::size_t t) {
        const Condition& cond = conditions[t / n_entries];
        const ManifestEntry& entry = manifest[t % n_entries];
        const std::string file_name = entry.id + "__" + std::to_string(cond.rate) + "__" +
                                      variant_name(cond.variant) + ".wav";
        const std::string out_path = (fs::path(cond.dir) / file_name).string();
        try {
            AudioBuffer audio = read_wav(entry.audio_path);
            if (audio.sample_rate != options.reference_rate)
                raise(ErrorKind::InvalidParameter,
                      "expected " + std::to_string(options.reference_rate) + " Hz, got " +
                          std::to_string(audio.sample_rate));
            AudioBuffer out;
            if (cond.variant == Variant::passthrough) {
                out = std::move(audio);
            } else {
                DegradeSpec spec;
                spec.low_rate = cond.rate;
                spec.anti_alias = cond.variant == Variant::resampled;
                spec.zero_crossings = options.zero_crossings;
                spec.rolloff = options.rolloff;
                out = degrade(audio, spec);
            }
            write_wav(out, out_path, options.encoding);
            ManifestEntry d = entry;
            d.audio_path = out_path;
            derived[t] = std::move(d);
        } catch (const std::exception& ex) {
            task_errors[t] = std::string(variant_name(cond.variant)) + "/" +
                             std::to_string(cond.rate) + ": " + ex.what();
        }
    });

    DegradeRunResult result;
    for (std::size_t c = 0; c < conditions.size(); ++c) {
        ConditionOutput out;
        out.rate = conditions[c].rate;
        out.variant = conditions[c].variant;
        out.dir = conditions[c].dir;
        out.manifest_path = (fs::path(conditions[c].dir) / "manifest.jsonl").string();
        std::vector<ManifestEntry> kept;
        for (std::size_t e = 0; e < n_entries; ++e) {
            const std::size_t t = c * n_entries + e;
            if (task_errors[t].empty()) {
                kept.push_back(derived[t]);
            } else {
                result.errors.push_back({manifest[e].id, task_errors[t]});
            }
        }
        out.n_written = kept.size();
        save_manifest(kept, out.manifest_path);
        result.conditions.push_back(std::move(out));
    }
    return result;
}

AsrReport report_asr(const std::vector<ManifestEntry>& manifest,
                     const std::map<std::string, std::string>& hypotheses,
                     const std::map<std::string, double>& mean_pitch,
                     const ReportOptions& options) {
    AsrReport report;
    report.options = options;

    std::map<std::string, const ManifestEntry*> by_id;
    for (const ManifestEntry& e : manifest) {
        if (!by_id.emplace(e.id, &e).second)
            raise(ErrorKind::DuplicateId, "duplicate id \"" + e.id + "\"");
    }

    // a transcript that tokenizes to nothing cannot be scored either
    std::map<std::string, TokenSeq> ref_tokens;
    for (const auto& [id, entry] : by_id) {
        TokenSeq tokens = tokenize(entry->transcript);
        if (!tokens.empty()) ref_tokens.emplace(id, std::move(tokens));
    }

    std::vector<std::string> missing;
    for (const auto& [id, tokens] : ref_tokens) {
        if (hypotheses.find(id) == hypotheses.end()) missing.push_back(id);
    }
    std::vector<std::string> unknown;
    for (const auto& [id, text] : hypotheses) {
        if (by_id.find(id) == by_id.end()) unknown.push_back(id);
    }
    if (!missing.empty() || !unknown.empty()) {
        std::string msg;
        if (!missing.empty()) {
            msg += "no hypothesis for:";
            for (const std::string& id : missing) msg += " " + id;
        }
        if (!unknown.empty()) {
            if (!msg.empty()) msg += "; ";
            msg += "hypotheses for unknown ids:";
            for (const std::string& id : unknown) msg += " " + id;
        }
        raise(ErrorKind::MissingHypotheses, msg);
    }

    for (const auto& [id, entry] : by_id) {  // sorted by id
        auto tokens_it = ref_tokens.find(id);
        if (tokens_it == ref_tokens.end()) {
            ++report.excluded_empty_refs;
            continue;
        }
        UtteranceScore score;
        score.id = id;
        score.sex = entry->sex;
        score.breakdown = wer_utterance(tokens_it->second, tokenize(hypotheses.at(id)));
        auto pitch_it = mean_pitch.find(id);
        if (pitch_it != mean_pitch.end()) score.mean_f0 = pitch_it->second;
        report.utterances.push_back(std::move(score));
    }
    if (report.utterances.empty()) raise(ErrorKind::NoValidPairs, "no scoreable utterances");

    if (options.group_by_pitch || !mean_pitch.empty()) {
        for (const UtteranceScore& u : report.utterances)
            if (!u.mean_f0) ++report.excluded_from_pitch;
    }

    std::map<std::string, std::vector<const UtteranceScore*>> group_members;
    for (const UtteranceScore& u : report.utterances) {
        group_members["all"].push_back(&u);
        if (options.group_by_sex && (u.sex == 'F' || u.sex == 'M'))
            group_members[std::string(1, u.sex)].push_back(&u);
        if (options.group_by_pitch && u.mean_f0)
            group_members[*u.mean_f0 < 160.0 ? "pitch_80_160" : "pitch_160_400"].push_back(&u);
    }

    for (const auto& [name, members] : group_members) {
        AsrGroupMetric metric;
        metric.n_utterances = members.size();
        std::vector<WerBreakdown> breakdowns;
        breakdowns.reserve(members.size());
        for (const UtteranceScore* u : members) breakdowns.push_back(u->breakdown);
        metric.pooled = pool_breakdowns(breakdowns);
        if (members.size() >= 2) {
            metric.wer_ci = bootstrap_ci(
                members.size(),
                [&breakdowns](const std::vector<std::size_t>& idx) {
                    std::uint64_t errors = 0, ref = 0;
                    for (std::size_t i : idx) {
                        const WerBreakdown& b = breakdowns[i];
                        errors += b.substitutions + b.insertions + b.deletions;
                        ref += b.ref_tokens;
                    }
                    return static_cast<double>(errors) / static_cast<double>(ref);
                },
                options.alpha, options.n_resamples, options.seed);
        } else {
            metric.wer_ci = point_ci(metric.pooled.wer, options);
        }
        report.groups.emplace(name, std::move(metric));
    }

    if (options.group_by_sex) {
        std::vector<double> female, male;
        for (const UtteranceScore& u : report.utterances) {
            if (u.sex == 'F') female.push_back(u.breakdown.wer);
            if (u.sex == 'M') male.push_back(u.breakdown.wer);
        }
        if (!female.empty() && !male.empty())
            report.female_vs_male = mann_whitney_u(female, male, Alternative::greater);
    }
    return report;
}

namespace {

struct ScoredRecording {
    const VadRecording* rec = nullptr;
    ScoredFrames frames;
    ConfusionCounts counts;
    char sex = 'U';
};

ScoredFrames pool_frames(const std::vector<const ScoredRecording*>& members) {
    ScoredFrames pooled;
    std::size_t total = 0;
    for (const ScoredRecording* r : members) total += r->frames.scores.size();
    pooled.scores.reserve(total);
    pooled.labels.reserve(total);
    for (const ScoredRecording* r : members) {
        pooled.scores.insert(pooled.scores.end(), r->frames.scores.begin(),
                             r->frames.scores.end());
        pooled.labels.insert(pooled.labels.end(), r->frames.labels.begin(),
                             r->frames.labels.end());
    }
    return pooled;
}

bool has_both_classes(const std::vector<std::uint8_t>& labels) {
    bool pos = false, neg = false;
    for (std::uint8_t l : labels) (l ? pos : neg) = true;
    return pos && neg;
}

double mcc_from_indices(const std::vector<const ScoredRecording*>& members,
                        const std::vector<std::size_t>& idx) {
    ConfusionCounts sum;
    for (std::size_t i : idx) sum += members[i]->counts;
    return mcc(sum);
}

double auc_from_indices(const std::vector<const ScoredRecording*>& members,
                        const std::vector<std::size_t>& idx) {
    ScoredFrames pooled;
    for (std::size_t i : idx) {
        pooled.scores.insert(pooled.scores.end(), members[i]->frames.scores.begin(),
                             members[i]->frames.scores.end());
        pooled.labels.insert(pooled.labels.end(), members[i]->frames.labels.begin(),
                             members[i]->frames.labels.end());
    }
    // a one-class resample carries no ranking information
    if (!has_both_classes(pooled.labels)) return 0.5;
    return auc(roc(pooled));
}

}  // namespace

VadReport report_vad(const std::vector<VadRecording>& recordings,
                     const std::vector<ManifestEntry>& manifest, const ReportOptions& options) {
    VadReport report;
    report.options = options;

    std::map<std::string, char> sex_by_id;
    for (const ManifestEntry& e : manifest) sex_by_id[e.id] = e.sex;

    std::map<std::string, const VadRecording*> by_id;
    for (const VadRecording& r : recordings) {
        if (!by_id.emplace(r.id, &r).second)
            raise(ErrorKind::DuplicateId, "duplicate id \"" + r.id + "\"");
    }

    std::vector<ScoredRecording> scored;
    for (const auto& [id, rec] : by_id) {  // sorted by id
        try {
            if (rec->scores.empty())
                raise(ErrorKind::LengthMismatch, "no score frames for \"" + id + "\"");
            ScoredRecording s;
            s.rec = rec;
            s.frames.scores = rec->scores;
            s.frames.labels =
                rasterize_segments(rec->segments, rec->frame_rate_hz, rec->scores.size());
            s.counts = confusion(s.frames, options.vad_threshold);
            auto sex_it = sex_by_id.find(id);
            if (sex_it != sex_by_id.end()) s.sex = sex_it->second;
            scored.push_back(std::move(s));
        } catch (const std::exception& ex) {
            report.errors.push_back({id, ex.what()});
        }
    }

    std::map<std::string, std::vector<const ScoredRecording*>> group_members;
    for (const ScoredRecording& s : scored) {
        group_members["all"].push_back(&s);
        if (options.group_by_sex && !manifest.empty() && (s.sex == 'F' || s.sex == 'M'))
            group_members[std::string(1, s.sex)].push_back(&s);
    }
    if (options.group_by_sex && !manifest.empty()) {
        std::size_t in_sex_groups = 0;
        for (const ScoredRecording& s : scored)
            if (s.sex == 'F' || s.sex == 'M') ++in_sex_groups;
        report.excluded = scored.size() - in_sex_groups;
    }

    for (const auto& [name, members] : group_members) {
        VadGroupMetric metric;
        metric.n_recordings = members.size();
        for (const ScoredRecording* r : members) metric.counts += r->counts;
        metric.mcc_value = mcc(metric.counts);

        const ScoredFrames pooled = pool_frames(members);
        if (has_both_classes(pooled.labels)) {
            metric.roc_curve = roc(pooled);
            metric.auc_value = auc(metric.roc_curve);
        } else {
            metric.auc_value = std::numeric_limits<double>::quiet_NaN();
        }

        if (members.size() >= 2) {
            metric.mcc_ci = bootstrap_ci(
                members.size(),
                [&members](const std::vector<std::size_t>& idx) {
                    return mcc_from_indices(members, idx);
                },
                options.alpha, options.n_resamples, options.seed);
            if (std::isnan(metric.auc_value)) {
                metric.auc_ci = point_ci(metric.auc_value, options);
            } else {
                metric.auc_ci = bootstrap_ci(
                    members.size(),
                    [&members](const std::vector<std::size_t>& idx) {
                        return auc_from_indices(members, idx);
                    },
                    options.alpha, options.n_resamples, options.seed);
            }
        } else {
            metric.mcc_ci = point_ci(metric.mcc_value, options);
            metric.auc_ci = point_ci(metric.auc_value, options);
        }
        report.groups.emplace(name, std::move(metric));
    }
    return report;
}

std::map<std::string, std::string> load_hypotheses_jsonl(const std::string& path) {
    std::map<std::string, std::string> hyps;
    for_each_json_line(path, [&](std::size_t line_no, const json& j) {
        if (!j.contains("id")) raise_parse(path, line_no, "missing \"id\"");
        const std::string id = j.at("id").get<std::string>();
        if (!j.contains("text")) raise_parse(path, line_no, "missing \"text\"");
        const std::string text = j.at("text").get<std::string>();
        if (!hyps.emplace(id, text).second)
            raise(ErrorKind::DuplicateId, path + ":" + std::to_string(line_no) +
                                              ": duplicate id \"" + id + "\"");
    });
    return hyps;
}

std::vector<VadRecording> load_scores_jsonl(const std::string& path) {
    std::vector<VadRecording> recordings;
    std::set<std::string> seen;
    for_each_json_line(path, [&](std::size_t line_no, const json& j) {
        VadRecording rec;
        if (!j.contains("id")) raise_parse(path, line_no, "missing \"id\"");
        rec.id = j.at("id").get<std::string>();
        if (j.contains("frame_rate_hz")) rec.frame_rate_hz = j.at("frame_rate_hz").get<double>();
        if (!j.contains("scores") || !j.at("scores").is_array())
            raise_parse(path, line_no, "missing \"scores\" array");
        rec.scores = j.at("scores").get<std::vector<double>>();
        if (!seen.insert(rec.id).second)
            raise(ErrorKind::DuplicateId, path + ":" + std::to_string(line_no) +
                                              ": duplicate id \"" + rec.id + "\"");
        recordings.push_back(std::move(rec));
    });
    return recordings;
}

void merge_labels_jsonl(const std::string& path, std::vector<VadRecording>& recordings) {
    std::map<std::string, VadRecording*> by_id;
    for (VadRecording& r : recordings) by_id[r.id] = &r;
    std::set<std::string> seen;
    for_each_json_line(path, [&](std::size_t line_no, const json& j) {
        if (!j.contains("id")) raise_parse(path, line_no, "missing \"id\"");
        const std::string id = j.at("id").get<std::string>();
        if (!seen.insert(id).second)
            raise(ErrorKind::DuplicateId,
                  path + ":" + std::to_string(line_no) + ": duplicate id \"" + id + "\"");
        if (!j.contains("segments") || !j.at("segments").is_array())
            raise_parse(path, line_no, "missing \"segments\" array");
        std::vector<std::pair<double, double>> segments;
        for (const json& seg : j.at("segments")) {
            if (!seg.is_array() || seg.size() != 2)
                raise_parse(path, line_no, "segments must be [start_s, end_s] pairs");
            segments.emplace_back(seg.at(0).get<double>(), seg.at(1).get<double>());
        }
        auto it = by_id.find(id);
        if (it != by_id.end()) it->second->segments = std::move(segments);
    });
}

std::map<std::string, double> load_pitch_csv(const std::string& path) {
    std::ifstream in = open_input(path);
    std::map<std::string, double> pitch;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("id,", 0) == 0) continue;  // header
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (line.back() == ',') fields.push_back("");
        if (fields.size() != 4)
            raise_parse(path, line_no, "expected 4 fields, got " + std::to_string(fields.size()));
        if (fields[3].empty()) continue;  // no voiced frames, no mean pitch
        try {
            const double f0 = std::stod(fields[3]);
            if (!pitch.emplace(fields[0], f0).second)
                raise(ErrorKind::DuplicateId, path + ":" + std::to_string(line_no) +
                                                  ": duplicate id \"" + fields[0] + "\"");
        } catch (const std::invalid_argument&) {
            raise_parse(path, line_no, "bad mean_f0_hz value \"" + fields[3] + "\"");
        } catch (const std::out_of_range&) {
            raise_parse(path, line_no, "bad mean_f0_hz value \"" + fields[3] + "\"");
        }
    }
    return pitch;
}

void save_pitch_summary_csv(const std::vector<PitchSummaryRow>& rows, const std::string& path) {
    std::ofstream out = open_output(path);
    out << "id,n_frames,n_voiced,mean_f0_hz\n";
    for (const PitchSummaryRow& row : rows) {
        out << row.id << ',' << row.n_frames << ',' << row.n_voiced << ',';
        if (row.mean_f0) out << format_double(*row.mean_f0);
        out << '\n';
    }
    if (!out) raise(ErrorKind::IoFailure, "write failed: " + path);
}

void save_asr_report_json(const AsrReport& report, const std::string& path) {
    json j;
    j["condition"] = report.options.condition;
    j["excluded"] = {{"empty_references", report.excluded_empty_refs},
                     {"missing_pitch", report.excluded_from_pitch}};
    j["n_utterances"] = report.utterances.size();
    json groups = json::object();
    for (const auto& [name, metric] : report.groups) {
        groups[name] = {{"n_utterances", metric.n_utterances},
                        {"hits", metric.pooled.hits},
                        {"substitutions", metric.pooled.substitutions},
                        {"deletions", metric.pooled.deletions},
                        {"insertions", metric.pooled.insertions},
                        {"reference_tokens", metric.pooled.ref_tokens},
                        {"wer", metric.pooled.wer},
                        {"wer_ci", ci_to_json(metric.wer_ci)}};
    }
    j["groups"] = groups;
    if (report.female_vs_male)
        j["tests"] = {{"female_greater_male", utest_to_json(*report.female_vs_male)}};
    j["options"] = {{"alpha", report.options.alpha},
                    {"n_resamples", report.options.n_resamples},
                    {"seed", report.options.seed},
                    {"ci_unit", "utterance"},
                    {"group_by_sex", report.options.group_by_sex},
                    {"group_by_pitch", report.options.group_by_pitch}};
    std::ofstream out = open_output(path);
    out << j.dump(2) << '\n';
    if (!out) raise(ErrorKind::IoFailure, "write failed: " + path);
}

void save_asr_utterances_csv(const AsrReport& report, const std::string& path) {
    std::ofstream out = open_output(path);
    out << "id,sex,hits,substitutions,deletions,insertions,reference_tokens,wer,mean_f0_hz\n";
    for (const UtteranceScore& u : report.utterances) {
        const WerBreakdown& b = u.breakdown;
        out << u.id << ',' << u.sex << ',' << b.hits << ',' << b.substitutions << ','
            << b.deletions << ',' << b.insertions << ',' << b.ref_tokens << ','
            << format_double(b.wer) << ',';
        if (u.mean_f0) out << format_double(*u.mean_f0);
        out << '\n';
    }
    if (!out) raise(ErrorKind::IoFailure, "write failed: " + path);
}

void save_pitch_scatter_csv(const AsrReport& report, const std::string& path) {
    std::ofstream out = open_output(path);
    out << "id,sex,mean_f0_hz,wer\n";
    for (const UtteranceScore& u : report.utterances) {
        if (!u.mean_f0) continue;
        out << u.id << ',' << u.sex << ',' << format_double(*u.mean_f0) << ','
            << format_double(u.breakdown.wer) << '\n';
    }
    if (!out) raise(ErrorKind::IoFailure, "write failed: " + path);
}

void save_vad_report_json(const VadReport& report, const std::string& path) {
    json j;
    j["condition"] = report.options.condition;
    j["excluded"] = report.excluded;
    json errors = json::array();
    for (const FileError& e : report.errors) errors.push_back({{"id", e.id}, {"message", e.message}});
    j["errors"] = errors;
    j["n_recordings"] = report.groups.count("all") ? report.groups.at("all").n_recordings : 0;
    json groups = json::object();
    for (const auto& [name, metric] : report.groups) {
        groups[name] = {{"n_recordings", metric.n_recordings},
                        {"true_positives", metric.counts.tp},
                        {"false_positives", metric.counts.fp},
                        {"true_negatives", metric.counts.tn},
                        {"false_negatives", metric.counts.fn},
                        {"mcc", metric.mcc_value},
                        {"mcc_ci", ci_to_json(metric.mcc_ci)},
                        {"auc", metric.auc_value},  // NaN serializes as null
                        {"auc_ci", ci_to_json(metric.auc_ci)},
                        {"roc_points", metric.roc_curve.points.size()}};
    }
    j["groups"] = groups;
    j["options"] = {{"alpha", report.options.alpha},
                    {"n_resamples", report.options.n_resamples},
                    {"seed", report.options.seed},
                    {"threshold", report.options.vad_threshold},
                    {"ci_unit", "recording"},
                    {"group_by_sex", report.options.group_by_sex}};
    std::ofstream out = open_output(path);
    out << j.dump(2) << '\n';
    if (!out) raise(ErrorKind::IoFailure, "write failed: " + path);
}

void save_roc_csv(const RocCurve& curve, const std::string& path) {
    std::ofstream out = open_output(path);
    out << "fpr,tpr\n";
    for (const RocPoint& p : curve.points)
        out << format_double(p.fpr) << ',' << format_double(p.tpr) << '\n';
    if (!out) raise(ErrorKind::IoFailure, "write failed: " + path);
}

}  // namespace lowfreq
