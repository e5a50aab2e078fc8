#include "lowfreq/vad_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lowfreq/error.hpp"

namespace lowfreq {

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& other) {
    tp += other.tp;
    fp += other.fp;
    tn += other.tn;
    fn += other.fn;
    return *this;
}

ConfusionCounts confusion(const ScoredFrames& frames, double threshold) {
    if (frames.scores.size() != frames.labels.size()) {
        raise(ErrorKind::LengthMismatch, "scores and labels differ in length");
    }
    ConfusionCounts c;
    for (std::size_t i = 0; i < frames.scores.size(); ++i) {
        const bool predicted = frames.scores[i] >= threshold;
        const bool actual = frames.labels[i] != 0;
        if (predicted && actual) ++c.tp;
        else if (predicted && !actual) ++c.fp;
        else if (!predicted && actual) ++c.fn;
        else ++c.tn;
    }
    return c;
}

RocCurve roc(const ScoredFrames& frames) {
    if (frames.scores.size() != frames.labels.size()) {
        raise(ErrorKind::LengthMismatch, "scores and labels differ in length");
    }
    std::uint64_t n_pos = 0, n_neg = 0;
    for (std::uint8_t l : frames.labels) (l ? n_pos : n_neg) += 1;
    if (n_pos == 0 || n_neg == 0) {
        raise(ErrorKind::DegenerateLabels, "ROC needs at least one positive and one negative");
    }

    std::vector<std::size_t> order(frames.scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return frames.scores[a] > frames.scores[b];
    });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});
    std::uint64_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        const double score = frames.scores[order[i]];
        // tied scores fall in a single threshold step
        while (i < order.size() && frames.scores[order[i]] == score) {
            (frames.labels[order[i]] ? tp : fp) += 1;
            ++i;
        }
        curve.points.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                                static_cast<double>(tp) / static_cast<double>(n_pos)});
    }
    return curve;
}

double auc(const RocCurve& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const RocPoint& a = curve.points[i - 1];
        const RocPoint& b = curve.points[i];
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
    }
    return area;
}

double mcc(const ConfusionCounts& c) {
    const double tp = static_cast<double>(c.tp);
    const double fp = static_cast<double>(c.fp);
    const double tn = static_cast<double>(c.tn);
    const double fn = static_cast<double>(c.fn);
    const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
    if (denom == 0.0) return 0.0;
    return (tp * tn - fp * fn) / std::sqrt(denom);
}

std::vector<std::uint8_t> rasterize_segments(
    const std::vector<std::pair<double, double>>& segments, double frame_rate_hz,
    std::size_t n_frames) {
    if (!(frame_rate_hz > 0.0)) raise(ErrorKind::InvalidParameter, "frame rate must be positive");
    std::vector<std::uint8_t> labels(n_frames, 0);
    for (const auto& [start, end] : segments) {
        if (end < start) raise(ErrorKind::InvalidParameter, "segment end before start");
        // frames whose center (t + 0.5)/rate lies in [start, end]
        const double lo = start * frame_rate_hz - 0.5;
        const double hi = end * frame_rate_hz - 0.5;
        const std::size_t first = lo <= 0.0 ? 0 : static_cast<std::size_t>(std::ceil(lo));
        if (first >= n_frames || hi < 0.0) continue;
        const std::size_t last =
            std::min(n_frames - 1, static_cast<std::size_t>(std::floor(hi)));
        for (std::size_t t = first; t <= last; ++t) labels[t] = 1;
    }
    return labels;
}

}  // namespace lowfreq
