#pragma once

#include <cstdint>
#include <cstddef>
#include <utility>
#include <vector>

namespace lowfreq {

/// Frame-level posteriors in [0, 1] with binary ground-truth labels.
struct ScoredFrames {
    std::vector<double> scores;
    std::vector<std::uint8_t> labels;
};

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + fp + tn + fn; }
    ConfusionCounts& operator+=(const ConfusionCounts& other);
};

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

struct RocCurve {
    std::vector<RocPoint> points;  // anchored at (0,0) and (1,1)
};

/// Prediction rule is score >= threshold. Throws LengthMismatch.
ConfusionCounts confusion(const ScoredFrames& frames, double threshold);

/// Threshold sweep over the distinct score values in descending order,
/// tied scores grouped into one step. Throws DegenerateLabels unless both
/// classes are present.
RocCurve roc(const ScoredFrames& frames);

/// Trapezoidal area under the curve.
double auc(const RocCurve& curve);

/// Matthews correlation coefficient; 0 when any denominator factor is 0.
double mcc(const ConfusionCounts& c);

/// Converts speech segments [start_s, end_s] to n_frames binary labels at
/// frame_rate_hz: a frame is positive when its center time lies inside any
/// segment (endpoints included).
std::vector<std::uint8_t> rasterize_segments(
    const std::vector<std::pair<double, double>>& segments, double frame_rate_hz,
    std::size_t n_frames);

}  // namespace lowfreq
