#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "grfkit/types.hpp"

namespace grfkit::metrics {

struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    std::int64_t tn = 0;
};

struct EvalRecord {
    std::string image_id;
    ConfusionCounts counts;
    double iou = 0.0;
    double dsc = 0.0;
    double fpe = 0.0;
    double fne = 0.0;
};

struct EvalReport {
    std::vector<EvalRecord> records; // sorted by image_id
    std::int64_t count = 0;
    double mean_iou = 0.0;
    double mean_dsc = 0.0;
    double mean_fpe = 0.0;
    double mean_fne = 0.0;
};

/// Pixelwise counts; tp = both foreground, fp = prediction only, fn = ground
/// truth only, tn = neither. Dimension mismatch throws ShapeError.
ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt);

/// IoU = tp/(tp+fp+fn); both masks empty -> 1.0.
double iou(const ConfusionCounts& c);
/// DSC = 2tp/(2tp+fp+fn); both masks empty -> 1.0.
double dsc(const ConfusionCounts& c);
/// FPE = fp/(fp+tn); zero denominator -> 0.0.
double fpe(const ConfusionCounts& c);
/// FNE = fn/(fn+tp); zero denominator -> 0.0.
double fne(const ConfusionCounts& c);

struct EvalPair {
    std::string image_id;
    BinaryMask pred;
    BinaryMask gt;
};

/// Per-image metrics plus unweighted means; records sorted by image_id.
/// Empty input throws DataError.
EvalReport evaluate_dataset(const std::vector<EvalPair>& pairs);

enum class ReportFormat { json, csv };

void write_report(const EvalReport& report, ReportFormat format,
                  const std::filesystem::path& path);

struct MaskPairPaths {
    std::string image_id;
    std::filesystem::path pred;
    std::filesystem::path gt;
};

/// Pair *.png files of both directories by filename; any id present on only
/// one side throws PairingError listing every unmatched id.
std::vector<MaskPairPaths> pair_mask_directories(const std::filesystem::path& pred_dir,
                                                 const std::filesystem::path& gt_dir);

} // namespace grfkit::metrics
