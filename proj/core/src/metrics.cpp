#include "grfkit/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "grfkit/errors.hpp"

namespace grfkit::metrics {
namespace {

std::string format_metric(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

EvalRecord make_record(std::string image_id, const ConfusionCounts& c) {
    EvalRecord rec;
    rec.image_id = std::move(image_id);
    rec.counts = c;
    rec.iou = iou(c);
    rec.dsc = dsc(c);
    rec.fpe = fpe(c);
    rec.fne = fne(c);
    return rec;
}

} // namespace

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt) {
    if (pred.width != gt.width || pred.height != gt.height) {
        throw ShapeError("prediction is " + std::to_string(pred.width) + "x"
                         + std::to_string(pred.height) + " but ground truth is "
                         + std::to_string(gt.width) + "x" + std::to_string(gt.height));
    }
    const size_t n = static_cast<size_t>(pred.width) * static_cast<size_t>(pred.height);
    if (pred.bits.size() != n || gt.bits.size() != n) {
        throw ShapeError("mask bit buffer does not match its dimensions");
    }
    ConfusionCounts c;
    for (size_t i = 0; i < n; ++i) {
        const bool p = pred.bits[i] != 0;
        const bool g = gt.bits[i] != 0;
        if (p && g) {
            ++c.tp;
        } else if (p) {
            ++c.fp;
        } else if (g) {
            ++c.fn;
        } else {
            ++c.tn;
        }
    }
    return c;
}

double iou(const ConfusionCounts& c) {
    const std::int64_t denom = c.tp + c.fp + c.fn;
    if (denom == 0) return 1.0;
    return static_cast<double>(c.tp) / static_cast<double>(denom);
}

double dsc(const ConfusionCounts& c) {
    const std::int64_t denom = 2 * c.tp + c.fp + c.fn;
    if (denom == 0) return 1.0;
    return static_cast<double>(2 * c.tp) / static_cast<double>(denom);
}

double fpe(const ConfusionCounts& c) {
    const std::int64_t denom = c.fp + c.tn;
    if (denom == 0) return 0.0;
    return static_cast<double>(c.fp) / static_cast<double>(denom);
}

double fne(const ConfusionCounts& c) {
    const std::int64_t denom = c.fn + c.tp;
    if (denom == 0) return 0.0;
    return static_cast<double>(c.fn) / static_cast<double>(denom);
}

EvalReport evaluate_dataset(const std::vector<EvalPair>& pairs) {
    if (pairs.empty()) throw DataError("cannot evaluate an empty dataset");
    EvalReport report;
    report.records.reserve(pairs.size());
    for (const EvalPair& pair : pairs) {
        report.records.push_back(make_record(pair.image_id, confusion(pair.pred, pair.gt)));
    }
    std::sort(report.records.begin(), report.records.end(),
              [](const EvalRecord& a, const EvalRecord& b) { return a.image_id < b.image_id; });
    report.count = static_cast<std::int64_t>(report.records.size());
    double si = 0.0, sd = 0.0, sp = 0.0, sn = 0.0;
    for (const EvalRecord& rec : report.records) {
        si += rec.iou;
        sd += rec.dsc;
        sp += rec.fpe;
        sn += rec.fne;
    }
    const double n = static_cast<double>(report.count);
    report.mean_iou = si / n;
    report.mean_dsc = sd / n;
    report.mean_fpe = sp / n;
    report.mean_fne = sn / n;
    return report;
}

void write_report(const EvalReport& report, ReportFormat format,
                  const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");

    if (format == ReportFormat::json) {
        nlohmann::ordered_json doc;
        doc["summary"] = {{"count", report.count},
                          {"mean_iou", report.mean_iou},
                          {"mean_dsc", report.mean_dsc},
                          {"mean_fpe", report.mean_fpe},
                          {"mean_fne", report.mean_fne}};
        doc["records"] = nlohmann::ordered_json::array();
        for (const EvalRecord& rec : report.records) {
            doc["records"].push_back({{"image_id", rec.image_id},
                                      {"tp", rec.counts.tp},
                                      {"fp", rec.counts.fp},
                                      {"fn", rec.counts.fn},
                                      {"tn", rec.counts.tn},
                                      {"iou", rec.iou},
                                      {"dsc", rec.dsc},
                                      {"fpe", rec.fpe},
                                      {"fne", rec.fne}});
        }
        out << doc.dump(2) << '\n';
    } else {
        out << "image_id,tp,fp,fn,tn,iou,dsc,fpe,fne\n";
        for (const EvalRecord& rec : report.records) {
            out << rec.image_id << ',' << rec.counts.tp << ',' << rec.counts.fp << ','
                << rec.counts.fn << ',' << rec.counts.tn << ',' << format_metric(rec.iou) << ','
                << format_metric(rec.dsc) << ',' << format_metric(rec.fpe) << ','
                << format_metric(rec.fne) << '\n';
        }
        out << "__mean__,,,,," << format_metric(report.mean_iou) << ','
            << format_metric(report.mean_dsc) << ',' << format_metric(report.mean_fpe) << ','
            << format_metric(report.mean_fne) << '\n';
    }
    out.flush();
    if (!out) throw IoError("failed to write " + path.string());
}

std::vector<MaskPairPaths> pair_mask_directories(const std::filesystem::path& pred_dir,
                                                 const std::filesystem::path& gt_dir) {
    auto collect = [](const std::filesystem::path& dir) {
        if (!std::filesystem::is_directory(dir)) {
            throw IoError("not a directory: " + dir.string());
        }
        std::map<std::string, std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(dir)) {
            if (!entry.is_regular_file() || entry.path().extension() != ".png") continue;
            files.emplace(entry.path().stem().string(), entry.path());
        }
        return files;
    };
    const auto pred = collect(pred_dir);
    const auto gt = collect(gt_dir);

    std::vector<std::string> unmatched;
    for (const auto& [id, p] : pred) {
        if (!gt.count(id)) unmatched.push_back(id + " (prediction only)");
    }
    for (const auto& [id, p] : gt) {
        if (!pred.count(id)) unmatched.push_back(id + " (ground truth only)");
    }
    if (!unmatched.empty()) {
        std::sort(unmatched.begin(), unmatched.end());
        std::string msg = "unmatched mask ids:";
        for (const std::string& id : unmatched) msg += " " + id;
        throw PairingError(msg);
    }
    if (pred.empty()) {
        throw DataError("no mask pairs found under " + pred_dir.string() + " and "
                        + gt_dir.string());
    }

    std::vector<MaskPairPaths> pairs;
    pairs.reserve(pred.size());
    for (const auto& [id, path] : pred) {
        pairs.push_back({id, path, gt.at(id)});
    }
    return pairs;
}

} // namespace grfkit::metrics
