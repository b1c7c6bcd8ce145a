#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "grfkit/errors.hpp"
#include "grfkit/grf.hpp"
#include "grfkit/imageio.hpp"
#include "grfkit/maskfusion.hpp"
#include "grfkit/metadata.hpp"
#include "grfkit/metrics.hpp"
#include "grfkit/tensorfuse.hpp"
#include "grfkit/version.hpp"
#include "config.hpp"
#include "log.hpp"
#include "pool.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace grfcli {
namespace {

// ---------------------------------------------------------------- helpers --

fs::path require_output(const ToolConfig& cfg) {
    if (!cfg.output_dir) {
        throw grfkit::ConfigError(
            "no output directory given (use --output or output_dir in the config file)");
    }
    fs::path out(*cfg.output_dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec && !fs::is_directory(out)) {
        throw grfkit::IoError("cannot create output directory " + out.string() + ": "
                              + ec.message());
    }
    return out;
}

std::vector<grfkit::meta::MetadataRecord> load_records(const ToolConfig& cfg) {
    if (!cfg.metadata_csv) {
        throw grfkit::ConfigError(
            "no metadata CSV given (use --csv or metadata_csv in the config file)");
    }
    std::ifstream in(*cfg.metadata_csv, std::ios::binary);
    if (!in) throw grfkit::IoError("cannot open metadata CSV " + *cfg.metadata_csv);
    return grfkit::meta::parse_metadata_csv(in);
}

std::optional<grfkit::meta::PostcodeTable> load_postcode_table(const ToolConfig& cfg) {
    if (!cfg.postcode_table) return std::nullopt;
    std::ifstream in(*cfg.postcode_table, std::ios::binary);
    if (!in) throw grfkit::IoError("cannot open postcode table " + *cfg.postcode_table);
    return grfkit::meta::PostcodeTable::load(in);
}

// Decile for one record: the CSV value when present, otherwise a postcode
// lookup. With `required`, an unresolvable record is an error.
std::optional<int> resolve_hdd(const grfkit::meta::MetadataRecord& rec,
                               const std::optional<grfkit::meta::PostcodeTable>& table,
                               bool required) {
    if (rec.hdd) return rec.hdd;
    if (rec.postcode && table) return table->lookup(*rec.postcode);
    if (required) {
        throw grfkit::LookupError("record " + rec.image_id
                                  + ": no hdd value in the CSV and no postcode table to consult");
    }
    return std::nullopt;
}

ordered_json stats_to_json(const grfkit::meta::NormalizationStats& s) {
    return ordered_json{{"min", s.min},
                        {"max", s.max},
                        {"count", s.count},
                        {"skewness", s.skewness},
                        {"excess_kurtosis", s.excess_kurtosis}};
}

void write_json_file(const ordered_json& doc, const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw grfkit::IoError("cannot open " + path.string() + " for writing");
    out << doc.dump(2) << '\n';
    out.flush();
    if (!out) throw grfkit::IoError("failed to write " + path.string());
}

void write_run_config(const std::string& command, const ToolConfig& cfg, const fs::path& out,
                      const std::vector<std::string>& inputs = {},
                      const std::string& pred_dir = "", const std::string& gt_dir = "") {
    ordered_json doc;
    doc["command"] = command;
    doc["toolkit_version"] = grfkit::version();
    auto opt = [](const std::optional<std::string>& v) {
        return v ? ordered_json(*v) : ordered_json(nullptr);
    };
    doc["metadata_csv"] = opt(cfg.metadata_csv);
    doc["image_dir"] = opt(cfg.image_dir);
    doc["grf_dir"] = opt(cfg.grf_dir);
    doc["output_dir"] = opt(cfg.output_dir);
    doc["postcode_table"] = opt(cfg.postcode_table);
    doc["categories"] = cfg.categories;
    doc["i"] = cfg.i;
    doc["width"] = cfg.width;
    doc["height"] = cfg.height;
    doc["mode"] = cfg.mode;
    doc["format"] = cfg.format;
    doc["jobs"] = cfg.jobs;
    doc["force"] = cfg.force;
    doc["bins"] = cfg.bins;
    ordered_json seeds = ordered_json::object();
    for (const auto& [cat, seed] : cfg.seed_overrides) seeds[cat] = seed;
    doc["seed_overrides"] = seeds;
    if (!inputs.empty()) doc["inputs"] = inputs;
    if (!pred_dir.empty()) doc["pred_dir"] = pred_dir;
    if (!gt_dir.empty()) doc["gt_dir"] = gt_dir;
    write_json_file(doc, out / "run_config.json");
}

std::string describe(const std::exception_ptr& p) {
    try {
        std::rethrow_exception(p);
    } catch (const std::exception& e) {
        return e.what();
    } catch (...) {
        return "unknown error";
    }
}

// Exit-code mapping: pairing/shape problems are 3, every other toolkit or
// runtime failure is 2 (usage errors exit 1 from the parser itself).
int classify(const std::exception_ptr& p) {
    try {
        std::rethrow_exception(p);
    } catch (const grfkit::PairingError&) {
        return 3;
    } catch (const grfkit::ShapeError&) {
        return 3;
    } catch (...) {
        return 2;
    }
}

int report_item_errors(const std::vector<ItemError>& errors,
                       const std::vector<std::string>& labels) {
    int rc = 0;
    for (const ItemError& err : errors) {
        std::fprintf(stderr, "error: %s: %s\n", labels[err.index].c_str(),
                     describe(err.error).c_str());
        rc = std::max(rc, classify(err.error));
    }
    return rc;
}

std::vector<grfkit::meta::Category> to_categories(const std::vector<std::string>& names) {
    std::vector<grfkit::meta::Category> cats;
    cats.reserve(names.size());
    for (const std::string& name : names) {
        cats.push_back(grfkit::meta::category_from_string(name));
    }
    return cats;
}

// ---------------------------------------------------------------- commands --

int cmd_stats(const ToolConfig& cfg, bool echo_config) {
    const fs::path out = require_output(cfg);
    if (echo_config) write_run_config("stats", cfg, out);
    const auto records = load_records(cfg);
    const auto table = load_postcode_table(cfg);

    std::vector<double> dob_values;
    dob_values.reserve(records.size());
    std::vector<double> hdd_values;
    std::int64_t female = 0;
    std::int64_t male = 0;
    for (const auto& rec : records) {
        dob_values.push_back(static_cast<double>(grfkit::meta::dob_to_scalar(rec.dob)));
        if (const auto hdd = resolve_hdd(rec, table, false)) {
            hdd_values.push_back(static_cast<double>(*hdd));
        }
        (rec.gender == grfkit::meta::Gender::male ? male : female) += 1;
    }

    int files = 0;
    ordered_json all_stats;
    const auto dob_hist = grfkit::meta::distribution_report(dob_values, cfg.bins);
    all_stats["dob"] = stats_to_json(dob_hist.stats);
    write_json_file(ordered_json{{"category", "dob"},
                                 {"bin_edges", dob_hist.bin_edges},
                                 {"counts", dob_hist.counts},
                                 {"stats", stats_to_json(dob_hist.stats)}},
                    out / "dob.histogram.json");
    ++files;

    all_stats["gender"] = ordered_json{{"female", female}, {"male", male}};

    if (!hdd_values.empty()) {
        const auto hdd_hist = grfkit::meta::distribution_report(hdd_values, cfg.bins);
        all_stats["hdd"] = stats_to_json(hdd_hist.stats);
        write_json_file(ordered_json{{"category", "hdd"},
                                     {"bin_edges", hdd_hist.bin_edges},
                                     {"counts", hdd_hist.counts},
                                     {"stats", stats_to_json(hdd_hist.stats)}},
                        out / "hdd.histogram.json");
        ++files;
    }

    write_json_file(all_stats, out / "normalization_stats.json");
    log_info("stats: " + std::to_string(records.size()) + " records, " + std::to_string(files)
             + " histogram file(s) written to " + out.string());
    return 0;
}

int cmd_gen_grf(const ToolConfig& cfg, bool echo_config) {
    const fs::path out = require_output(cfg);
    if (echo_config) write_run_config("gen-grf", cfg, out);
    auto records = load_records(cfg);
    const auto table = load_postcode_table(cfg);
    const auto categories = to_categories(cfg.categories);

    const bool wants_dob = std::count(categories.begin(), categories.end(),
                                      grfkit::meta::Category::dob) > 0;
    const bool wants_hdd = std::count(categories.begin(), categories.end(),
                                      grfkit::meta::Category::hdd) > 0;

    grfkit::meta::NormalizationStats dob_norm;
    if (wants_dob) {
        std::vector<double> values;
        values.reserve(records.size());
        for (const auto& rec : records) {
            values.push_back(static_cast<double>(grfkit::meta::dob_to_scalar(rec.dob)));
        }
        dob_norm = grfkit::meta::minmax_fit(values);
    }
    grfkit::meta::NormalizationStats hdd_norm;
    if (wants_hdd) {
        std::vector<double> values;
        values.reserve(records.size());
        for (auto& rec : records) {
            rec.hdd = resolve_hdd(rec, table, true);
            values.push_back(static_cast<double>(*rec.hdd));
        }
        hdd_norm = grfkit::meta::minmax_fit(values);
    }

    struct Item {
        const grfkit::meta::MetadataRecord* rec;
        grfkit::meta::Category cat;
    };
    std::vector<Item> items;
    std::vector<std::string> labels;
    items.reserve(records.size() * categories.size());
    for (const auto& rec : records) {
        for (const auto cat : categories) {
            items.push_back({&rec, cat});
            labels.push_back(rec.image_id + "." + grfkit::meta::to_string(cat));
        }
    }

    std::atomic<int> written{0};
    std::atomic<int> skipped{0};
    const auto errors = run_parallel(items.size(), cfg.jobs, [&](size_t idx) {
        const Item& item = items[idx];
        const std::string base = labels[idx] + ".grf";
        const fs::path png_path = out / (base + ".png");
        const fs::path json_path = out / (base + ".json");
        if (!cfg.force && fs::exists(png_path) && fs::exists(json_path)) {
            skipped.fetch_add(1);
            log_debug("skip existing " + png_path.string());
            return;
        }
        const auto& norm = item.cat == grfkit::meta::Category::hdd ? hdd_norm : dob_norm;
        auto params = grfkit::grf::grf_params_for_record(item.cat, *item.rec, norm, cfg.i,
                                                         cfg.width, cfg.height);
        const auto override_it = cfg.seed_overrides.find(grfkit::meta::to_string(item.cat));
        if (override_it != cfg.seed_overrides.end()) {
            params.seed = override_it->second;
            if (item.cat == grfkit::meta::Category::gender) {
                params.seed += static_cast<std::uint64_t>(
                    grfkit::meta::encode_gender(item.rec->gender).value);
            }
        }
        const auto image =
            grfkit::grf::field_to_greyscale(grfkit::grf::synthesize_field(params));
        grfkit::io::write_png_grey(png_path, image);
        write_json_file(ordered_json{{"seed", params.seed},
                                     {"i", params.i},
                                     {"f", params.f},
                                     {"width", params.width},
                                     {"height", params.height},
                                     {"toolkit_version", grfkit::version()}},
                        json_path);
        written.fetch_add(1);
        log_debug("wrote " + png_path.string());
    });

    const int rc = report_item_errors(errors, labels);
    log_info("gen-grf: " + std::to_string(written.load()) + " image(s) written, "
             + std::to_string(skipped.load()) + " skipped, in " + out.string());
    return rc;
}

int cmd_fuse(const ToolConfig& cfg, bool echo_config) {
    const fs::path out = require_output(cfg);
    if (echo_config) write_run_config("fuse", cfg, out);
    if (!cfg.image_dir) {
        throw grfkit::ConfigError(
            "no wound-image directory given (use --image-dir or image_dir in the config file)");
    }
    const fs::path image_dir(*cfg.image_dir);
    const fs::path grf_dir = cfg.grf_dir ? fs::path(*cfg.grf_dir) : out;
    if (!fs::is_directory(image_dir)) {
        throw grfkit::IoError("not a directory: " + image_dir.string());
    }
    if (!fs::is_directory(grf_dir)) {
        throw grfkit::IoError("not a directory: " + grf_dir.string());
    }

    // Wound photographs keyed by image id; prefer .png over .jpg over .jpeg
    // when several encodings of one id exist.
    std::map<std::string, fs::path> rgb_files;
    auto rank = [](const std::string& ext) {
        return ext == ".png" ? 0 : ext == ".jpg" ? 1 : ext == ".jpeg" ? 2 : 3;
    };
    for (const auto& entry : fs::directory_iterator(image_dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (rank(ext) == 3) continue;
        const std::string id = entry.path().stem().string();
        const auto it = rgb_files.find(id);
        if (it == rgb_files.end() || rank(ext) < rank(it->second.extension().string())) {
            rgb_files[id] = entry.path();
        }
    }

    struct Item {
        std::string id;
        std::string category;
        fs::path rgb;
        fs::path grf;
    };
    std::vector<Item> items;
    std::vector<std::string> labels;
    std::set<std::string> grf_ids;
    std::set<std::string> unmatched;
    const std::string tail = ".grf.png";
    std::vector<fs::path> grf_paths;
    for (const auto& entry : fs::directory_iterator(grf_dir)) {
        if (entry.is_regular_file()) grf_paths.push_back(entry.path());
    }
    std::sort(grf_paths.begin(), grf_paths.end());
    for (const fs::path& path : grf_paths) {
        const std::string name = path.filename().string();
        if (name.size() <= tail.size()
            || name.compare(name.size() - tail.size(), tail.size(), tail) != 0) {
            continue;
        }
        const std::string stem = name.substr(0, name.size() - tail.size());
        const auto dot = stem.rfind('.');
        if (dot == std::string::npos || dot == 0) continue;
        const std::string id = stem.substr(0, dot);
        const std::string category = stem.substr(dot + 1);
        if (category != "dob" && category != "gender" && category != "hdd") continue;
        grf_ids.insert(id);
        const auto rgb = rgb_files.find(id);
        if (rgb == rgb_files.end()) {
            unmatched.insert(id + " (GRF without wound image)");
            continue;
        }
        items.push_back({id, category, rgb->second, path});
        labels.push_back(id + "." + category);
    }
    for (const auto& [id, path] : rgb_files) {
        if (!grf_ids.count(id)) unmatched.insert(id + " (wound image without GRF)");
    }
    if (items.empty() && unmatched.empty()) {
        throw grfkit::DataError("nothing to fuse: no GRF images under " + grf_dir.string());
    }

    std::atomic<int> written{0};
    std::atomic<int> skipped{0};
    const auto errors = run_parallel(items.size(), cfg.jobs, [&](size_t idx) {
        const Item& item = items[idx];
        const fs::path fused_path = out / (item.id + "." + item.category + ".fused.png");
        const fs::path raw_path = out / (item.id + "." + item.category + ".grf4");
        if (!cfg.force && fs::exists(fused_path) && fs::exists(raw_path)) {
            skipped.fetch_add(1);
            log_debug("skip existing " + fused_path.string());
            return;
        }
        const auto rgb = grfkit::io::read_image_rgb(item.rgb);
        const auto grf = grfkit::io::read_png_grey(item.grf);
        const auto tensor = grfkit::fuse::merge_rgb_grf(rgb, grf);
        grfkit::fuse::write_fused_png(tensor, fused_path);
        grfkit::fuse::export_raw_tensor(tensor, raw_path);
        written.fetch_add(1);
        log_debug("wrote " + fused_path.string());
    });

    int rc = report_item_errors(errors, labels);
    if (!unmatched.empty()) {
        std::string msg = "unmatched image ids:";
        for (const std::string& id : unmatched) msg += " " + id;
        std::fprintf(stderr, "error: %s\n", msg.c_str());
        rc = 3;
    }
    log_info("fuse: " + std::to_string(written.load()) + " pair(s) fused, "
             + std::to_string(skipped.load()) + " skipped, in " + out.string());
    return rc;
}

int cmd_merge_masks(const ToolConfig& cfg, const std::vector<std::string>& inputs) {
    const fs::path out = require_output(cfg);
    write_run_config("merge-masks", cfg, out, inputs);
    const auto mode = grfkit::mask::merge_mode_from_string(cfg.mode);

    std::vector<std::set<std::string>> file_sets(inputs.size());
    for (size_t d = 0; d < inputs.size(); ++d) {
        if (!fs::is_directory(inputs[d])) {
            throw grfkit::IoError("not a directory: " + inputs[d]);
        }
        for (const auto& entry : fs::directory_iterator(inputs[d])) {
            if (entry.is_regular_file() && entry.path().extension() == ".png") {
                file_sets[d].insert(entry.path().filename().string());
            }
        }
    }
    std::set<std::string> all_names;
    for (const auto& s : file_sets) all_names.insert(s.begin(), s.end());
    std::vector<std::string> mismatches;
    for (size_t d = 0; d < inputs.size(); ++d) {
        for (const std::string& name : all_names) {
            if (!file_sets[d].count(name)) {
                mismatches.push_back(inputs[d] + " is missing " + name);
            }
        }
    }
    if (!mismatches.empty()) {
        std::string msg = "mask directories disagree:";
        for (const std::string& m : mismatches) msg += "\n  " + m;
        throw grfkit::PairingError(msg);
    }
    if (all_names.empty()) {
        throw grfkit::DataError("no mask PNGs found in the input directories");
    }

    const std::vector<std::string> names(all_names.begin(), all_names.end());
    std::atomic<int> written{0};
    std::atomic<int> skipped{0};
    const auto errors = run_parallel(names.size(), cfg.jobs, [&](size_t idx) {
        const std::string& name = names[idx];
        const fs::path out_path = out / name;
        if (!cfg.force && fs::exists(out_path)) {
            skipped.fetch_add(1);
            return;
        }
        std::vector<grfkit::BinaryMask> masks;
        masks.reserve(inputs.size());
        for (const std::string& dir : inputs) {
            masks.push_back(grfkit::io::read_mask_png(fs::path(dir) / name));
        }
        grfkit::io::write_mask_png(out_path, grfkit::mask::average_merge(masks, mode));
        written.fetch_add(1);
        log_debug("wrote " + out_path.string());
    });

    const int rc = report_item_errors(errors, names);
    log_info("merge-masks: " + std::to_string(written.load()) + " mask(s) written, "
             + std::to_string(skipped.load()) + " skipped, in " + out.string());
    return rc;
}

int cmd_eval(const ToolConfig& cfg, const std::string& pred_dir, const std::string& gt_dir) {
    const fs::path out = require_output(cfg);
    write_run_config("eval", cfg, out, {}, pred_dir, gt_dir);
    const auto paths = grfkit::metrics::pair_mask_directories(pred_dir, gt_dir);

    std::vector<grfkit::metrics::EvalPair> pairs(paths.size());
    std::vector<std::string> labels;
    labels.reserve(paths.size());
    for (const auto& p : paths) labels.push_back(p.image_id);
    const auto errors = run_parallel(paths.size(), cfg.jobs, [&](size_t idx) {
        pairs[idx] = {paths[idx].image_id, grfkit::io::read_mask_png(paths[idx].pred),
                      grfkit::io::read_mask_png(paths[idx].gt)};
    });
    if (!errors.empty()) return report_item_errors(errors, labels);

    const auto report = grfkit::metrics::evaluate_dataset(pairs);
    const auto format = cfg.format == "csv" ? grfkit::metrics::ReportFormat::csv
                                            : grfkit::metrics::ReportFormat::json;
    const fs::path report_path = out / ("eval_report." + cfg.format);
    grfkit::metrics::write_report(report, format, report_path);

    std::printf("count=%" PRId64 " mean_iou=%.10g mean_dsc=%.10g mean_fpe=%.10g mean_fne=%.10g\n",
                report.count, report.mean_iou, report.mean_dsc, report.mean_fpe,
                report.mean_fne);
    log_info("eval: report written to " + report_path.string());
    return 0;
}

int cmd_pipeline(const ToolConfig& cfg) {
    const fs::path out = require_output(cfg);
    write_run_config("pipeline", cfg, out);
    if (const int rc = cmd_stats(cfg, false); rc != 0) return rc;
    if (const int rc = cmd_gen_grf(cfg, false); rc != 0) return rc;
    return cmd_fuse(cfg, false);
}

// ------------------------------------------------------------------- flags --

struct FlagState {
    std::string config_file;
    std::string output;
    std::string csv;
    std::string image_dir;
    std::string grf_dir;
    std::string postcode_table;
    std::string categories;
    int i = 2;
    int width = 640;
    int height = 480;
    std::string mode;
    std::string format;
    int jobs = 1;
    bool force = false;
    int bins = 20;
    std::vector<std::string> seed_overrides;
    std::string pred_dir;
    std::string gt_dir;
    std::vector<std::string> inputs;
};

void add_common_flags(CLI::App* sub, FlagState& fs_state) {
    sub->add_option("--config", fs_state.config_file, "Flat key=value config file");
    sub->add_option("--output", fs_state.output, "Output directory");
    sub->add_option("--jobs", fs_state.jobs, "Worker threads (0 = all cores)")
        ->check(CLI::Range(0, 1024));
    sub->add_flag("--force", fs_state.force, "Regenerate outputs that already exist");
    static const CLI::Validator seed_spec(
        [](std::string& s) -> std::string {
            try {
                parse_seed_override(s);
                return {};
            } catch (const std::exception& e) {
                return e.what();
            }
        },
        "CATEGORY=SEED");
    sub->add_option("--seed-override", fs_state.seed_overrides,
                    "Replace a category's base seed (repeatable), e.g. dob=123")
        ->check(seed_spec);
    sub->add_option("--i", fs_state.i, "Integer spectral exponent component (smoothness; larger is smoother)")
        ->check(CLI::Range(1, 1000000));
    sub->add_option("--mode", fs_state.mode, "Mask fusion mode")
        ->check(CLI::IsMember({"sdf_mean", "pixel_mean"}));
}

// Count of a flag on this subcommand; zero when the flag isn't registered
// there at all (CLI11's App::count throws in that case).
std::size_t flag_count(const CLI::App* sub, const std::string& name) {
    const CLI::Option* opt = sub->get_option_no_throw(name);
    return opt ? opt->count() : 0;
}

ToolConfig resolve_config(CLI::App* sub, const FlagState& fs_state) {
    ToolConfig cfg;
    if (flag_count(sub, "--config") > 0) apply_config_file(cfg, fs_state.config_file);
    if (flag_count(sub, "--output") > 0) cfg.output_dir = fs_state.output;
    if (flag_count(sub, "--csv") > 0) cfg.metadata_csv = fs_state.csv;
    if (flag_count(sub, "--image-dir") > 0) cfg.image_dir = fs_state.image_dir;
    if (flag_count(sub, "--grf-dir") > 0) cfg.grf_dir = fs_state.grf_dir;
    if (flag_count(sub, "--postcode-table") > 0) cfg.postcode_table = fs_state.postcode_table;
    if (flag_count(sub, "--categories") > 0) cfg.categories = parse_categories(fs_state.categories);
    if (flag_count(sub, "--i") > 0) cfg.i = fs_state.i;
    if (flag_count(sub, "--width") > 0) cfg.width = fs_state.width;
    if (flag_count(sub, "--height") > 0) cfg.height = fs_state.height;
    if (flag_count(sub, "--mode") > 0) cfg.mode = fs_state.mode;
    if (flag_count(sub, "--format") > 0) cfg.format = fs_state.format;
    if (flag_count(sub, "--jobs") > 0) cfg.jobs = fs_state.jobs;
    if (flag_count(sub, "--force") > 0) cfg.force = true;
    if (flag_count(sub, "--bins") > 0) cfg.bins = fs_state.bins;
    for (const std::string& spec : fs_state.seed_overrides) {
        const auto [category, seed] = parse_seed_override(spec);
        cfg.seed_overrides[category] = seed;
    }
    return cfg;
}

} // namespace
} // namespace grfcli

int main(int argc, char** argv) {
    using namespace grfcli;

    CLI::App app{"GRF toolkit: metadata-conditioned Gaussian-random-field synthesis, "
                 "tensor fusion, mask-ensemble merging, and segmentation metrics"};
    app.require_subcommand(1);
    FlagState fs_state;

    CLI::App* stats = app.add_subcommand("stats", "Metadata distribution statistics");
    add_common_flags(stats, fs_state);
    stats->add_option("--csv", fs_state.csv, "Metadata CSV path");
    stats->add_option("--postcode-table", fs_state.postcode_table, "postcode,decile CSV");
    stats->add_option("--bins", fs_state.bins, "Histogram bin count")->check(CLI::Range(1, 100000));

    CLI::App* gen = app.add_subcommand("gen-grf", "Generate GRF images per record and category");
    add_common_flags(gen, fs_state);
    gen->add_option("--csv", fs_state.csv, "Metadata CSV path");
    gen->add_option("--postcode-table", fs_state.postcode_table, "postcode,decile CSV");
    gen->add_option("--categories", fs_state.categories, "Comma-separated subset of dob,gender,hdd");
    gen->add_option("--width", fs_state.width, "GRF width")->check(CLI::Range(2, 1 << 20));
    gen->add_option("--height", fs_state.height, "GRF height")->check(CLI::Range(2, 1 << 20));

    CLI::App* fuse = app.add_subcommand("fuse", "Fuse wound images with GRFs into 4-channel tensors");
    add_common_flags(fuse, fs_state);
    fuse->add_option("--image-dir", fs_state.image_dir, "Wound image directory (PNG/JPEG)");
    fuse->add_option("--grf-dir", fs_state.grf_dir,
                     "GRF image directory (defaults to the output directory)");

    CLI::App* merge = app.add_subcommand("merge-masks", "Average-merge prediction mask ensembles");
    add_common_flags(merge, fs_state);
    merge->add_option("inputs", fs_state.inputs, "Input mask directories")
        ->required()
        ->expected(1, 64);

    CLI::App* eval = app.add_subcommand("eval", "Evaluate predictions against ground truth");
    add_common_flags(eval, fs_state);
    eval->add_option("--pred", fs_state.pred_dir, "Prediction mask directory")->required();
    eval->add_option("--gt", fs_state.gt_dir, "Ground-truth mask directory")->required();
    eval->add_option("--format", fs_state.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* pipeline = app.add_subcommand("pipeline", "stats, gen-grf, then fuse");
    add_common_flags(pipeline, fs_state);
    pipeline->add_option("--csv", fs_state.csv, "Metadata CSV path");
    pipeline->add_option("--postcode-table", fs_state.postcode_table, "postcode,decile CSV");
    pipeline->add_option("--categories", fs_state.categories,
                         "Comma-separated subset of dob,gender,hdd");
    pipeline->add_option("--image-dir", fs_state.image_dir, "Wound image directory (PNG/JPEG)");
    pipeline->add_option("--grf-dir", fs_state.grf_dir,
                         "GRF image directory (defaults to the output directory)");
    pipeline->add_option("--width", fs_state.width, "GRF width")->check(CLI::Range(2, 1 << 20));
    pipeline->add_option("--height", fs_state.height, "GRF height")->check(CLI::Range(2, 1 << 20));
    pipeline->add_option("--bins", fs_state.bins, "Histogram bin count")
        ->check(CLI::Range(1, 100000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        const ToolConfig cfg = resolve_config(active, fs_state);
        if (active == stats) return cmd_stats(cfg, true);
        if (active == gen) return cmd_gen_grf(cfg, true);
        if (active == fuse) return cmd_fuse(cfg, true);
        if (active == merge) return cmd_merge_masks(cfg, fs_state.inputs);
        if (active == eval) return cmd_eval(cfg, fs_state.pred_dir, fs_state.gt_dir);
        if (active == pipeline) return cmd_pipeline(cfg);
        std::fprintf(stderr, "error: no subcommand selected\n");
        return 1;
    } catch (const grfkit::PairingError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const grfkit::ShapeError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const grfkit::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
