// Acceptance suite: ten property-based criteria, one [PASS]/[FAIL] line each.
// Runs standalone (no test framework); exit code is the number of failures.
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "grfkit/grf.hpp"
#include "grfkit/imageio.hpp"
#include "grfkit/maskfusion.hpp"
#include "grfkit/metadata.hpp"
#include "grfkit/metrics.hpp"
#include "grfkit/spectrum.hpp"
#include "grfkit/tensorfuse.hpp"
#include "grfkit/types.hpp"

namespace fs = std::filesystem;
using namespace grfkit;

namespace {

std::string g_cli;
fs::path g_root;

int run_cli(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::uint8_t> slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Filename -> bytes for every regular file in `dir`, minus run_config.json
// (which echoes the output path and so differs between output directories).
std::map<std::string, std::vector<std::uint8_t>> artifact_bytes(const fs::path& dir) {
    std::map<std::string, std::vector<std::uint8_t>> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (name == "run_config.json") continue;
        out[name] = slurp(entry.path());
    }
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

// ------------------------------------------------------------ criterion 1 --

void criterion_determinism() {
    const fs::path dir = g_root / "c1";
    fs::create_directories(dir);
    std::string csv = "image_id,patient_id,dob,gender,postcode,hdd\n";
    const char* genders[] = {"male", "female"};
    for (int r = 0; r < 10; ++r) {
        char row[128];
        std::snprintf(row, sizeof row, "rec%02d,p%02d,19%02d-%02d-%02d,%s,,%d\n", r, r,
                      40 + r * 5, 1 + r, 1 + 2 * r, genders[r % 2], 1 + r % 10);
        csv += row;
    }
    write_text(dir / "meta.csv", csv);
    const std::string args = "gen-grf --csv " + (dir / "meta.csv").string()
                             + " --width 160 --height 120 --output ";
    require(run_cli(args + (dir / "a").string()) == 0, "first gen-grf run failed");
    require(run_cli(args + (dir / "b").string()) == 0, "second gen-grf run failed");
    const auto a = artifact_bytes(dir / "a");
    const auto b = artifact_bytes(dir / "b");
    require(a.size() == 60, "expected 30 PNGs + 30 sidecars, got "
                                + std::to_string(a.size()) + " files");
    require(a == b, "artifact bytes differ between the two runs");
}

// ------------------------------------------------------------ criterion 2 --

void criterion_gaussianity() {
    double sum = 0.0, sum2 = 0.0, sum3 = 0.0, sum4 = 0.0;
    std::int64_t n = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        grf::GrfParams p;
        p.seed = seed * 2654435761u;
        p.i = 2;
        p.f = 0.0;
        p.width = 256;
        p.height = 256;
        const auto field = grf::synthesize_field(p);
        for (const double v : field.values) {
            sum += v;
            sum2 += v * v;
            sum3 += v * v * v;
            sum4 += v * v * v * v;
        }
        n += static_cast<std::int64_t>(field.values.size());
    }
    const double mean = sum / double(n);
    const double var = sum2 / double(n) - mean * mean;
    const double sd = std::sqrt(var);
    const double skew = (sum3 / double(n) - 3.0 * mean * var - mean * mean * mean)
                        / (sd * sd * sd);
    const double m4 = sum4 / double(n) - 4.0 * mean * (sum3 / double(n))
                      + 6.0 * mean * mean * (sum2 / double(n)) - 3.0 * std::pow(mean, 4);
    const double exkurt = m4 / (var * var) - 3.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "pooled skewness %.4f, excess kurtosis %.4f", skew,
                  exkurt);
    require(std::abs(skew) < 0.15, std::string(buf) + " (|skewness| >= 0.15)");
    require(std::abs(exkurt) < 0.3, std::string(buf) + " (|excess kurtosis| >= 0.3)");
}

// ------------------------------------------------------------ criterion 3 --

void criterion_spectral_law() {
    const std::pair<int, double> cases[] = {{2, 0.0}, {2, 0.5}, {5, 0.0}, {5, 0.5}};
    for (const auto& [i, f] : cases) {
        grf::GrfParams p;
        p.seed = 97531u + static_cast<std::uint64_t>(i * 1000) + std::uint64_t(f * 10);
        p.i = i;
        p.f = f;
        p.width = 256;
        p.height = 256;
        const auto spectrum = grf::radial_power_spectrum(grf::synthesize_field(p), 128);
        const double slope = grf::fit_loglog_slope(spectrum, 4.0, 64.0);
        const double target = -(double(i) + f);
        char buf[128];
        std::snprintf(buf, sizeof buf, "(i=%d, f=%.1f): slope %.3f vs target %.1f", i, f,
                      slope, target);
        require(std::abs(slope - target) <= 0.35, std::string(buf) + " off by more than 0.35");
    }
}

// ------------------------------------------------------------ criterion 4 --

void criterion_smoothness_ordering() {
    const auto tv_per_pixel = [](const Field2D& field) {
        double total = 0.0;
        std::int64_t terms = 0;
        for (int y = 0; y < field.height; ++y) {
            for (int x = 0; x < field.width; ++x) {
                if (x + 1 < field.width) {
                    total += std::abs(field.at(x + 1, y) - field.at(x, y));
                    ++terms;
                }
                if (y + 1 < field.height) {
                    total += std::abs(field.at(x, y + 1) - field.at(x, y));
                    ++terms;
                }
            }
        }
        return total / double(terms);
    };
    int ordered = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        grf::GrfParams rough;
        rough.seed = seed * 104729u;
        rough.i = 2;
        rough.width = 128;
        rough.height = 128;
        grf::GrfParams smooth = rough;
        smooth.i = 5;
        if (tv_per_pixel(grf::synthesize_field(smooth))
            < tv_per_pixel(grf::synthesize_field(rough))) {
            ++ordered;
        }
    }
    require(ordered == 20,
            "TV(i=5) < TV(i=2) held for only " + std::to_string(ordered) + "/20 seeds");
}

// ------------------------------------------------------------ criterion 5 --

void criterion_distance_transform_oracle() {
    std::mt19937 gen(60221023u);
    std::uniform_int_distribution<int> dim(1, 32);
    std::uniform_real_distribution<double> dens(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int w = dim(gen);
        const int h = dim(gen);
        BinaryMask mask;
        mask.width = w;
        mask.height = h;
        mask.bits.resize(static_cast<size_t>(w) * h);
        std::bernoulli_distribution coin(dens(gen));
        for (auto& b : mask.bits) b = coin(gen) ? 1 : 0;

        // Brute force: minimum squared distance over every foreground pixel.
        const std::int64_t clamp_sq = std::int64_t(w + h) * std::int64_t(w + h);
        std::vector<std::int64_t> expect(mask.bits.size(), clamp_sq);
        std::vector<std::pair<int, int>> fg;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (mask.at(x, y)) fg.emplace_back(x, y);
            }
        }
        if (!fg.empty()) {
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    std::int64_t best = clamp_sq * 4;
                    for (const auto& [fx, fy] : fg) {
                        const std::int64_t dx = x - fx, dy = y - fy;
                        best = std::min(best, dx * dx + dy * dy);
                    }
                    expect[static_cast<size_t>(y) * w + x] = best;
                }
            }
        }
        require(mask::squared_distance_transform(mask) == expect,
                "squared distances diverge from the brute-force oracle on trial "
                    + std::to_string(trial) + " (" + std::to_string(w) + "x"
                    + std::to_string(h) + ")");
    }
}

// ------------------------------------------------------------ criterion 6 --

void criterion_metrics_oracle() {
    std::mt19937 gen(16180339u);
    std::uniform_real_distribution<double> dens(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        BinaryMask pred, gt;
        pred.width = gt.width = 16;
        pred.height = gt.height = 16;
        pred.bits.resize(256);
        gt.bits.resize(256);
        std::bernoulli_distribution coin_p(dens(gen)), coin_g(dens(gen));
        for (auto& b : pred.bits) b = coin_p(gen) ? 1 : 0;
        for (auto& b : gt.bits) b = coin_g(gen) ? 1 : 0;

        std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
        for (size_t idx = 0; idx < 256; ++idx) {
            if (pred.bits[idx] && gt.bits[idx]) ++tp;
            else if (pred.bits[idx]) ++fp;
            else if (gt.bits[idx]) ++fn;
            else ++tn;
        }
        const double o_iou = (tp + fp + fn) == 0 ? 1.0 : double(tp) / double(tp + fp + fn);
        const double o_dsc =
            (2 * tp + fp + fn) == 0 ? 1.0 : 2.0 * double(tp) / double(2 * tp + fp + fn);
        const double o_fpe = (fp + tn) == 0 ? 0.0 : double(fp) / double(fp + tn);
        const double o_fne = (fn + tp) == 0 ? 0.0 : double(fn) / double(fn + tp);

        const auto c = metrics::confusion(pred, gt);
        const char* what = nullptr;
        if (std::abs(metrics::iou(c) - o_iou) >= 1e-12) what = "IoU";
        if (std::abs(metrics::dsc(c) - o_dsc) >= 1e-12) what = "DSC";
        if (std::abs(metrics::fpe(c) - o_fpe) >= 1e-12) what = "FPE";
        if (std::abs(metrics::fne(c) - o_fne) >= 1e-12) what = "FNE";
        require(what == nullptr, std::string(what ? what : "")
                                     + " mismatch vs naive counting on trial "
                                     + std::to_string(trial));
        require(std::abs(metrics::dsc(c)
                         - 2.0 * metrics::iou(c) / (1.0 + metrics::iou(c))) < 1e-12,
                "DSC != 2*IoU/(1+IoU) on trial " + std::to_string(trial));
    }
}

// ------------------------------------------------------------ criterion 7 --

void criterion_fusion_properties() {
    // Worked 1x4 example.
    BinaryMask a, b, c;
    a.width = b.width = c.width = 4;
    a.height = b.height = c.height = 1;
    a.bits = {1, 1, 0, 0};
    b.bits = {1, 1, 0, 0};
    c.bits = {0, 1, 1, 0};
    require(mask::average_merge({a, b, c}, mask::MergeMode::sdf_mean).bits
                == std::vector<std::uint8_t>({1, 1, 0, 0}),
            "worked 1x4 sdf_mean example does not reproduce");

    std::mt19937 gen(31415926u);
    std::uniform_real_distribution<double> dens(0.05, 0.95);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<BinaryMask> masks(3);
        for (auto& m : masks) {
            m.width = 32;
            m.height = 32;
            m.bits.resize(32u * 32u);
            std::bernoulli_distribution coin(dens(gen));
            for (auto& bit : m.bits) bit = coin(gen) ? 1 : 0;
        }
        const auto merged = mask::average_merge(masks, mask::MergeMode::sdf_mean);

        // Idempotence on identical inputs.
        require(mask::average_merge({masks[0], masks[0], masks[0]},
                                    mask::MergeMode::sdf_mean)
                        .bits
                    == masks[0].bits,
                "three copies of one mask did not merge to that mask, trial "
                    + std::to_string(trial));

        // Permutation invariance.
        std::vector<BinaryMask> shuffled{masks[2], masks[0], masks[1]};
        require(mask::average_merge(shuffled, mask::MergeMode::sdf_mean).bits
                    == merged.bits,
                "merge changed under ensemble permutation, trial " + std::to_string(trial));

        // Unanimous pixels survive.
        for (size_t idx = 0; idx < merged.bits.size(); ++idx) {
            const int votes = masks[0].bits[idx] + masks[1].bits[idx] + masks[2].bits[idx];
            if (votes == 3) {
                require(merged.bits[idx] == 1,
                        "unanimous foreground pixel lost, trial " + std::to_string(trial));
            } else if (votes == 0) {
                require(merged.bits[idx] == 0,
                        "unanimous background pixel gained, trial " + std::to_string(trial));
            }
        }
    }
}

// ------------------------------------------------------------ criterion 8 --

void criterion_minmax_properties() {
    std::mt19937 gen(14142135u);
    std::uniform_real_distribution<double> value_dist(-1e6, 1e6);
    std::uniform_int_distribution<int> size_dist(1, 50);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> values(size_dist(gen));
        for (auto& v : values) v = value_dist(gen);
        const auto stats = meta::minmax_fit(values);

        if (stats.min < stats.max) {
            require(meta::minmax_apply(stats, stats.min, meta::Category::dob).value == 0.0,
                    "minimum did not map to 0, trial " + std::to_string(trial));
            require(meta::minmax_apply(stats, stats.max, meta::Category::dob).value == 1.0,
                    "maximum did not map to 1, trial " + std::to_string(trial));
        }

        std::vector<double> sorted = values;
        std::sort(sorted.begin(), sorted.end());
        double prev = -1.0;
        for (const double x : sorted) {
            const double v = meta::minmax_apply(stats, x, meta::Category::dob).value;
            require(v >= 0.0 && v <= 1.0, "output escaped [0,1], trial "
                                              + std::to_string(trial));
            require(v >= prev, "order not preserved, trial " + std::to_string(trial));
            prev = v;
        }

        const double a = 1e-3 + std::abs(value_dist(gen)) * 1e-4;
        const double offset = value_dist(gen);
        std::vector<double> mapped(values.size());
        for (size_t i = 0; i < values.size(); ++i) mapped[i] = a * values[i] + offset;
        const auto mapped_stats = meta::minmax_fit(mapped);
        for (size_t i = 0; i < values.size(); ++i) {
            const double lhs =
                meta::minmax_apply(stats, values[i], meta::Category::dob).value;
            const double rhs =
                meta::minmax_apply(mapped_stats, mapped[i], meta::Category::dob).value;
            require(std::abs(lhs - rhs) < 1e-12,
                    "affine invariance broken beyond 1e-12, trial " + std::to_string(trial));
        }
    }
}

// ------------------------------------------------------------ criterion 9 --

void criterion_round_trips() {
    const fs::path dir = g_root / "c9";
    fs::create_directories(dir);
    std::mt19937 gen(27182818u);
    std::uniform_int_distribution<int> dim(1, 24);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int trial = 0; trial < 50; ++trial) {
        FourChannelTensor tensor;
        tensor.width = dim(gen);
        tensor.height = dim(gen);
        tensor.values.resize(4u * tensor.width * tensor.height);
        for (auto& v : tensor.values) {
            v = static_cast<float>(byte(gen)) / 255.0f; // 8-bit quantized
        }
        const fs::path png = dir / ("t" + std::to_string(trial) + ".fused.png");
        const fs::path raw = dir / ("t" + std::to_string(trial) + ".grf4");
        fuse::write_fused_png(tensor, png);
        fuse::export_raw_tensor(tensor, raw);
        const auto png_back = fuse::read_fused_png(png);
        const auto raw_back = fuse::import_raw_tensor(raw);
        require(png_back.width == tensor.width && png_back.height == tensor.height
                    && png_back.values == tensor.values,
                "fused PNG round trip lost data on trial " + std::to_string(trial));
        require(raw_back.width == tensor.width && raw_back.height == tensor.height
                    && raw_back.values == tensor.values,
                "raw tensor round trip lost data on trial " + std::to_string(trial));
    }

    // Bit-exact header layout.
    FourChannelTensor tensor;
    tensor.width = 2;
    tensor.height = 2;
    tensor.values.assign(16, 0.0f);
    tensor.values[0] = 0.5f;
    const fs::path raw = dir / "layout.grf4";
    fuse::export_raw_tensor(tensor, raw);
    const auto bytes = slurp(raw);
    require(bytes.size() == 80, "2x2 raw tensor is not 80 bytes");
    const std::uint8_t header[16] = {'G', 'R', 'F', '4', 1, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0};
    require(std::equal(header, header + 16, bytes.begin()), "raw header bytes differ");
    const std::uint8_t half[4] = {0x00, 0x00, 0x00, 0x3F};
    require(std::equal(half, half + 4, bytes.begin() + 16),
            "0.5f did not encode as 00 00 00 3F");
}

// ----------------------------------------------------------- criterion 10 --

void criterion_pipeline_smoke() {
    const fs::path dir = g_root / "c10";
    const fs::path images = dir / "images";
    fs::create_directories(images);
    write_text(dir / "meta.csv",
               "image_id,patient_id,dob,gender,postcode,hdd\n"
               "img001,p01,1953-04-12,male,,3\n"
               "img002,p02,1967-11-30,female,,7\n"
               "img003,p03,1980-01-05,female,,5\n"
               "img004,p04,1941-06-22,male,,1\n"
               "img005,p05,1999-12-31,female,,9\n");
    std::mt19937 gen(5772156u);
    for (int i = 1; i <= 5; ++i) {
        GreyImage img;
        img.width = 64;
        img.height = 48;
        img.pixels.resize(64u * 48u);
        for (auto& p : img.pixels) p = static_cast<std::uint8_t>(gen() & 0xff);
        io::write_png_grey(images / ("img00" + std::to_string(i) + ".png"), img);
    }
    // Three synthetic prediction directories plus ground truth.
    const fs::path gt_dir = dir / "gt";
    fs::create_directories(gt_dir);
    std::vector<fs::path> pred_dirs;
    for (int d = 0; d < 3; ++d) {
        pred_dirs.push_back(dir / ("pred" + std::to_string(d)));
        fs::create_directories(pred_dirs.back());
    }
    for (int i = 1; i <= 5; ++i) {
        const std::string name = "img00" + std::to_string(i) + ".png";
        BinaryMask gt;
        gt.width = 64;
        gt.height = 48;
        gt.bits.resize(64u * 48u);
        for (auto& b : gt.bits) b = (gen() & 3u) == 0 ? 1 : 0;
        io::write_mask_png(gt_dir / name, gt);
        for (const auto& pd : pred_dirs) {
            BinaryMask pred = gt;
            for (auto& b : pred.bits) {
                if ((gen() & 15u) == 0) b ^= 1; // noisy copies of the truth
            }
            io::write_mask_png(pd / name, pred);
        }
    }

    const auto run_flow = [&](const fs::path& out) {
        require(run_cli("pipeline --csv " + (dir / "meta.csv").string() + " --image-dir "
                        + images.string() + " --width 64 --height 48 --output "
                        + out.string())
                    == 0,
                "pipeline exited nonzero");
        require(run_cli("merge-masks " + pred_dirs[0].string() + " "
                        + pred_dirs[1].string() + " " + pred_dirs[2].string()
                        + " --output " + (out / "merged").string())
                    == 0,
                "merge-masks exited nonzero");
        require(run_cli("eval --pred " + (out / "merged").string() + " --gt "
                        + gt_dir.string() + " --output " + (out / "eval").string())
                    == 0,
                "eval exited nonzero");
    };
    run_flow(dir / "out_a");
    run_flow(dir / "out_b");

    int grfs = 0, fused = 0, raws = 0;
    for (const auto& entry : fs::directory_iterator(dir / "out_a")) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (name.size() > 8 && name.rfind(".grf.png") == name.size() - 8) ++grfs;
        if (name.size() > 10 && name.rfind(".fused.png") == name.size() - 10) ++fused;
        if (name.size() > 5 && name.rfind(".grf4") == name.size() - 5) ++raws;
    }
    require(grfs == 15, "expected 15 GRF images, found " + std::to_string(grfs));
    require(fused == 15, "expected 15 fused tensors, found " + std::to_string(fused));
    require(raws == 15, "expected 15 raw tensors, found " + std::to_string(raws));
    require(fs::exists(dir / "out_a" / "normalization_stats.json"),
            "normalization stats missing");
    require(fs::exists(dir / "out_a" / "merged" / "img001.png"), "merged mask missing");
    require(fs::exists(dir / "out_a" / "eval" / "eval_report.json"),
            "evaluation report missing");

    require(artifact_bytes(dir / "out_a") == artifact_bytes(dir / "out_b"),
            "pipeline artifacts not byte-stable");
    require(artifact_bytes(dir / "out_a" / "merged")
                == artifact_bytes(dir / "out_b" / "merged"),
            "merged masks not byte-stable");
    require(artifact_bytes(dir / "out_a" / "eval")
                == artifact_bytes(dir / "out_b" / "eval"),
            "evaluation reports not byte-stable");
}

struct Criterion {
    const char* name;
    double time_limit_s; // 0 = no limit
    std::function<void()> body;
};

} // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--cli") g_cli = argv[i + 1];
    }
    if (g_cli.empty()) {
        std::fprintf(stderr, "usage: %s --cli PATH_TO_GRFKIT_BINARY\n", argv[0]);
        return 64;
    }
    g_root = fs::temp_directory_path() / ("grfkit_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(g_root);
    fs::create_directories(g_root);

    const Criterion criteria[] = {
        {"determinism: gen-grf twice on 10 records, byte-identical artifacts", 10.0,
         criterion_determinism},
        {"gaussianity: pooled moments of 100 seeds at 256x256 (i=2, f=0)", 60.0,
         criterion_gaussianity},
        {"spectral law: slope within 0.35 of -(i+f) for four regimes", 30.0,
         criterion_spectral_law},
        {"smoothness ordering: TV(i=5) < TV(i=2) on 20/20 matched seeds", 0.0,
         criterion_smoothness_ordering},
        {"distance transform: exact match vs brute force on 200 masks", 60.0,
         criterion_distance_transform_oracle},
        {"metrics: match naive counting to 1e-12 on 1000 pairs + DSC identity", 0.0,
         criterion_metrics_oracle},
        {"fusion: idempotence, permutation, unanimity on 500 ensembles + 1x4 example", 0.0,
         criterion_fusion_properties},
        {"min-max: endpoints, bounds, order, affine invariance on 1000 groups", 0.0,
         criterion_minmax_properties},
        {"round trips: fused PNG and raw tensor lossless for 50 tensors", 0.0,
         criterion_round_trips},
        {"pipeline: 5-image end-to-end flow, exit 0, byte-stable", 30.0,
         criterion_pipeline_smoke},
    };

    int failures = 0;
    int index = 0;
    for (const auto& criterion : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            criterion.body();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (error.empty() && criterion.time_limit_s > 0.0
            && elapsed > criterion.time_limit_s) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "exceeded the %.0f s budget",
                          criterion.time_limit_s);
            error = buf;
        }
        if (error.empty()) {
            std::printf("[PASS] %2d. %s (%.1fs)\n", index, criterion.name, elapsed);
        } else {
            std::printf("[FAIL] %2d. %s (%.1fs): %s\n", index, criterion.name, elapsed,
                        error.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }

    if (failures == 0) {
        std::printf("all %d acceptance criteria satisfied\n", index);
    } else {
        std::printf("%d of %d acceptance criteria failed\n", failures, index);
    }
    return failures;
}
