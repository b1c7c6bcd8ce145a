#include "config.hpp"

#include <charconv>
#include <fstream>
#include <set>

#include "grfkit/errors.hpp"
#include "grfkit/metadata.hpp"

namespace grfcli {
namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    std::uint64_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value, 10);
    if (ec != std::errc() || ptr != last || text.empty()) {
        throw grfkit::ConfigError(what + " must be an unsigned integer, got '" + text + "'");
    }
    return value;
}

int parse_int(const std::string& text, const std::string& what, int lo, int hi) {
    int value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value, 10);
    if (ec != std::errc() || ptr != last || text.empty() || value < lo || value > hi) {
        throw grfkit::ConfigError(what + " must be an integer in [" + std::to_string(lo) + ", "
                                  + std::to_string(hi) + "], got '" + text + "'");
    }
    return value;
}

bool parse_bool(const std::string& text, const std::string& what) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw grfkit::ConfigError(what + " must be true or false, got '" + text + "'");
}

void validate_category(const std::string& name) {
    grfkit::meta::category_from_string(name); // throws on unknown names
}

} // namespace

std::vector<std::string> parse_categories(const std::string& text) {
    std::vector<std::string> out;
    std::string current;
    auto flush = [&] {
        const std::string item = trim(current);
        current.clear();
        if (item.empty()) return;
        validate_category(item);
        for (const std::string& seen : out) {
            if (seen == item) {
                throw grfkit::ConfigError("category '" + item + "' listed twice");
            }
        }
        out.push_back(item);
    };
    for (char c : text) {
        if (c == ',') {
            flush();
        } else {
            current.push_back(c);
        }
    }
    flush();
    if (out.empty()) throw grfkit::ConfigError("category list is empty");
    return out;
}

std::pair<std::string, std::uint64_t> parse_seed_override(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
        throw grfkit::ConfigError("seed override must look like CATEGORY=SEED, got '" + text
                                  + "'");
    }
    const std::string category = trim(text.substr(0, eq));
    validate_category(category);
    const std::uint64_t seed = parse_u64(trim(text.substr(eq + 1)), "seed for " + category);
    return {category, seed};
}

void apply_config_file(ToolConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw grfkit::IoError("cannot open config file " + path.string());

    int line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw grfkit::ConfigError(path.string() + ":" + std::to_string(line_no)
                                      + ": expected key=value");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        const std::string where = path.string() + ":" + std::to_string(line_no) + ": " + key;

        if (key == "metadata_csv") {
            config.metadata_csv = value;
        } else if (key == "image_dir") {
            config.image_dir = value;
        } else if (key == "grf_dir") {
            config.grf_dir = value;
        } else if (key == "output_dir") {
            config.output_dir = value;
        } else if (key == "postcode_table") {
            config.postcode_table = value;
        } else if (key == "categories") {
            config.categories = parse_categories(value);
        } else if (key == "i") {
            config.i = parse_int(value, where, 1, 1000000);
        } else if (key == "width") {
            config.width = parse_int(value, where, 2, 1 << 20);
        } else if (key == "height") {
            config.height = parse_int(value, where, 2, 1 << 20);
        } else if (key == "mode") {
            if (value != "sdf_mean" && value != "pixel_mean") {
                throw grfkit::ConfigError(where + ": expected sdf_mean or pixel_mean, got '"
                                          + value + "'");
            }
            config.mode = value;
        } else if (key == "format") {
            if (value != "json" && value != "csv") {
                throw grfkit::ConfigError(where + ": expected json or csv, got '" + value + "'");
            }
            config.format = value;
        } else if (key == "jobs") {
            config.jobs = parse_int(value, where, 0, 1024);
        } else if (key == "force") {
            config.force = parse_bool(value, where);
        } else if (key == "bins") {
            config.bins = parse_int(value, where, 1, 100000);
        } else if (key.rfind("seed_override.", 0) == 0) {
            const std::string category = key.substr(std::string("seed_override.").size());
            validate_category(category);
            config.seed_overrides[category] = parse_u64(value, where);
        } else {
            throw grfkit::ConfigError(path.string() + ":" + std::to_string(line_no)
                                      + ": unknown key '" + key + "'");
        }
    }
}

} // namespace grfcli
