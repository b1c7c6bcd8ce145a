#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace grfcli {

// Resolved settings for one invocation: defaults, overlaid by the config
// file, overlaid by command-line flags.
struct ToolConfig {
    std::optional<std::string> metadata_csv;
    std::optional<std::string> image_dir;
    std::optional<std::string> grf_dir;
    std::optional<std::string> output_dir;
    std::optional<std::string> postcode_table;
    std::vector<std::string> categories{"dob", "gender", "hdd"};
    int i = 2;
    int width = 640;
    int height = 480;
    std::string mode = "sdf_mean";
    std::string format = "json";
    int jobs = 1; // 0 = one thread per hardware core
    bool force = false;
    int bins = 20;
    std::map<std::string, std::uint64_t> seed_overrides; // category -> base seed
};

// Flat key=value file; '#'/';' comments; seed overrides spelled
// seed_override.<category>. Unknown keys and malformed values throw
// ConfigError; an unreadable path throws IoError.
void apply_config_file(ToolConfig& config, const std::filesystem::path& path);

// "CAT=U64" -> (category, seed); malformed input throws ConfigError.
std::pair<std::string, std::uint64_t> parse_seed_override(const std::string& text);

// Split a comma-separated category list and validate each entry.
std::vector<std::string> parse_categories(const std::string& text);

} // namespace grfcli
