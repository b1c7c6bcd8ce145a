#pragma once

#include <chrono>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace grfkit::meta {

enum class Gender { female, male };

enum class Category { dob, gender, hdd };

const char* to_string(Category c);
Category category_from_string(const std::string& name);

/// One patient/image row of the metadata table.
struct MetadataRecord {
    std::string image_id;
    std::string patient_id;
    std::chrono::year_month_day dob{};
    Gender gender = Gender::female;
    std::optional<std::string> postcode;
    std::optional<int> hdd; // decile in [1,10] when present
};

struct NormalizationStats {
    double min = 0.0;
    double max = 0.0;
    std::int64_t count = 0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
};

struct NormalizedValue {
    double value = 0.0; // in [0,1]
    Category category = Category::dob;
};

struct HistogramReport {
    std::vector<double> bin_edges;      // counts.size() + 1 entries
    std::vector<std::int64_t> counts;
    NormalizationStats stats;
};

/// Column-name mapping for the metadata CSV. The first four are required;
/// postcode/hdd columns may be absent from the file entirely.
struct CsvSchema {
    std::string image_id = "image_id";
    std::string patient_id = "patient_id";
    std::string dob = "dob";
    std::string gender = "gender";
    std::string postcode = "postcode";
    std::string hdd = "hdd";
};

/// Parse the metadata CSV. Any unparseable row is rejected with its row
/// number; if one or more rows fail, a RowErrors aggregate is thrown and no
/// records are returned.
std::vector<MetadataRecord> parse_metadata_csv(std::istream& source,
                                               const CsvSchema& schema = {});

/// Seconds since the Unix epoch at UTC midnight of the given date.
/// Supported years: [1850, 2100].
std::int64_t dob_to_scalar(std::chrono::year_month_day dob);

/// Extrema plus population-denominator skewness / excess kurtosis.
NormalizationStats minmax_fit(std::span<const double> values);

/// (x - min) / (max - min), clamped to [0,1]. Degenerate min == max maps to 0.5.
NormalizedValue minmax_apply(const NormalizationStats& stats, double x, Category category);

/// female -> 0, male -> 1.
NormalizedValue encode_gender(Gender g);

/// Upper-cased, whitespace-stripped postcode key.
std::string normalize_postcode(const std::string& postcode);

class PostcodeTable {
public:
    /// Two-column CSV `postcode,decile`; deciles must be in [1,10].
    static PostcodeTable load(std::istream& source);

    void insert(const std::string& postcode, int decile);
    /// Decile for the (normalized) postcode; LookupError on a miss.
    int lookup(const std::string& postcode) const;
    std::size_t size() const { return map_.size(); }

private:
    std::unordered_map<std::string, int> map_;
};

inline int hdd_lookup(const std::string& postcode, const PostcodeTable& table) {
    return table.lookup(postcode);
}

/// Uniform-width bins spanning [min, max]; the max value lands in the last
/// bin. All-equal input degenerates to edges [v, v+1] with every count in bin 0.
HistogramReport distribution_report(std::span<const double> values, int bin_count);

} // namespace grfkit::meta
