#include "grfkit/metadata.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "grfkit/csv.hpp"
#include "grfkit/errors.hpp"

namespace grfkit::meta {

namespace {

constexpr int kMinYear = 1850;
constexpr int kMaxYear = 2100;
constexpr std::int64_t kSecondsPerDay = 86400;

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

bool parse_int(const std::string& s, long& out) {
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    long v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
        v = v * 10 + (s[i] - '0');
        if (v > 100000000L)
            return false;
    }
    out = (s[0] == '-') ? -v : v;
    return true;
}

std::chrono::year_month_day parse_iso_date(const std::string& s) {
    // strict YYYY-MM-DD
    if (s.size() != 10 || s[4] != '-' || s[7] != '-')
        throw DataError("malformed date '" + s + "' (expected YYYY-MM-DD)");
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw DataError("malformed date '" + s + "' (expected YYYY-MM-DD)");
    int y = std::stoi(s.substr(0, 4));
    unsigned m = static_cast<unsigned>(std::stoi(s.substr(5, 2)));
    unsigned d = static_cast<unsigned>(std::stoi(s.substr(8, 2)));
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                    std::chrono::day{d}};
    if (!ymd.ok())
        throw DataError("invalid calendar date '" + s + "'");
    return ymd;
}

Gender parse_gender(const std::string& raw) {
    std::string g = to_lower(trim(raw));
    if (g == "female" || g == "f")
        return Gender::female;
    if (g == "male" || g == "m")
        return Gender::male;
    throw DataError("unrecognized gender '" + raw + "' (expected male|female|m|f)");
}

std::chrono::year_month_day today_utc() {
    auto now = std::chrono::time_point_cast<std::chrono::days>(std::chrono::system_clock::now());
    return std::chrono::year_month_day{std::chrono::sys_days{now.time_since_epoch()}};
}

} // namespace

const char* to_string(Category c) {
    switch (c) {
    case Category::dob: return "dob";
    case Category::gender: return "gender";
    case Category::hdd: return "hdd";
    }
    return "?";
}

Category category_from_string(const std::string& name) {
    std::string n = to_lower(trim(name));
    if (n == "dob")
        return Category::dob;
    if (n == "gender")
        return Category::gender;
    if (n == "hdd")
        return Category::hdd;
    throw DataError("unknown metadata category '" + name + "'");
}

std::vector<MetadataRecord> parse_metadata_csv(std::istream& source, const CsvSchema& schema) {
    auto rows = csv::read(source);
    if (rows.empty())
        throw SchemaError("metadata CSV is empty (missing header row)");

    const auto& header = rows.front();
    auto column = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (trim(header[i]) == name)
                return i;
        return std::nullopt;
    };
    auto required = [&](const std::string& name) {
        auto idx = column(name);
        if (!idx)
            throw SchemaError("missing required column '" + name + "'");
        return *idx;
    };

    std::size_t col_id = required(schema.image_id);
    std::size_t col_patient = required(schema.patient_id);
    std::size_t col_dob = required(schema.dob);
    std::size_t col_gender = required(schema.gender);
    std::optional<std::size_t> col_postcode = column(schema.postcode);
    std::optional<std::size_t> col_hdd = column(schema.hdd);

    const auto today = std::chrono::sys_days{today_utc()};

    std::vector<MetadataRecord> records;
    std::vector<RowError> bad;
    std::unordered_map<std::string, int> seen_ids;

    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const int row_no = static_cast<int>(r) + 1; // header is row 1
        auto cell = [&](std::size_t idx) -> std::string {
            return idx < row.size() ? trim(row[idx]) : "";
        };
        try {
            if (row.size() != header.size())
                throw DataError("expected " + std::to_string(header.size()) + " fields, got " +
                                std::to_string(row.size()));
            MetadataRecord rec;
            rec.image_id = cell(col_id);
            if (rec.image_id.empty())
                throw DataError("empty image_id");
            if (auto [it, inserted] = seen_ids.emplace(rec.image_id, row_no); !inserted)
                throw DataError("duplicate image_id '" + rec.image_id + "' (first at row " +
                                std::to_string(it->second) + ")");
            rec.patient_id = cell(col_patient);
            rec.dob = parse_iso_date(cell(col_dob));
            int year = static_cast<int>(rec.dob.year());
            if (year < kMinYear || year > kMaxYear)
                throw DataError("date of birth year outside [" + std::to_string(kMinYear) + ", " +
                                std::to_string(kMaxYear) + "]");
            if (std::chrono::sys_days{rec.dob} > today)
                throw DataError("date of birth is in the future");
            rec.gender = parse_gender(cell(col_gender));
            if (col_postcode) {
                std::string pc = cell(*col_postcode);
                if (!pc.empty())
                    rec.postcode = pc;
            }
            if (col_hdd) {
                std::string h = cell(*col_hdd);
                if (!h.empty()) {
                    long v = 0;
                    if (!parse_int(h, v))
                        throw DataError("malformed decile '" + h + "'");
                    if (v < 1 || v > 10)
                        throw DataError("decile out of range [1,10]");
                    rec.hdd = static_cast<int>(v);
                }
            }
            records.push_back(std::move(rec));
        } catch (const DataError& e) {
            bad.emplace_back(row_no, e.what());
        }
    }

    if (!bad.empty())
        throw RowErrors(std::move(bad));
    return records;
}

std::int64_t dob_to_scalar(std::chrono::year_month_day dob) {
    if (!dob.ok())
        throw RangeError("invalid calendar date");
    int year = static_cast<int>(dob.year());
    if (year < kMinYear || year > kMaxYear)
        throw RangeError("date outside supported range [" + std::to_string(kMinYear) + ", " +
                         std::to_string(kMaxYear) + "]");
    auto days = std::chrono::sys_days{dob}.time_since_epoch().count();
    return static_cast<std::int64_t>(days) * kSecondsPerDay;
}

NormalizationStats minmax_fit(std::span<const double> values) {
    if (values.empty())
        throw DataError("minmax_fit: empty input");
    for (double v : values)
        if (!std::isfinite(v))
            throw DataError("minmax_fit: non-finite value");

    NormalizationStats s;
    s.count = static_cast<std::int64_t>(values.size());
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());

    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values)
        mean += v;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : values) {
        double d = v - mean;
        double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 > 0.0) {
        s.skewness = m3 / std::pow(m2, 1.5);
        s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    } // degenerate variance reports 0 for both
    return s;
}

NormalizedValue minmax_apply(const NormalizationStats& stats, double x, Category category) {
    if (!std::isfinite(x))
        throw DataError("minmax_apply: non-finite value");
    double v;
    if (stats.min == stats.max)
        v = 0.5;
    else
        v = std::clamp((x - stats.min) / (stats.max - stats.min), 0.0, 1.0);
    return {v, category};
}

NormalizedValue encode_gender(Gender g) {
    return {g == Gender::male ? 1.0 : 0.0, Category::gender};
}

std::string normalize_postcode(const std::string& postcode) {
    std::string out;
    out.reserve(postcode.size());
    for (char c : postcode) {
        if (std::isspace(static_cast<unsigned char>(c)))
            continue;
        out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return out;
}

PostcodeTable PostcodeTable::load(std::istream& source) {
    auto rows = csv::read(source);
    if (rows.empty())
        throw SchemaError("postcode table is empty (missing header row)");
    const auto& header = rows.front();
    std::optional<std::size_t> col_pc, col_decile;
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::string h = trim(header[i]);
        if (h == "postcode")
            col_pc = i;
        else if (h == "decile")
            col_decile = i;
    }
    if (!col_pc || !col_decile)
        throw SchemaError("postcode table requires columns 'postcode,decile'");

    PostcodeTable table;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() <= std::max(*col_pc, *col_decile))
            throw TableError("postcode table row " + std::to_string(r + 1) + ": too few fields");
        long decile = 0;
        if (!parse_int(trim(row[*col_decile]), decile) || decile < 1 || decile > 10)
            throw TableError("postcode table row " + std::to_string(r + 1) +
                             ": decile out of range [1,10]");
        table.insert(row[*col_pc], static_cast<int>(decile));
    }
    return table;
}

void PostcodeTable::insert(const std::string& postcode, int decile) {
    if (decile < 1 || decile > 10)
        throw TableError("decile out of range [1,10]");
    map_[normalize_postcode(postcode)] = decile;
}

int PostcodeTable::lookup(const std::string& postcode) const {
    auto it = map_.find(normalize_postcode(postcode));
    if (it == map_.end())
        throw LookupError("postcode '" + normalize_postcode(postcode) + "' not in table");
    return it->second;
}

HistogramReport distribution_report(std::span<const double> values, int bin_count) {
    if (bin_count < 1)
        throw DataError("distribution_report: bin_count must be >= 1");
    HistogramReport report;
    report.stats = minmax_fit(values); // validates non-empty and finite

    const double lo = report.stats.min;
    const double hi = report.stats.max;
    report.counts.assign(static_cast<std::size_t>(bin_count), 0);
    report.bin_edges.resize(static_cast<std::size_t>(bin_count) + 1);

    if (lo == hi) {
        // degenerate group: edges span [v, v+1], everything in bin 0
        for (int i = 0; i <= bin_count; ++i)
            report.bin_edges[i] = lo + static_cast<double>(i) / bin_count;
        report.counts[0] = static_cast<std::int64_t>(values.size());
        return report;
    }

    const double width = (hi - lo) / bin_count;
    for (int i = 0; i <= bin_count; ++i)
        report.bin_edges[i] = lo + width * i;
    report.bin_edges.back() = hi; // exact upper edge

    for (double v : values) {
        auto bin = static_cast<int>((v - lo) / width);
        bin = std::clamp(bin, 0, bin_count - 1); // max value joins the last bin
        ++report.counts[static_cast<std::size_t>(bin)];
    }
    return report;
}

} // namespace grfkit::meta
