#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace grfkit {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A required column is missing or the header is unusable.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// One CSV data row failed to parse. `row()` is 1-based counting the header.
class RowError : public Error {
public:
    RowError(int row, const std::string& reason)
        : Error("row " + std::to_string(row) + ": " + reason), row_(row) {}
    int row() const { return row_; }

private:
    int row_;
};

/// Aggregate of every rejected row in one ingestion pass.
class RowErrors : public Error {
public:
    explicit RowErrors(std::vector<RowError> rows)
        : Error(join(rows)), rows_(std::move(rows)) {}
    const std::vector<RowError>& rows() const { return rows_; }

private:
    static std::string join(const std::vector<RowError>& rows) {
        std::string msg = std::to_string(rows.size()) + " row(s) rejected:";
        for (const auto& r : rows) {
            msg += "\n  ";
            msg += r.what();
        }
        return msg;
    }
    std::vector<RowError> rows_;
};

/// Invalid or non-finite data handed to a numeric operation.
class DataError : public Error {
public:
    using Error::Error;
};

/// Value outside a documented domain (e.g. date outside [1850, 2100]).
class RangeError : public Error {
public:
    using Error::Error;
};

/// Postcode table rejected at load time.
class TableError : public Error {
public:
    using Error::Error;
};

/// Postcode not present in the lookup table. Never silently defaulted.
class LookupError : public Error {
public:
    using Error::Error;
};

/// Image or tensor dimension mismatch.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// File contents do not match the expected format.
class FormatError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Prediction/ground-truth (or ensemble) file sets do not line up.
class PairingError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace grfkit
