#include "grfkit/csv.hpp"

#include "grfkit/errors.hpp"

namespace grfkit::csv {

namespace {

enum class State { field_start, unquoted, quoted, quote_seen };

} // namespace

std::vector<std::vector<std::string>> read(std::istream& in) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> row;
    std::string cell;
    State state = State::field_start;
    int record_no = 1;

    auto end_cell = [&] {
        row.push_back(std::move(cell));
        cell.clear();
    };
    auto end_row = [&] {
        end_cell();
        records.push_back(std::move(row));
        row.clear();
        ++record_no;
        state = State::field_start;
    };

    char c;
    while (in.get(c)) {
        if (c == '\r') {
            // CR is only meaningful as part of CRLF outside quotes
            if (state == State::quoted) {
                cell += c;
                continue;
            }
            int next = in.peek();
            if (next == '\n')
                continue; // the LF below ends the row
            throw FormatError("record " + std::to_string(record_no) +
                              ": bare carriage return outside quoted field");
        }
        switch (state) {
        case State::field_start:
            if (c == '"')
                state = State::quoted;
            else if (c == ',')
                end_cell();
            else if (c == '\n') {
                // blank line: only a record if something was already read on it
                if (!row.empty())
                    end_row();
            } else {
                cell += c;
                state = State::unquoted;
            }
            break;
        case State::unquoted:
            if (c == ',') {
                end_cell();
                state = State::field_start;
            } else if (c == '\n')
                end_row();
            else
                cell += c;
            break;
        case State::quoted:
            if (c == '"')
                state = State::quote_seen;
            else
                cell += c;
            break;
        case State::quote_seen:
            if (c == '"') { // escaped quote
                cell += '"';
                state = State::quoted;
            } else if (c == ',') {
                end_cell();
                state = State::field_start;
            } else if (c == '\n')
                end_row();
            else
                throw FormatError("record " + std::to_string(record_no) +
                                  ": unexpected character after closing quote");
            break;
        }
    }

    if (state == State::quoted)
        throw FormatError("record " + std::to_string(record_no) + ": unterminated quoted field");
    if (!cell.empty() || !row.empty() || state == State::quote_seen)
        end_row(); // final record without trailing newline

    return records;
}

} // namespace grfkit::csv
