#pragma once

#include <istream>
#include <string>
#include <vector>

namespace grfkit::csv {

/// RFC-4180 reader: quoted fields, doubled quotes, embedded commas and
/// newlines. Accepts LF or CRLF row endings. Returns one vector of cells per
/// record, header included. Throws FormatError on malformed quoting.
std::vector<std::vector<std::string>> read(std::istream& in);

} // namespace grfkit::csv
