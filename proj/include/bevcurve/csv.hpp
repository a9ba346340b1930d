#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

namespace bevcurve::csv {

struct Record {
	std::size_t line; // 1-based line where the record starts
	std::vector<std::string> fields;
};

/// Reads RFC-4180 CSV: comma separated, double-quoted fields with "" escapes,
/// CRLF or LF line endings, embedded newlines inside quotes. A leading UTF-8
/// byte-order mark is discarded. Blank lines are skipped.
std::vector<Record> read(std::istream &in);

/// Quotes a field if it contains a comma, quote or newline.
std::string escape(const std::string &field);

} // namespace bevcurve::csv
