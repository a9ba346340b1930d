#include "bevcurve/csv.hpp"

#include "bevcurve/error.hpp"

#include <fmt/format.h>
#include <iterator>

namespace bevcurve::csv {

std::vector<Record> read(std::istream &in) {
	std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
	std::size_t pos = 0;
	if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) {
		pos = 3;
	}

	std::vector<Record> records;
	std::size_t line = 1;
	while (pos < text.size()) {
		Record rec{line, {}};
		std::string field;
		bool in_quotes = false;
		bool any_content = false;
		for (; pos < text.size(); ++pos) {
			const char c = text[pos];
			if (in_quotes) {
				if (c == '"') {
					if (pos + 1 < text.size() && text[pos + 1] == '"') {
						field += '"';
						++pos;
					} else {
						in_quotes = false;
					}
				} else {
					if (c == '\n') {
						++line;
					}
					field += c;
				}
				continue;
			}
			if (c == '"') {
				in_quotes = true;
				any_content = true;
			} else if (c == ',') {
				rec.fields.push_back(std::move(field));
				field.clear();
				any_content = true;
			} else if (c == '\n' || c == '\r') {
				if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') {
					++pos;
				}
				++pos;
				++line;
				break;
			} else {
				field += c;
				any_content = true;
			}
		}
		if (in_quotes) {
			throw Error(ErrorKind::ParseError, fmt::format("unterminated quoted field starting on line {}", rec.line));
		}
		if (!any_content) {
			continue;
		}
		rec.fields.push_back(std::move(field));
		records.push_back(std::move(rec));
	}
	return records;
}

std::string escape(const std::string &field) {
	if (field.find_first_of(",\"\n\r") == std::string::npos) {
		return field;
	}
	std::string out = "\"";
	for (char c : field) {
		if (c == '"') {
			out += '"';
		}
		out += c;
	}
	out += '"';
	return out;
}

} // namespace bevcurve::csv
