// Minimal RFC 4180 reading and writing: quoted fields may contain commas,
// doubled quotes and newlines.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qaslopes::detail {

using CsvRow = std::vector<std::string>;

std::vector<CsvRow> parse_csv(std::string_view text);

std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& os, const CsvRow& row);

}  // namespace qaslopes::detail
