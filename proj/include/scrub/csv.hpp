#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace scrub {

// In-memory CSV table: first row of the file is the header.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Index of a header column, or throws a schema error naming the column.
    std::size_t column(const std::string& name) const;
};

// RFC-4180 style: comma delimiter, double-quote quoting with doubled-quote
// escape, quoted fields may span lines, CRLF tolerated, UTF-8 passed through,
// leading BOM skipped. Rows shorter than the header are padded with empty
// fields; longer rows are an input error.
CsvTable parse_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

void write_csv(std::ostream& out, const CsvTable& table);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

// Quotes the field if it contains a comma, quote, or newline.
std::string csv_escape(const std::string& field);

} // namespace scrub
