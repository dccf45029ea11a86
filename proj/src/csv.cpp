#include "scrub/csv.hpp"

#include <fstream>
#include <sstream>

#include "scrub/error.hpp"

namespace scrub {

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw schema_error("column '" + name + "' not found in CSV header");
}

namespace {

// Parses one record starting at `pos`. A quoted field may contain newlines,
// so records and physical lines do not coincide.
bool parse_record(const std::string& data, std::size_t& pos, std::vector<std::string>& out,
                  std::size_t& record_number) {
    out.clear();
    const std::size_t n = data.size();
    if (pos >= n) return false;

    std::string field;
    bool in_quotes = false;
    bool saw_any = false;

    while (pos < n) {
        const char c = data[pos];
        if (in_quotes) {
            if (c == '"') {
                if (pos + 1 < n && data[pos + 1] == '"') {
                    field.push_back('"');
                    pos += 2;
                } else {
                    in_quotes = false;
                    ++pos;
                }
            } else {
                field.push_back(c);
                ++pos;
            }
            continue;
        }
        switch (c) {
        case '"':
            if (field.empty()) {
                in_quotes = true;
            } else {
                field.push_back(c); // stray quote inside an unquoted field
            }
            ++pos;
            saw_any = true;
            break;
        case ',':
            out.push_back(std::move(field));
            field.clear();
            ++pos;
            saw_any = true;
            break;
        case '\r':
            if (pos + 1 < n && data[pos + 1] == '\n') ++pos;
            [[fallthrough]];
        case '\n':
            ++pos;
            out.push_back(std::move(field));
            ++record_number;
            return true;
        default:
            field.push_back(c);
            ++pos;
            saw_any = true;
            break;
        }
    }
    if (in_quotes) {
        throw input_error("unterminated quoted field in CSV record " + std::to_string(record_number));
    }
    if (saw_any || !out.empty()) {
        out.push_back(std::move(field));
        ++record_number;
        return true;
    }
    return false;
}

} // namespace

CsvTable parse_csv(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string data = buf.str();

    std::size_t pos = 0;
    if (data.size() >= 3 && data.compare(0, 3, "\xEF\xBB\xBF") == 0) pos = 3;

    CsvTable table;
    std::size_t record_number = 1;
    std::vector<std::string> record;
    if (!parse_record(data, pos, record, record_number)) {
        throw input_error("CSV is empty");
    }
    table.header = std::move(record);

    const std::size_t width = table.header.size();
    while (parse_record(data, pos, record, record_number)) {
        // Skip fully blank records (trailing newline artifacts).
        if (record.size() == 1 && record[0].empty()) continue;
        if (record.size() > width) {
            throw input_error("CSV record " + std::to_string(record_number - 1) + " has " +
                              std::to_string(record.size()) + " fields, expected " +
                              std::to_string(width));
        }
        record.resize(width);
        table.rows.push_back(std::move(record));
    }
    return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) {
        throw input_error("cannot open file: " + path.string());
    }
    return parse_csv(in);
}

std::string csv_escape(const std::string& field) {
    const bool needs_quotes =
        field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (const char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_csv(std::ostream& out, const CsvTable& table) {
    auto write_row = [&out](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << ',';
            out << csv_escape(row[i]);
        }
        out << '\n';
    };
    write_row(table.header);
    for (const auto& row : table.rows) write_row(row);
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) {
        throw input_error("cannot write file: " + path.string());
    }
    write_csv(out, table);
}

} // namespace scrub
