#include "oa/csv.hpp"

namespace oa {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c == '\r' && i + 1 == line.size()) {
            // tolerate CRLF
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string join_csv(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += csv_escape(fields[i]);
    }
    return out;
}

CsvReader::CsvReader(const std::string& path) : in_(path) {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_no_;
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_csv_line(line);
        for (std::size_t i = 0; i < fields.size(); ++i)
            columns_[trim(fields[i])] = i;
        width_ = fields.size();
        header_ok_ = true;
        break;
    }
}

Result<std::size_t> CsvReader::column(const std::string& name) const {
    auto it = columns_.find(name);
    if (it == columns_.end())
        return Error{Err::MissingColumn, "missing column: " + name};
    return it->second;
}

bool CsvReader::next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_no_;
        if (line.empty() || line[0] == '#') continue;
        fields = split_csv_line(line);
        fields.resize(std::max(fields.size(), width_));
        return true;
    }
    return false;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    out_ << join_csv(fields) << '\n';
}

void CsvWriter::comment(const std::string& text) {
    out_ << "# " << text << '\n';
}

}  // namespace oa
