#pragma once

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "oa/util.hpp"

namespace oa {

/// RFC-4180-ish field splitting: quoted fields may contain commas,
/// doubled quotes and newlines are not supported inside fields.
std::vector<std::string> split_csv_line(const std::string& line);

std::string csv_escape(const std::string& field);
std::string join_csv(const std::vector<std::string>& fields);

/// Header-aware CSV reader. Lines starting with '#' are skipped
/// (report files carry a trailing manifest comment).
class CsvReader {
public:
    explicit CsvReader(const std::string& path);

    bool good() const { return in_.good() || header_ok_; }
    bool header_ok() const { return header_ok_; }

    /// Index of a required column, or MissingColumn.
    Result<std::size_t> column(const std::string& name) const;

    /// Reads the next data row; false at end of file. Short rows are
    /// padded with empty fields to header width.
    bool next(std::vector<std::string>& fields);

    std::size_t line_number() const { return line_no_; }

private:
    std::ifstream in_;
    std::map<std::string, std::size_t> columns_;
    std::size_t width_ = 0;
    std::size_t line_no_ = 0;
    bool header_ok_ = false;
};

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}
    void row(const std::vector<std::string>& fields);
    void comment(const std::string& text);

private:
    std::ostream& out_;
};

}  // namespace oa
