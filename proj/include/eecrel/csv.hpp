// Copyright 2026 The eecrel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EECREL_CSV_HPP
#define EECREL_CSV_HPP

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "eecrel/error.hpp"

namespace eecrel {

inline constexpr std::string_view kToolVersion = "eecrel 1.0.0";

enum class TableFormat { Csv, Tsv };

inline std::optional<TableFormat> parse_format(std::string_view s) noexcept {
    if (s == "csv") {
        return TableFormat::Csv;
    }
    if (s == "tsv") {
        return TableFormat::Tsv;
    }
    return std::nullopt;
}

/// Nine significant digits, '.' separator, independent of the global locale.
inline std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
    return {buf, res.ptr};
}

/// Shortest round-trip form, for parameter values in headers and comments.
inline std::string format_param(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

/// Numeric table: an x column followed by one column per series. Comment
/// lines, prefixed '#', follow the header row.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> comments;

    void add_row(std::vector<double> row) {
        if (row.size() != header.size()) {
            throw std::logic_error("row width does not match header");
        }
        rows.push_back(std::move(row));
    }

    /// Values of one column, by name.
    std::vector<double> column(std::string_view name) const {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (header[c] == name) {
                std::vector<double> out;
                out.reserve(rows.size());
                for (const auto& r : rows) {
                    out.push_back(r[c]);
                }
                return out;
            }
        }
        throw std::out_of_range("no column named " + std::string(name));
    }
};

inline std::string render(const Table& table, TableFormat format = TableFormat::Csv) {
    const char sep = format == TableFormat::Csv ? ',' : '\t';
    std::string out;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c != 0) {
            out += sep;
        }
        out += table.header[c];
    }
    out += '\n';
    for (const auto& line : table.comments) {
        out += "# ";
        out += line;
        out += '\n';
    }
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c != 0) {
                out += sep;
            }
            out += format_number(row[c]);
        }
        out += '\n';
    }
    return out;
}

/// Writes `content` to `temp + rename`, so readers never see a partial file.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
        }
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) {
            throw IoError("cannot open " + tmp.string() + " for writing");
        }
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        os.flush();
        if (!os) {
            throw IoError("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot rename into " + path.string());
    }
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

} // namespace eecrel

#endif // EECREL_CSV_HPP
