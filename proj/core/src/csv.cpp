#include "iceberg/csv.hpp"

#include "iceberg/errors.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace iceberg::csv {

namespace {

// Splits one physical line. Quoted fields may contain commas and doubled
// quotes; embedded newlines are not supported.
void split_line(std::string_view line, std::vector<std::string>& out,
                const std::filesystem::path& path, std::size_t line_no) {
    out.clear();
    std::string field;
    bool in_quotes = false;
    bool was_quoted = false;
    std::size_t i = 0;
    const std::size_t n = line.size();
    for (;;) {
        if (in_quotes) {
            if (i >= n) {
                throw InputError(path.string() + ":" + std::to_string(line_no) +
                                 ": unterminated quoted field");
            }
            if (line[i] == '"') {
                if (i + 1 < n && line[i + 1] == '"') {
                    field.push_back('"');
                    i += 2;
                } else {
                    in_quotes = false;
                    ++i;
                }
            } else {
                field.push_back(line[i]);
                ++i;
            }
        } else if (i >= n || line[i] == ',') {
            out.push_back(std::move(field));
            field.clear();
            was_quoted = false;
            if (i >= n) {
                break;
            }
            ++i;
        } else if (line[i] == '"' && field.empty() && !was_quoted) {
            in_quotes = true;
            was_quoted = true;
            ++i;
        } else {
            field.push_back(line[i]);
            ++i;
        }
    }
}

std::string join(std::span<const std::string_view> parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) {
            out.push_back(',');
        }
        out.append(parts[i]);
    }
    return out;
}

bool read_line(std::ifstream& in, std::string& line) {
    if (!std::getline(in, line)) {
        return false;
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return true;
}

} // namespace

Reader::Reader(std::filesystem::path path, std::span<const std::string_view> expected_header)
    : path_(std::move(path)), in_(path_), width_(expected_header.size()) {
    if (!in_) {
        throw InputError("cannot open input file: " + path_.string());
    }
    std::string header;
    if (!read_line(in_, header)) {
        throw InputError(path_.string() + ": empty file, expected header '" +
                         join(expected_header) + "'");
    }
    line_ = 1;
    if (header != join(expected_header)) {
        throw InputError(path_.string() + ":1: unexpected header '" + header +
                         "', expected '" + join(expected_header) + "'");
    }
}

bool Reader::next(std::vector<std::string>& fields) {
    std::string line;
    for (;;) {
        if (!read_line(in_, line)) {
            return false;
        }
        ++line_;
        if (!line.empty()) {
            break;
        }
        // skip blank lines (typically a trailing newline)
    }
    split_line(line, fields, path_, line_);
    if (fields.size() != width_) {
        fail("expected " + std::to_string(width_) + " fields, got " +
             std::to_string(fields.size()));
    }
    return true;
}

void Reader::fail(const std::string& what) const {
    throw InputError(path_.string() + ":" + std::to_string(line_) + ": " + what);
}

double Reader::to_double(const std::string& field, std::string_view column) const {
    // std::from_chars<double> in libstdc++ 11 accepts the formats we emit,
    // but strtod gives identical values and clearer trailing-garbage checks.
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
        fail("field '" + std::string(column) + "' is not a finite number: '" + field + "'");
    }
    return v;
}

std::int64_t Reader::to_int(const std::string& field, std::string_view column) const {
    std::int64_t v = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        fail("field '" + std::string(column) + "' is not an integer: '" + field + "'");
    }
    return v;
}

Writer::Writer(const std::filesystem::path& path, std::span<const std::string_view> header)
    : out_(path, std::ios::binary), width_(header.size()) {
    if (!out_) {
        throw InputError("cannot open output file: " + path.string());
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i > 0) {
            out_ << ',';
        }
        out_ << header[i];
    }
    out_ << '\n';
}

void Writer::row(std::span<const std::string> fields) {
    if (fields.size() != width_) {
        throw InternalError("csv writer row width mismatch");
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            out_ << ',';
        }
        write_field(fields[i]);
    }
    out_ << '\n';
}

void Writer::write_field(std::string_view field) {
    const bool needs_quotes =
        field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quotes) {
        out_ << field;
        return;
    }
    out_ << '"';
    for (char c : field) {
        if (c == '"') {
            out_ << "\"\"";
        } else {
            out_ << c;
        }
    }
    out_ << '"';
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) {
        throw InternalError("to_chars failed formatting a double");
    }
    return std::string(buf, ptr);
}

std::string format_int(std::int64_t v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) {
        throw InternalError("to_chars failed formatting an integer");
    }
    return std::string(buf, ptr);
}

} // namespace iceberg::csv
