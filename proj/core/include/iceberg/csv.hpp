#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace iceberg::csv {

/// Streaming CSV reader with a fixed, validated header.
///
/// The dialect is deliberately small: comma separator, optional RFC-4180
/// double-quote escaping within a single line, LF or CRLF endings. Every
/// loader in the engine rejects a file whose header row is not exactly the
/// expected column list, so schema drift fails loudly.
class Reader {
public:
    Reader(std::filesystem::path path, std::span<const std::string_view> expected_header);

    /// Reads the next data row into `fields`. Returns false at end of file.
    /// Throws InputError on ragged rows or malformed quoting.
    bool next(std::vector<std::string>& fields);

    std::size_t line() const { return line_; }
    const std::filesystem::path& path() const { return path_; }

    /// Throws InputError annotated with "<path>:<line>".
    [[noreturn]] void fail(const std::string& what) const;

    // Field parsers; all failures are reported against the current row.
    double to_double(const std::string& field, std::string_view column) const;
    std::int64_t to_int(const std::string& field, std::string_view column) const;

private:
    std::filesystem::path path_;
    std::ifstream in_;
    std::size_t line_ = 0;
    std::size_t width_ = 0;
};

/// CSV writer emitting LF line endings and shortest round-trip number
/// formatting, so that generated files are byte-stable.
class Writer {
public:
    Writer(const std::filesystem::path& path, std::span<const std::string_view> header);

    void row(std::span<const std::string> fields);

private:
    std::ofstream out_;
    std::size_t width_;

    void write_field(std::string_view field);
};

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);
std::string format_int(std::int64_t v);

} // namespace iceberg::csv
