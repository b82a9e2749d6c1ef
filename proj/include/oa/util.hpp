#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace oa {

enum class Err {
    MalformedDoi,
    MalformedIssn,
    BadCheckDigit,
    UnparsableRecord,
    MissingDoi,
    MissingColumn,
    EmptyCorpus,
    SampleTooLarge,
    UnfilledRows,
    InconsistentInput,
    PreconditionFailed,
    NotFound,
    RetriesExhausted,
    Unparsable,
    Io,
};

const char* err_name(Err e);

struct Error {
    Err code;
    std::string detail;
};

/// Minimal expected-like result type; the project targets C++20 so
/// std::expected is not available.
template <class T>
class Result {
public:
    Result(T value) : v_(std::move(value)) {}
    Result(Error error) : v_(std::move(error)) {}
    Result(Err code, std::string detail = {}) : v_(Error{code, std::move(detail)}) {}

    bool ok() const { return std::holds_alternative<T>(v_); }
    explicit operator bool() const { return ok(); }

    T& value() { return std::get<T>(v_); }
    const T& value() const { return std::get<T>(v_); }
    const Error& error() const { return std::get<Error>(v_); }

private:
    std::variant<T, Error> v_;
};

// string helpers

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);
bool starts_with_ci(std::string_view s, std::string_view prefix);
std::string collapse_whitespace(std::string_view s);

/// Replaces invalid UTF-8 sequences with U+FFFD. Returns the sanitized
/// string and the number of replacements made.
std::pair<std::string, std::size_t> sanitize_utf8(std::string_view s);

/// Round half-up to two decimals (percent reporting convention).
double round2(double x);

/// FNV-1a 64-bit, used for content digests in run manifests.
std::uint64_t fnv1a64(std::string_view data);
std::uint64_t fnv1a64_file(const std::string& path);
std::string hex64(std::uint64_t v);

}  // namespace oa
