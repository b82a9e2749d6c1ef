#include "oa/util.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

namespace oa {

const char* err_name(Err e) {
    switch (e) {
        case Err::MalformedDoi: return "MalformedDoi";
        case Err::MalformedIssn: return "MalformedIssn";
        case Err::BadCheckDigit: return "BadCheckDigit";
        case Err::UnparsableRecord: return "UnparsableRecord";
        case Err::MissingDoi: return "MissingDoi";
        case Err::MissingColumn: return "MissingColumn";
        case Err::EmptyCorpus: return "EmptyCorpus";
        case Err::SampleTooLarge: return "SampleTooLarge";
        case Err::UnfilledRows: return "UnfilledRows";
        case Err::InconsistentInput: return "InconsistentInput";
        case Err::PreconditionFailed: return "PreconditionFailed";
        case Err::NotFound: return "NotFound";
        case Err::RetriesExhausted: return "RetriesExhausted";
        case Err::Unparsable: return "Unparsable";
        case Err::Io: return "Io";
    }
    return "Unknown";
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string to_upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return out;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
    if (s.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[i])) !=
            std::tolower(static_cast<unsigned char>(prefix[i])))
            return false;
    }
    return true;
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_space = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_space = true;
        } else {
            if (in_space && !out.empty()) out.push_back(' ');
            in_space = false;
            out.push_back(c);
        }
    }
    return out;
}

std::pair<std::string, std::size_t> sanitize_utf8(std::string_view s) {
    static const char kReplacement[] = "\xEF\xBF\xBD";  // U+FFFD
    std::string out;
    out.reserve(s.size());
    std::size_t replaced = 0;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = s[i];
        std::size_t len;
        if (c < 0x80) len = 1;
        else if ((c & 0xE0) == 0xC0 && c >= 0xC2) len = 2;
        else if ((c & 0xF0) == 0xE0) len = 3;
        else if ((c & 0xF8) == 0xF0 && c <= 0xF4) len = 4;
        else {
            out.append(kReplacement);
            ++replaced;
            ++i;
            continue;
        }
        bool valid = i + len <= s.size();
        for (std::size_t j = 1; valid && j < len; ++j)
            valid = (static_cast<unsigned char>(s[i + j]) & 0xC0) == 0x80;
        if (valid) {
            out.append(s.substr(i, len));
            i += len;
        } else {
            out.append(kReplacement);
            ++replaced;
            ++i;
        }
    }
    return {std::move(out), replaced};
}

double round2(double x) {
    return std::floor(x * 100.0 + 0.5) / 100.0;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof(buf));
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

}  // namespace oa
