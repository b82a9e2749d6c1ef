#include "oa/identifiers.hpp"

#include <array>
#include <cctype>

namespace oa {

namespace {

const std::array<std::string_view, 8> kDoiPrefixes = {
    "https://dx.doi.org/", "http://dx.doi.org/",
    "https://doi.org/",    "http://doi.org/",
    "https://www.doi.org/", "http://www.doi.org/",
    "doi.org/",            "doi:",
};

}  // namespace

Result<Doi> normalize_doi(const std::string& raw) {
    std::string s = trim(raw);
    bool stripped = true;
    while (stripped) {
        stripped = false;
        for (auto prefix : kDoiPrefixes) {
            if (starts_with_ci(s, prefix)) {
                s = s.substr(prefix.size());
                stripped = true;
            }
        }
    }
    s = to_lower(trim(s));
    if (s.rfind("10.", 0) != 0 || s.find('/') == std::string::npos)
        return Error{Err::MalformedDoi, "not a DOI: " + raw};
    return Doi{std::move(s)};
}

char issn_check_digit(const std::string& seven_digits) {
    int sum = 0;
    for (int i = 0; i < 7; ++i)
        sum += (seven_digits[i] - '0') * (8 - i);
    int check = (11 - sum % 11) % 11;
    return check == 10 ? 'X' : static_cast<char>('0' + check);
}

Result<Issn> validate_issn(const std::string& raw) {
    std::string s = to_upper(trim(raw));
    if (s.size() == 9 && s[4] == '-') s.erase(4, 1);
    if (s.size() != 8)
        return Error{Err::MalformedIssn, "bad shape: " + raw};
    for (int i = 0; i < 7; ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return Error{Err::MalformedIssn, "bad shape: " + raw};
    if (!std::isdigit(static_cast<unsigned char>(s[7])) && s[7] != 'X')
        return Error{Err::MalformedIssn, "bad shape: " + raw};
    if (s[7] != issn_check_digit(s))
        return Error{Err::BadCheckDigit, "check digit mismatch: " + raw};
    return Issn{s.substr(0, 4) + "-" + s.substr(4)};
}

}  // namespace oa
