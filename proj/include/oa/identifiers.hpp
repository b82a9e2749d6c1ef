#pragma once

#include <string>

#include "oa/util.hpp"

namespace oa {

/// Canonical DOI: lowercase, no resolver prefix, starts with "10.",
/// contains "/".
struct Doi {
    std::string value;

    auto operator<=>(const Doi&) const = default;
};

/// Canonical ISSN: "NNNN-NNNC" with a valid mod-11 check digit
/// (C is a digit or 'X').
struct Issn {
    std::string value;

    auto operator<=>(const Issn&) const = default;
};

/// Strips resolver prefixes ("doi:", "http(s)://(dx.)doi.org/", ...),
/// trims and lowercases. Idempotent.
Result<Doi> normalize_doi(const std::string& raw);

/// Accepts "NNNNNNNC" or "NNNN-NNNC" in either case; validates the
/// mod-11 check digit (weights 8..2 over the first seven digits).
Result<Issn> validate_issn(const std::string& raw);

/// Check digit implied by the first seven digits, as a character.
char issn_check_digit(const std::string& seven_digits);

}  // namespace oa
