#include <doctest.h>

#include "oa/identifiers.hpp"
#include "oa/rng.hpp"

using namespace oa;

namespace {

// Independent mod-11 oracle: weighted sum over the first seven digits,
// weights 8 down to 2; check digit is (11 - sum mod 11) mod 11, 10 → X.
char oracle_check_digit(const std::string& digits) {
    int sum = 0;
    int weight = 8;
    for (char c : digits) sum += (c - '0') * weight--;
    int rem = sum % 11;
    int check = (11 - rem) % 11;
    return check == 10 ? 'X' : static_cast<char>('0' + check);
}

}  // namespace

TEST_CASE("doi normalization strips resolver prefixes and lowercases") {
    auto d = normalize_doi("https://doi.org/10.1000/XYZ");
    REQUIRE(d.ok());
    CHECK(d.value().value == "10.1000/xyz");

    CHECK(normalize_doi("10.1000/xyz").value().value == "10.1000/xyz");
    CHECK(normalize_doi("doi:10.1000/xyz").value().value == "10.1000/xyz");
    CHECK(normalize_doi("  http://dx.doi.org/10.1/A  ").value().value == "10.1/a");
}

TEST_CASE("doi normalization rejects malformed input") {
    CHECK(normalize_doi("not-a-doi").error().code == Err::MalformedDoi);
    CHECK(normalize_doi("11.1000/xyz").error().code == Err::MalformedDoi);
    CHECK(normalize_doi("10.1000").error().code == Err::MalformedDoi);
    CHECK(normalize_doi("").error().code == Err::MalformedDoi);
}

TEST_CASE("doi normalization is idempotent over a fuzz corpus") {
    Xoshiro256 rng(0x5eedULL);
    const std::string alphabet =
        "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789./:-_ ";
    int normalized = 0;
    for (int i = 0; i < 10000; ++i) {
        std::string raw;
        if (rng.below(2)) raw = "https://doi.org/";
        raw += "10.";
        std::size_t len = rng.below(30);
        for (std::size_t j = 0; j < len; ++j)
            raw.push_back(alphabet[rng.below(alphabet.size())]);
        auto first = normalize_doi(raw);
        if (!first.ok()) continue;
        ++normalized;
        auto second = normalize_doi(first.value().value);
        REQUIRE(second.ok());
        CHECK(second.value().value == first.value().value);
    }
    CHECK(normalized > 1000);  // the corpus actually exercises the happy path
}

TEST_CASE("issn validation against the mod-11 oracle") {
    // 2049-3630: weighted sum 121, 121 mod 11 = 0, check digit 0
    CHECK(oracle_check_digit("2049363") == '0');
    auto issn = validate_issn("20493630");
    REQUIRE(issn.ok());
    CHECK(issn.value().value == "2049-3630");

    CHECK(validate_issn("2049-3630").value().value == "2049-3630");
    CHECK(validate_issn("2049-3631").error().code == Err::BadCheckDigit);
    CHECK(validate_issn("abcd-1234").error().code == Err::MalformedIssn);
    CHECK(validate_issn("2049 3630").error().code == Err::MalformedIssn);
    CHECK(validate_issn("").error().code == Err::MalformedIssn);
}

TEST_CASE("issn check digit X and lowercase input") {
    // find an ISSN whose oracle digit is X and round-trip it
    Xoshiro256 rng(7);
    for (int i = 0; i < 2000; ++i) {
        std::string digits;
        for (int j = 0; j < 7; ++j)
            digits.push_back(static_cast<char>('0' + rng.below(10)));
        char check = oracle_check_digit(digits);
        auto issn = validate_issn(digits + check);
        REQUIRE(issn.ok());
        CHECK(issn.value().value[8] == check);
        if (check == 'X') {
            auto lower = validate_issn(digits + "x");
            REQUIRE(lower.ok());
            CHECK(lower.value().value.back() == 'X');
        }
    }
}
