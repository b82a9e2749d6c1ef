#include <doctest.h>

#include <algorithm>
#include <set>
#include <tuple>
#include <vector>

#include "oa/licence.hpp"
#include "oa/rng.hpp"

using namespace oa;

namespace {

// Independent calendar oracle: walk day by day.
bool oracle_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }
int oracle_month_days(int y, int m) {
    static const int d[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && oracle_leap(y) ? 29 : d[m - 1];
}
long oracle_days_between(Date a, Date b) {
    long days = 0;
    while (std::tuple(a.year, a.month, a.day) < std::tuple(b.year, b.month, b.day)) {
        if (++a.day > oracle_month_days(a.year, a.month)) {
            a.day = 1;
            if (++a.month > 12) {
                a.month = 1;
                ++a.year;
            }
        }
        ++days;
    }
    return days;
}

LicencePolicy test_policy() {
    auto policy = LicencePolicy::parse(
        "# fixture policy\n"
        "OA https://creativecommons.org/licenses\n"
        "OA https://creativecommons.org/publicdomain\n"
        "NONOA https://www.elsevier.com/tdm/userlicense\n"
        "NONOA https://publisher.example.org/\n"
        "OA https://publisher.example.org/open\n");
    REQUIRE(policy.ok());
    return policy.value();
}

LicenceEntry url_entry(std::string url) {
    LicenceEntry e;
    e.url = std::move(url);
    return e;
}

}  // namespace

TEST_CASE("licence url normalization") {
    CHECK(normalize_licence_url("HTTP://CreativeCommons.org/licenses/by/4.0/") ==
          "https://creativecommons.org/licenses/by/4.0");
    CHECK(normalize_licence_url("https://a.org/x") == "https://a.org/x");
    CHECK(normalize_licence_url("https://a.org/x#sec") == "https://a.org/x");
    CHECK(normalize_licence_url("  plain text  ") == "plain text");

    Xoshiro256 rng(11);
    const std::string alphabet = "aB/:#.h tp";
    for (int i = 0; i < 2000; ++i) {
        std::string raw;
        std::size_t len = rng.below(24);
        for (std::size_t j = 0; j < len; ++j)
            raw.push_back(alphabet[rng.below(alphabet.size())]);
        auto once = normalize_licence_url(raw);
        CHECK(normalize_licence_url(once) == once);
    }
}

TEST_CASE("policy classification is by longest matching prefix") {
    auto policy = test_policy();
    CHECK(classify_licence_url("https://creativecommons.org/licenses/by/4.0/", policy) ==
          LicenceClass::OA);
    CHECK(classify_licence_url("https://www.elsevier.com/tdm/userlicense/1.0", policy) ==
          LicenceClass::NonOA);
    CHECK(classify_licence_url("https://unknown.example.com/whatever", policy) ==
          LicenceClass::Unclear);
    // the longer OA prefix overrides the shorter non-OA one
    CHECK(classify_licence_url("https://publisher.example.org/open/cc", policy) ==
          LicenceClass::OA);
    CHECK(classify_licence_url("https://publisher.example.org/closed", policy) ==
          LicenceClass::NonOA);
}

TEST_CASE("policy rejects a prefix present in both lists") {
    auto bad = LicencePolicy::parse("OA https://x.org/a\nNONOA https://x.org/a/\n");
    CHECK(!bad.ok());
}

TEST_CASE("compute_delay") {
    LicenceEntry entry;
    entry.delay_in_days = 365;
    CHECK(compute_delay(entry, std::nullopt) == 365);

    LicenceEntry dated;
    dated.start_date = Date{2017, 7, 1};
    CHECK(oracle_days_between(Date{2017, 1, 1}, Date{2017, 7, 1}) == 181);
    CHECK(compute_delay(dated, Date{2017, 1, 1}) == 181);

    // start before issue clamps to zero
    CHECK(compute_delay(dated, Date{2018, 1, 1}) == 0);
    CHECK(compute_delay(url_entry("x"), Date{2017, 1, 1}) == std::nullopt);
    CHECK(compute_delay(url_entry("x"), std::nullopt) == std::nullopt);
}

TEST_CASE("compute_delay matches the day-walking oracle on random dates") {
    Xoshiro256 rng(23);
    for (int i = 0; i < 500; ++i) {
        Date issued{2015 + static_cast<int>(rng.below(3)),
                    1 + static_cast<int>(rng.below(12)),
                    1 + static_cast<int>(rng.below(28))};
        Date start{issued.year + static_cast<int>(rng.below(3)),
                   1 + static_cast<int>(rng.below(12)),
                   1 + static_cast<int>(rng.below(28))};
        LicenceEntry entry;
        entry.start_date = start;
        long expected = oracle_days_between(issued, start);  // 0 when start <= issued
        CHECK(compute_delay(entry, issued) == static_cast<int>(expected));
    }
}

TEST_CASE("resolve_licences four-step behaviour") {
    auto policy = test_policy();
    const std::string oa_url = "https://creativecommons.org/licenses/by/4.0/";
    const std::string nonoa_url = "https://www.elsevier.com/tdm/userlicense/1.0";
    const std::string unclear_url = "https://unknown.example.com/x";

    SUBCASE("empty input is None") {
        auto r = resolve_licences({}, std::nullopt, policy);
        CHECK(r.status == LicenceStatus::None);
        CHECK(r.delayed == DelayStatus::Unknown);
        CHECK(r.distinct_urls == 0);
    }
    SUBCASE("mixture of OA and non-OA is OA") {
        auto r = resolve_licences({url_entry(oa_url), url_entry(nonoa_url)}, std::nullopt,
                                  policy);
        CHECK(r.status == LicenceStatus::OA);
        CHECK(r.distinct_urls == 2);
    }
    SUBCASE("duplicate non-OA urls collapse") {
        auto r = resolve_licences({url_entry(nonoa_url), url_entry(nonoa_url)}, std::nullopt,
                                  policy);
        CHECK(r.status == LicenceStatus::NonOA);
        CHECK(r.distinct_urls == 1);
    }
    SUBCASE("single unclear url is Unclear") {
        auto r = resolve_licences({url_entry(unclear_url)}, std::nullopt, policy);
        CHECK(r.status == LicenceStatus::Unclear);
    }
    SUBCASE("non-OA beats unclear in mixtures without OA") {
        auto r = resolve_licences({url_entry(unclear_url), url_entry(nonoa_url)},
                                  std::nullopt, policy);
        CHECK(r.status == LicenceStatus::NonOA);
    }
    SUBCASE("single delayed OA licence") {
        LicenceEntry entry = url_entry(oa_url);
        entry.delay_in_days = 365;
        auto r = resolve_licences({entry}, std::nullopt, policy);
        CHECK(r.status == LicenceStatus::OA);
        CHECK(r.delayed == DelayStatus::Delayed);
        CHECK(r.max_delay_days == 365);
    }
    SUBCASE("one undelayed licence makes the publication not delayed") {
        LicenceEntry delayed = url_entry(oa_url);
        delayed.delay_in_days = 365;
        LicenceEntry undelayed = url_entry(nonoa_url);
        undelayed.delay_in_days = 0;
        auto r = resolve_licences({delayed, undelayed}, std::nullopt, policy);
        CHECK(r.delayed == DelayStatus::NotDelayed);
        CHECK(r.max_delay_days == 365);
    }
    SUBCASE("grace period") {
        LicenceEntry entry = url_entry(oa_url);
        entry.delay_in_days = 20;
        CHECK(resolve_licences({entry}, std::nullopt, policy).delayed ==
              DelayStatus::Delayed);
        CHECK(resolve_licences({entry}, std::nullopt, policy, ResolveConfig{30}).delayed ==
              DelayStatus::NotDelayed);
    }
}

TEST_CASE("resolution algebra over all multisets of size <= 4") {
    auto policy = test_policy();
    const std::vector<std::string> pool = {
        "https://creativecommons.org/licenses/by/4.0",
        "https://creativecommons.org/publicdomain/zero/1.0",
        "https://www.elsevier.com/tdm/userlicense/1.0",
        "https://publisher.example.org/subscription",
        "https://unknown.example.com/x",
    };
    auto cls = [&](const std::string& url) { return policy.classify(url); };
    auto resolve_seq = [&](const std::vector<std::size_t>& seq) {
        std::vector<LicenceEntry> entries;
        for (auto i : seq) entries.push_back(url_entry(pool[i]));
        return resolve_licences(entries, std::nullopt, policy);
    };

    std::vector<std::vector<std::size_t>> sequences = {{}};
    for (int len = 1; len <= 4; ++len) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& seq : sequences) {
            if (seq.size() != static_cast<std::size_t>(len - 1)) {
                next.push_back(seq);
                continue;
            }
            next.push_back(seq);
            for (std::size_t i = 0; i < pool.size(); ++i) {
                auto grown = seq;
                grown.push_back(i);
                next.push_back(std::move(grown));
            }
        }
        sequences = std::move(next);
    }

    auto rank = [](LicenceStatus s) {
        switch (s) {
            case LicenceStatus::OA: return 3;
            case LicenceStatus::NonOA: return 2;
            case LicenceStatus::Unclear: return 1;
            case LicenceStatus::None: return 0;
        }
        return 0;
    };

    for (const auto& seq : sequences) {
        auto r = resolve_seq(seq);

        // four-step post-conditions
        bool any_oa = false, any_nonoa = false;
        std::set<std::size_t> distinct(seq.begin(), seq.end());
        for (auto i : seq) {
            if (cls(pool[i]) == LicenceClass::OA) any_oa = true;
            if (cls(pool[i]) == LicenceClass::NonOA) any_nonoa = true;
        }
        if (seq.empty()) CHECK(r.status == LicenceStatus::None);
        else if (any_oa) CHECK(r.status == LicenceStatus::OA);
        else if (any_nonoa) CHECK(r.status == LicenceStatus::NonOA);
        else CHECK(r.status == LicenceStatus::Unclear);
        CHECK(r.distinct_urls == static_cast<int>(distinct.size()));

        // permutation invariance
        auto sorted = seq;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        auto rs = resolve_seq(sorted);
        CHECK(rs.status == r.status);
        CHECK(rs.distinct_urls == r.distinct_urls);
        CHECK(rs.delayed == r.delayed);

        // duplication invariance
        if (!seq.empty()) {
            auto dup = seq;
            dup.push_back(seq.front());
            auto rd = resolve_seq(dup);
            CHECK(rd.status == r.status);
            CHECK(rd.distinct_urls == r.distinct_urls);
        }

        // union dominance against every non-empty suffix split
        for (std::size_t cut = 1; cut < seq.size(); ++cut) {
            std::vector<std::size_t> a(seq.begin(), seq.begin() + cut);
            std::vector<std::size_t> b(seq.begin() + cut, seq.end());
            auto ra = resolve_seq(a), rb = resolve_seq(b);
            CHECK(rank(r.status) == std::max(rank(ra.status), rank(rb.status)));
        }
    }
}
