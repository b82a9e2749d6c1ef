#include <doctest.h>

#include <algorithm>
#include <set>

#include "golden_data.hpp"
#include "oa/reconcile.hpp"
#include "oa/rng.hpp"

using namespace oa;

namespace {

ClassifiedRow classified(int year, OaKind kind,
                         DelayStatus delayed = DelayStatus::Unknown) {
    ClassifiedRow row;
    row.rec.source = SourceDb::WOS;
    row.rec.native_id = "X";
    row.rec.year = year;
    row.category.kind = kind;
    row.category.delayed = delayed;
    return row;
}

SampleRow sample_row(std::string doi) {
    SampleRow row;
    row.doi = std::move(doi);
    return row;
}

bool has_cell(const AuditSummary& sum, const golden::AuditCellFixture& want) {
    for (const auto& cell : sum.cells) {
        if (cell.accessible == want.accessible && cell.licence == want.licence &&
            cell.unpaywall == want.unpaywall)
            return cell.frequency == want.frequency &&
                   cell.percent == doctest::Approx(want.percent);
    }
    return false;
}

}  // namespace

TEST_CASE("status mapping") {
    CHECK(crossref_status(LicenceStatus::OA) == SourceStatus::OpenAccess);
    CHECK(crossref_status(LicenceStatus::NonOA) == SourceStatus::ClosedAccess);
    CHECK(crossref_status(LicenceStatus::Unclear) == SourceStatus::NA);
    CHECK(crossref_status(LicenceStatus::None) == SourceStatus::NA);

    CHECK(unpaywall_status(std::nullopt) == SourceStatus::NA);
    UnpaywallRecord rec;
    CHECK(unpaywall_status(rec) == SourceStatus::NA);
    rec.is_oa = true;
    CHECK(unpaywall_status(rec) == SourceStatus::OpenAccess);
    rec.is_oa = false;
    CHECK(unpaywall_status(rec) == SourceStatus::ClosedAccess);
}

TEST_CASE("crosstab reproduces the published summaries") {
    SUBCASE("first corpus") {
        auto tab = crosstab_from_counts(golden::kWosCrosstab);
        REQUIRE(tab.ok());
        REQUIRE(tab.value().rows.size() == golden::kWosCrosstab.size());
        std::uint64_t total = 0;
        for (const auto& [cr, up, n] : golden::kWosCrosstab) total += n;
        CHECK(tab.value().total == total);
        for (std::size_t i = 0; i < tab.value().rows.size(); ++i) {
            const auto& row = tab.value().rows[i];
            CHECK(row.crossref == std::get<0>(golden::kWosCrosstab[i]));
            CHECK(row.unpaywall == std::get<1>(golden::kWosCrosstab[i]));
            CHECK(row.frequency == std::get<2>(golden::kWosCrosstab[i]));
            CHECK(row.percent == doctest::Approx(golden::kWosCrosstabPercents[i]));
        }
        CHECK(contradiction_rate(tab.value()) ==
              doctest::Approx(golden::kWosContradictionRate));
    }
    SUBCASE("second corpus") {
        auto tab = crosstab_from_counts(golden::kScopusCrosstab);
        REQUIRE(tab.ok());
        CHECK(contradiction_rate(tab.value()) ==
              doctest::Approx(golden::kScopusContradictionRate));
    }
}

TEST_CASE("crosstab properties") {
    SUBCASE("frequencies add up and counting matches pair expansion") {
        std::vector<std::pair<SourceStatus, SourceStatus>> pairs;
        Xoshiro256 rng(3);
        for (int i = 0; i < 5000; ++i)
            pairs.emplace_back(static_cast<SourceStatus>(rng.below(3)),
                               static_cast<SourceStatus>(rng.below(3)));
        auto tab = crosstab(pairs);
        REQUIRE(tab.ok());
        CHECK(tab.value().total == pairs.size());
        std::uint64_t sum = 0;
        double pct = 0.0;
        for (const auto& row : tab.value().rows) {
            sum += row.frequency;
            pct += row.percent;
            // spot-check one cell against direct counting
            std::uint64_t direct = std::count(pairs.begin(), pairs.end(),
                                              std::pair{row.crossref, row.unpaywall});
            CHECK(row.frequency == direct);
        }
        CHECK(sum == pairs.size());
        CHECK(pct == doctest::Approx(100.0).epsilon(0.001));
    }
    SUBCASE("ties are broken by status-name order") {
        auto tab = crosstab_from_counts({
            {SourceStatus::OpenAccess, SourceStatus::NA, 5},
            {SourceStatus::ClosedAccess, SourceStatus::NA, 5},
            {SourceStatus::NA, SourceStatus::OpenAccess, 5},
            {SourceStatus::NA, SourceStatus::ClosedAccess, 5},
        });
        REQUIRE(tab.ok());
        // ClosedAccess < NA < OpenAccess lexically
        CHECK(tab.value().rows[0].crossref == SourceStatus::ClosedAccess);
        CHECK(tab.value().rows[1].crossref == SourceStatus::NA);
        CHECK(tab.value().rows[1].unpaywall == SourceStatus::ClosedAccess);
        CHECK(tab.value().rows[2].unpaywall == SourceStatus::OpenAccess);
        CHECK(tab.value().rows[3].crossref == SourceStatus::OpenAccess);
    }
    SUBCASE("single cell is 100 percent") {
        auto tab = crosstab({{SourceStatus::OpenAccess, SourceStatus::OpenAccess}});
        REQUIRE(tab.ok());
        CHECK(tab.value().rows[0].percent == doctest::Approx(100.0));
        CHECK(contradiction_rate(tab.value()) == doctest::Approx(0.0));
    }
    SUBCASE("empty input is an error") {
        CHECK(crosstab({}).error().code == Err::EmptyCorpus);
    }
}

TEST_CASE("licence histogram") {
    LicenceHistogram hist;
    CrossrefWork work;
    work.doi = Doi{"10.1/a"};
    hist.add(work);  // zero licences
    for (int i = 0; i < 3; ++i) hist.add_count(1);
    hist.add_count(6);
    LicenceHistogram other;
    other.add_count(1);
    hist.merge(other);

    CHECK(hist.total() == 6);
    auto rows = hist.rows();
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].licence_count == 0);
    CHECK(rows[0].frequency == 1);
    CHECK(rows[1].licence_count == 1);
    CHECK(rows[1].frequency == 4);
    CHECK(rows[1].percent == doctest::Approx(66.67));
    CHECK(rows[2].licence_count == 6);
}

TEST_CASE("yearly trends filter NA and the year window") {
    std::vector<ClassifiedRow> rows = {
        classified(2016, OaKind::Gold, DelayStatus::NotDelayed),
        classified(2016, OaKind::Gold, DelayStatus::NotDelayed),
        classified(2016, OaKind::Hybrid, DelayStatus::Delayed),
        classified(2017, OaKind::Gold, DelayStatus::NotDelayed),
        classified(2016, OaKind::NA),       // excluded: residual category
        classified(1999, OaKind::Gold),     // excluded: before window
        classified(2018, OaKind::Closed),   // excluded: after window
    };
    auto trends = yearly_trends(rows, 2000, 2017);
    REQUIRE(trends.size() == 3);
    std::uint64_t total = 0;
    for (const auto& t : trends) {
        CHECK(t.year >= 2000);
        CHECK(t.year <= 2017);
        CHECK(t.kind != OaKind::NA);
        total += t.n;
    }
    CHECK(total == 4);
    auto gold2016 = std::find_if(trends.begin(), trends.end(), [](const TrendRow& t) {
        return t.year == 2016 && t.kind == OaKind::Gold;
    });
    REQUIRE(gold2016 != trends.end());
    CHECK(gold2016->n == 2);
    CHECK(gold2016->delayed == DelayStatus::NotDelayed);
}

TEST_CASE("draw_sample") {
    std::vector<SampleRow> corpus;
    for (int i = 0; i < 500; ++i) {
        auto row = sample_row("10.1/p" + std::to_string(i));
        row.pdf_accessible = PdfAccess::Accessible;  // must be blanked in output
        corpus.push_back(std::move(row));
    }

    auto a = draw_sample(corpus, 50, 42);
    auto b = draw_sample(corpus, 50, 42);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    REQUIRE(a.value().size() == 50);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < 50; ++i) {
        CHECK(a.value()[i].doi == b.value()[i].doi);  // deterministic per seed
        CHECK(a.value()[i].pdf_accessible == PdfAccess::Blank);
        seen.insert(a.value()[i].doi);
    }
    CHECK(seen.size() == 50);  // without replacement

    auto c = draw_sample(corpus, 50, 43);
    REQUIRE(c.ok());
    bool differs = false;
    for (std::size_t i = 0; i < 50; ++i)
        if (c.value()[i].doi != a.value()[i].doi) differs = true;
    CHECK(differs);

    CHECK(draw_sample(corpus, 0, 1).value().empty());
    auto whole = draw_sample(corpus, corpus.size(), 7);
    REQUIRE(whole.ok());
    std::set<std::string> all;
    for (const auto& row : whole.value()) all.insert(row.doi);
    CHECK(all.size() == corpus.size());
    CHECK(draw_sample(corpus, corpus.size() + 1, 1).error().code == Err::SampleTooLarge);
}

TEST_CASE("audit summary reproduces the published checks") {
    struct Fixture {
        const std::vector<golden::AuditCellFixture>* cells;
        std::uint64_t total;
        double accessible_nonoa, inaccessible_oa, contradictions;
    };
    for (const auto& fix : {
             Fixture{&golden::kWosAudit, 222, golden::kWosAccessibleNonOa,
                     golden::kWosInaccessibleOa, golden::kWosSampleContradictions},
             Fixture{&golden::kScopusAudit, 227, golden::kScopusAccessibleNonOa,
                     golden::kScopusInaccessibleOa, golden::kScopusSampleContradictions},
         }) {
        auto rows = golden::expand_audit(*fix.cells);
        // row order must not matter
        std::reverse(rows.begin(), rows.end());
        auto sum = summarize_manual_checks(rows);
        REQUIRE(sum.ok());
        CHECK(sum.value().total == fix.total);
        REQUIRE(sum.value().cells.size() == fix.cells->size());
        for (const auto& want : *fix.cells) CHECK(has_cell(sum.value(), want));
        for (std::size_t i = 1; i < sum.value().cells.size(); ++i)
            CHECK(sum.value().cells[i - 1].frequency >= sum.value().cells[i].frequency);
        CHECK(sum.value().accessible_nonoa_pct == doctest::Approx(fix.accessible_nonoa));
        CHECK(sum.value().inaccessible_oa_pct == doctest::Approx(fix.inaccessible_oa));
        CHECK(sum.value().contradiction_pct == doctest::Approx(fix.contradictions));
    }
}

TEST_CASE("audit summary edge cases") {
    SUBCASE("a blank row is a hard error") {
        auto rows = golden::expand_audit(golden::kWosAudit);
        rows[10].pdf_accessible = PdfAccess::Blank;
        CHECK(summarize_manual_checks(rows).error().code == Err::UnfilledRows);
    }
    SUBCASE("no rows is a hard error") {
        CHECK(summarize_manual_checks({}).error().code == Err::EmptyCorpus);
    }
    SUBCASE("fully agreeing audit has zero headline rates") {
        std::vector<ManualCheckRow> rows;
        for (int i = 0; i < 10; ++i) {
            auto row = sample_row("10.1/ok" + std::to_string(i));
            row.licence_status = SourceStatus::OpenAccess;
            row.unpaywall_status = SourceStatus::OpenAccess;
            row.pdf_accessible = PdfAccess::Accessible;
            rows.push_back(std::move(row));
        }
        auto sum = summarize_manual_checks(rows);
        REQUIRE(sum.ok());
        CHECK(sum.value().accessible_nonoa_pct == doctest::Approx(0.0));
        CHECK(sum.value().inaccessible_oa_pct == doctest::Approx(0.0));
        CHECK(sum.value().contradiction_pct == doctest::Approx(0.0));
        CHECK(sum.value().cells.size() == 1);
        CHECK(sum.value().cells[0].percent == doctest::Approx(100.0));
    }
}
