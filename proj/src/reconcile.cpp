#include "oa/reconcile.hpp"

#include <algorithm>
#include <cstring>

#include "oa/rng.hpp"

namespace oa {

const char* to_string(SourceStatus s) {
    switch (s) {
        case SourceStatus::OpenAccess: return "OpenAccess";
        case SourceStatus::ClosedAccess: return "ClosedAccess";
        case SourceStatus::NA: return "NA";
    }
    return "NA";
}

const char* to_string(PdfAccess a) {
    switch (a) {
        case PdfAccess::Blank: return "";
        case PdfAccess::Accessible: return "Accessible";
        case PdfAccess::NoAccess: return "NoAccess";
        case PdfAccess::NA: return "NA";
    }
    return "";
}

std::optional<SourceStatus> parse_source_status(const std::string& s) {
    if (s == "OpenAccess") return SourceStatus::OpenAccess;
    if (s == "ClosedAccess") return SourceStatus::ClosedAccess;
    if (s == "NA") return SourceStatus::NA;
    return std::nullopt;
}

std::optional<PdfAccess> parse_pdf_access(const std::string& s) {
    if (s.empty()) return PdfAccess::Blank;
    if (s == "Accessible") return PdfAccess::Accessible;
    if (s == "NoAccess") return PdfAccess::NoAccess;
    if (s == "NA") return PdfAccess::NA;
    return std::nullopt;
}

SourceStatus crossref_status(LicenceStatus status) {
    switch (status) {
        case LicenceStatus::OA: return SourceStatus::OpenAccess;
        case LicenceStatus::NonOA: return SourceStatus::ClosedAccess;
        case LicenceStatus::Unclear:
        case LicenceStatus::None: return SourceStatus::NA;
    }
    return SourceStatus::NA;
}

SourceStatus crossref_status(const ResolvedLicence& resolved) {
    return crossref_status(resolved.status);
}

SourceStatus unpaywall_status(const std::optional<UnpaywallRecord>& rec) {
    if (!rec || !rec->is_oa) return SourceStatus::NA;
    return *rec->is_oa ? SourceStatus::OpenAccess : SourceStatus::ClosedAccess;
}

namespace {

double percent_of(std::uint64_t freq, std::uint64_t total) {
    return round2(100.0 * static_cast<double>(freq) / static_cast<double>(total));
}

bool status_lex_less(SourceStatus a, SourceStatus b) {
    return std::strcmp(to_string(a), to_string(b)) < 0;
}

Result<CrossTab> build_crosstab(std::map<std::pair<int, int>, std::uint64_t>& cells) {
    CrossTab tab;
    for (auto& [key, freq] : cells) tab.total += freq;
    if (tab.total == 0) return Error{Err::EmptyCorpus, "no status pairs"};
    for (auto& [key, freq] : cells) {
        CrossTabRow row;
        row.crossref = static_cast<SourceStatus>(key.first);
        row.unpaywall = static_cast<SourceStatus>(key.second);
        row.frequency = freq;
        row.percent = percent_of(freq, tab.total);
        tab.rows.push_back(row);
    }
    std::stable_sort(tab.rows.begin(), tab.rows.end(),
                     [](const CrossTabRow& a, const CrossTabRow& b) {
                         if (a.frequency != b.frequency) return a.frequency > b.frequency;
                         if (a.crossref != b.crossref)
                             return status_lex_less(a.crossref, b.crossref);
                         return status_lex_less(a.unpaywall, b.unpaywall);
                     });
    return tab;
}

}  // namespace

Result<CrossTab> crosstab(const std::vector<std::pair<SourceStatus, SourceStatus>>& pairs) {
    std::map<std::pair<int, int>, std::uint64_t> cells;
    for (auto [cr, up] : pairs)
        ++cells[{static_cast<int>(cr), static_cast<int>(up)}];
    return build_crosstab(cells);
}

Result<CrossTab> crosstab_from_counts(
    const std::vector<std::tuple<SourceStatus, SourceStatus, std::uint64_t>>& cells_in) {
    std::map<std::pair<int, int>, std::uint64_t> cells;
    for (auto [cr, up, n] : cells_in)
        cells[{static_cast<int>(cr), static_cast<int>(up)}] += n;
    return build_crosstab(cells);
}

double contradiction_rate(const CrossTab& tab) {
    // Summing the table's rounded cell percents keeps the rate equal to
    // what a reader adds up from the printed table.
    double pct = 0.0;
    for (const auto& row : tab.rows) {
        bool hit = (row.crossref == SourceStatus::NA &&
                    row.unpaywall == SourceStatus::OpenAccess) ||
                   (row.crossref == SourceStatus::ClosedAccess &&
                    row.unpaywall == SourceStatus::OpenAccess) ||
                   (row.crossref == SourceStatus::OpenAccess &&
                    row.unpaywall == SourceStatus::ClosedAccess);
        if (hit) pct += row.percent;
    }
    return round2(pct);
}

void LicenceHistogram::merge(const LicenceHistogram& o) {
    for (auto [count, freq] : o.buckets_) buckets_[count] += freq;
}

std::uint64_t LicenceHistogram::total() const {
    std::uint64_t t = 0;
    for (auto [count, freq] : buckets_) t += freq;
    return t;
}

std::vector<HistogramRow> LicenceHistogram::rows() const {
    std::uint64_t t = total();
    std::vector<HistogramRow> out;
    for (auto [count, freq] : buckets_)
        out.push_back({count, freq, t ? percent_of(freq, t) : 0.0});
    return out;
}

std::vector<TrendRow> yearly_trends(const std::vector<ClassifiedRow>& classified,
                                    int year_min, int year_max) {
    std::map<std::tuple<int, int, int>, std::uint64_t> counts;
    for (const auto& row : classified) {
        if (row.category.kind == OaKind::NA) continue;
        if (row.rec.year < year_min || row.rec.year > year_max) continue;
        ++counts[{row.rec.year, static_cast<int>(row.category.kind),
                  static_cast<int>(row.category.delayed)}];
    }
    std::vector<TrendRow> out;
    for (auto& [key, n] : counts) {
        auto [year, kind, delayed] = key;
        out.push_back({year, static_cast<OaKind>(kind),
                       static_cast<DelayStatus>(delayed), n});
    }
    return out;
}

Result<std::vector<SampleRow>> draw_sample(const std::vector<SampleRow>& corpus,
                                           std::size_t n, std::uint64_t seed) {
    if (n > corpus.size())
        return Error{Err::SampleTooLarge,
                     "sample of " + std::to_string(n) + " from " +
                         std::to_string(corpus.size())};
    auto indices = sample_indices(corpus.size(), n, seed);
    std::vector<SampleRow> out;
    out.reserve(n);
    for (auto i : indices) {
        SampleRow row = corpus[i];
        row.pdf_accessible = PdfAccess::Blank;
        out.push_back(std::move(row));
    }
    return out;
}

Result<AuditSummary> summarize_manual_checks(const std::vector<ManualCheckRow>& rows) {
    AuditSummary sum;
    std::map<std::tuple<int, int, int>, std::uint64_t> cells;
    for (const auto& row : rows) {
        if (row.pdf_accessible == PdfAccess::Blank)
            return Error{Err::UnfilledRows, "blank pdf_accessible for " + row.doi};
        ++cells[{static_cast<int>(row.pdf_accessible), static_cast<int>(row.licence_status),
                 static_cast<int>(row.unpaywall_status)}];
    }
    sum.total = rows.size();
    if (sum.total == 0) return Error{Err::EmptyCorpus, "no audit rows"};
    for (auto& [key, freq] : cells) {
        auto [acc, lic, up] = key;
        sum.cells.push_back({static_cast<PdfAccess>(acc), static_cast<SourceStatus>(lic),
                             static_cast<SourceStatus>(up), freq,
                             percent_of(freq, sum.total)});
    }
    std::stable_sort(sum.cells.begin(), sum.cells.end(),
                     [](const AuditCell& a, const AuditCell& b) {
                         return a.frequency > b.frequency;
                     });
    // Headline rates aggregate the rounded cell percents so they match
    // what the printed table adds up to.
    double accessible_nonoa = 0.0, inaccessible_oa = 0.0, contradictions = 0.0;
    for (const auto& cell : sum.cells) {
        if (cell.accessible == PdfAccess::Accessible &&
            cell.licence != SourceStatus::OpenAccess)
            accessible_nonoa += cell.percent;
        if (cell.accessible == PdfAccess::NoAccess &&
            (cell.licence == SourceStatus::OpenAccess ||
             cell.unpaywall == SourceStatus::OpenAccess))
            inaccessible_oa += cell.percent;
        if ((cell.licence == SourceStatus::OpenAccess &&
             cell.unpaywall == SourceStatus::ClosedAccess) ||
            (cell.licence == SourceStatus::ClosedAccess &&
             cell.unpaywall == SourceStatus::OpenAccess))
            contradictions += cell.percent;
    }
    sum.accessible_nonoa_pct = round2(accessible_nonoa);
    sum.inaccessible_oa_pct = round2(inaccessible_oa);
    sum.contradiction_pct = round2(contradictions);
    return sum;
}

}  // namespace oa
