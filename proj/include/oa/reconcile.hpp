#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oa/classify.hpp"
#include "oa/licence.hpp"
#include "oa/records.hpp"
#include "oa/util.hpp"

namespace oa {

enum class SourceStatus { OpenAccess, ClosedAccess, NA };
enum class PdfAccess { Blank, Accessible, NoAccess, NA };

const char* to_string(SourceStatus s);
const char* to_string(PdfAccess a);
std::optional<SourceStatus> parse_source_status(const std::string& s);
std::optional<PdfAccess> parse_pdf_access(const std::string& s);

SourceStatus crossref_status(const ResolvedLicence& resolved);
SourceStatus crossref_status(LicenceStatus status);
SourceStatus unpaywall_status(const std::optional<UnpaywallRecord>& rec);

struct CrossTabRow {
    SourceStatus crossref;
    SourceStatus unpaywall;
    std::uint64_t frequency = 0;
    double percent = 0.0;  // half-up, 2 decimals
};

struct CrossTab {
    std::vector<CrossTabRow> rows;  // descending frequency
    std::uint64_t total = 0;
};

/// Frequency table over (crossref, unpaywall) status pairs, sorted by
/// descending frequency; ties broken by status-name lexical order.
Result<CrossTab> crosstab(const std::vector<std::pair<SourceStatus, SourceStatus>>& pairs);
Result<CrossTab> crosstab_from_counts(
    const std::vector<std::tuple<SourceStatus, SourceStatus, std::uint64_t>>& cells);

/// Percent of contradictory cells {(NA,OA), (Closed,OA), (OA,Closed)},
/// the sum of the rounded per-cell percents (so the rate matches what
/// the printed table adds up to).
double contradiction_rate(const CrossTab& tab);

struct HistogramRow {
    std::size_t licence_count = 0;
    std::uint64_t frequency = 0;
    double percent = 0.0;
};

/// Licence-count distribution over works (before URL deduplication).
class LicenceHistogram {
public:
    void add(const CrossrefWork& work) { add_count(work.licences.size()); }
    void add_count(std::size_t licences) { ++buckets_[licences]; }
    void merge(const LicenceHistogram& o);
    std::vector<HistogramRow> rows() const;  // ascending licence count
    std::uint64_t total() const;

private:
    std::map<std::size_t, std::uint64_t> buckets_;
};

struct TrendRow {
    int year = 0;
    OaKind kind = OaKind::NA;
    DelayStatus delayed = DelayStatus::Unknown;
    std::uint64_t n = 0;
};

/// Per-year category counts for years in [year_min, year_max]; NA
/// excluded to mirror the trend figures.
std::vector<TrendRow> yearly_trends(const std::vector<ClassifiedRow>& classified,
                                    int year_min, int year_max);

struct SampleRow {
    std::string doi;
    SourceStatus licence_status = SourceStatus::NA;
    SourceStatus unpaywall_status = SourceStatus::NA;
    std::string pdf_url;
    PdfAccess pdf_accessible = PdfAccess::Blank;
};
using ManualCheckRow = SampleRow;  // same shape with pdf_accessible filled

/// Uniform sample without replacement; deterministic per seed.
Result<std::vector<SampleRow>> draw_sample(const std::vector<SampleRow>& corpus,
                                           std::size_t n, std::uint64_t seed);

struct AuditCell {
    PdfAccess accessible;
    SourceStatus licence;
    SourceStatus unpaywall;
    std::uint64_t frequency = 0;
    double percent = 0.0;
};

struct AuditSummary {
    std::vector<AuditCell> cells;  // descending frequency
    std::uint64_t total = 0;
    /// PDF accessible while the licence side is not Open Access.
    double accessible_nonoa_pct = 0.0;
    /// No PDF access while either source says Open Access.
    double inaccessible_oa_pct = 0.0;
    /// Crossref and Unpaywall strictly contradict (OA vs Closed).
    double contradiction_pct = 0.0;
};

Result<AuditSummary> summarize_manual_checks(const std::vector<ManualCheckRow>& rows);

}  // namespace oa
