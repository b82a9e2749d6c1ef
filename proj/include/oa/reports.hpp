#pragma once

#include <string>
#include <vector>

#include "oa/classify.hpp"
#include "oa/ingest.hpp"
#include "oa/reconcile.hpp"
#include "oa/util.hpp"

namespace oa {

/// Row of classified.csv, the interchange format between the classify
/// stage and the report generators.
struct ClassifiedCsvRow {
    SourceDb source = SourceDb::WOS;
    std::string native_id;
    std::string doi;  // empty when unknown
    int year = 0;
    OaKind category = OaKind::NA;
    DelayStatus delayed = DelayStatus::Unknown;
    SourceStatus crossref = SourceStatus::NA;
    int distinct_urls = 0;
    std::string max_delay_days;  // empty when unset
};

ClassifiedCsvRow to_csv_row(const ClassifiedRow& row);

Result<bool> write_classified_csv(const std::string& path,
                                  const std::vector<ClassifiedRow>& rows,
                                  const std::string& manifest_digest);
Result<std::vector<ClassifiedCsvRow>> read_classified_csv(const std::string& path);

struct IngestReportRow {
    std::string input;
    IngestStats stats;
};

Result<bool> write_ingest_report(const std::string& path,
                                 const std::vector<IngestReportRow>& rows,
                                 const std::string& manifest_digest);

Result<bool> write_crosstab_csv(const std::string& path, const CrossTab& tab,
                                const std::string& manifest_digest);
Result<bool> write_trends_csv(const std::string& path,
                              const std::vector<TrendRow>& rows,
                              const std::string& manifest_digest);
Result<bool> write_histogram_csv(const std::string& path, const LicenceHistogram& hist,
                                 const std::string& manifest_digest);

Result<bool> write_sample_csv(const std::string& path,
                              const std::vector<SampleRow>& rows,
                              const std::string& manifest_digest);
Result<std::vector<ManualCheckRow>> read_sample_csv(const std::string& path);

Result<bool> write_audit_summary_csv(const std::string& path, const AuditSummary& summary,
                                     const std::string& manifest_digest);

std::string format_percent(double value);

}  // namespace oa
