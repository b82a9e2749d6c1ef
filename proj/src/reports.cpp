#include "oa/reports.hpp"

#include <cstdio>
#include <fstream>

#include "oa/csv.hpp"

namespace oa {

namespace {

Result<std::ofstream> open_out(const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) return Error{Err::Io, "cannot write " + path};
    return out;
}

void finish(CsvWriter& csv, const std::string& manifest_digest) {
    if (!manifest_digest.empty()) csv.comment("manifest=" + manifest_digest);
}

}  // namespace

std::string format_percent(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

ClassifiedCsvRow to_csv_row(const ClassifiedRow& row) {
    ClassifiedCsvRow out;
    out.source = row.rec.source;
    out.native_id = row.rec.native_id;
    if (row.rec.doi) out.doi = row.rec.doi->value;
    out.year = row.rec.year;
    out.category = row.category.kind;
    out.delayed = row.category.delayed;
    out.crossref = crossref_status(row.resolved);
    out.distinct_urls = row.resolved.distinct_urls;
    if (row.resolved.max_delay_days)
        out.max_delay_days = std::to_string(*row.resolved.max_delay_days);
    return out;
}

Result<bool> write_classified_csv(const std::string& path,
                                  const std::vector<ClassifiedRow>& rows,
                                  const std::string& manifest_digest) {
    auto out = open_out(path);
    if (!out) return out.error();
    CsvWriter csv(out.value());
    csv.row({"source", "native_id", "doi", "year", "category", "delayed",
             "crossref_status", "distinct_urls", "max_delay_days"});
    for (const auto& r : rows) {
        auto c = to_csv_row(r);
        csv.row({to_string(c.source), c.native_id, c.doi, std::to_string(c.year),
                 to_string(c.category), to_string(c.delayed), to_string(c.crossref),
                 std::to_string(c.distinct_urls), c.max_delay_days});
    }
    finish(csv, manifest_digest);
    return true;
}

Result<std::vector<ClassifiedCsvRow>> read_classified_csv(const std::string& path) {
    CsvReader reader(path);
    if (!reader.header_ok()) return Error{Err::Io, "cannot read " + path};
    const char* names[] = {"source", "native_id", "doi", "year", "category",
                           "delayed", "crossref_status", "distinct_urls", "max_delay_days"};
    std::size_t col[9];
    for (int i = 0; i < 9; ++i) {
        auto c = reader.column(names[i]);
        if (!c) return c.error();
        col[i] = c.value();
    }
    std::vector<ClassifiedCsvRow> rows;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        ClassifiedCsvRow r;
        auto source = parse_source_db(fields[col[0]]);
        auto category = parse_oa_kind(fields[col[4]]);
        auto delayed = parse_delay_status(fields[col[5]]);
        auto crossref = parse_source_status(fields[col[6]]);
        if (!source || !category || !delayed || !crossref)
            return Error{Err::UnparsableRecord,
                         path + " line " + std::to_string(reader.line_number())};
        r.source = *source;
        r.native_id = fields[col[1]];
        r.doi = fields[col[2]];
        try {
            r.year = std::stoi(fields[col[3]]);
            r.distinct_urls = std::stoi(fields[col[7]]);
        } catch (...) {
            return Error{Err::UnparsableRecord,
                         path + " line " + std::to_string(reader.line_number())};
        }
        r.category = *category;
        r.delayed = *delayed;
        r.crossref = *crossref;
        r.max_delay_days = fields[col[8]];
        rows.push_back(std::move(r));
    }
    return rows;
}

Result<bool> write_ingest_report(const std::string& path,
                                 const std::vector<IngestReportRow>& rows,
                                 const std::string& manifest_digest) {
    auto out = open_out(path);
    if (!out) return out.error();
    CsvWriter csv(out.value());
    csv.row({"input", "records_ok", "records_skipped", "duplicates"});
    for (const auto& r : rows)
        csv.row({r.input, std::to_string(r.stats.records_ok),
                 std::to_string(r.stats.records_skipped),
                 std::to_string(r.stats.duplicates)});
    finish(csv, manifest_digest);
    return true;
}

Result<bool> write_crosstab_csv(const std::string& path, const CrossTab& tab,
                                const std::string& manifest_digest) {
    auto out = open_out(path);
    if (!out) return out.error();
    CsvWriter csv(out.value());
    csv.row({"crossref_status", "unpaywall_status", "frequency", "percent"});
    for (const auto& row : tab.rows)
        csv.row({to_string(row.crossref), to_string(row.unpaywall),
                 std::to_string(row.frequency), format_percent(row.percent)});
    csv.comment("contradiction_rate=" + format_percent(contradiction_rate(tab)));
    finish(csv, manifest_digest);
    return true;
}

Result<bool> write_trends_csv(const std::string& path,
                              const std::vector<TrendRow>& rows,
                              const std::string& manifest_digest) {
    auto out = open_out(path);
    if (!out) return out.error();
    CsvWriter csv(out.value());
    csv.row({"year", "category", "delayed", "n"});
    for (const auto& row : rows)
        csv.row({std::to_string(row.year), to_string(row.kind), to_string(row.delayed),
                 std::to_string(row.n)});
    finish(csv, manifest_digest);
    return true;
}

Result<bool> write_histogram_csv(const std::string& path, const LicenceHistogram& hist,
                                 const std::string& manifest_digest) {
    auto out = open_out(path);
    if (!out) return out.error();
    CsvWriter csv(out.value());
    csv.row({"licence_count", "frequency", "percent"});
    for (const auto& row : hist.rows())
        csv.row({std::to_string(row.licence_count), std::to_string(row.frequency),
                 format_percent(row.percent)});
    finish(csv, manifest_digest);
    return true;
}

Result<bool> write_sample_csv(const std::string& path,
                              const std::vector<SampleRow>& rows,
                              const std::string& manifest_digest) {
    auto out = open_out(path);
    if (!out) return out.error();
    CsvWriter csv(out.value());
    csv.row({"doi", "licence_status", "unpaywall_status", "pdf_url", "pdf_accessible"});
    for (const auto& row : rows)
        csv.row({row.doi, to_string(row.licence_status), to_string(row.unpaywall_status),
                 row.pdf_url, to_string(row.pdf_accessible)});
    finish(csv, manifest_digest);
    return true;
}

Result<std::vector<ManualCheckRow>> read_sample_csv(const std::string& path) {
    CsvReader reader(path);
    if (!reader.header_ok()) return Error{Err::Io, "cannot read " + path};
    const char* names[] = {"doi", "licence_status", "unpaywall_status", "pdf_url",
                           "pdf_accessible"};
    std::size_t col[5];
    for (int i = 0; i < 5; ++i) {
        auto c = reader.column(names[i]);
        if (!c) return c.error();
        col[i] = c.value();
    }
    std::vector<ManualCheckRow> rows;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        ManualCheckRow r;
        r.doi = fields[col[0]];
        auto lic = parse_source_status(trim(fields[col[1]]));
        auto up = parse_source_status(trim(fields[col[2]]));
        auto acc = parse_pdf_access(trim(fields[col[4]]));
        if (!lic || !up || !acc)
            return Error{Err::UnparsableRecord,
                         path + " line " + std::to_string(reader.line_number())};
        r.licence_status = *lic;
        r.unpaywall_status = *up;
        r.pdf_url = fields[col[3]];
        r.pdf_accessible = *acc;
        rows.push_back(std::move(r));
    }
    return rows;
}

Result<bool> write_audit_summary_csv(const std::string& path, const AuditSummary& summary,
                                     const std::string& manifest_digest) {
    auto out = open_out(path);
    if (!out) return out.error();
    CsvWriter csv(out.value());
    csv.row({"pdf_accessible", "licence_status", "unpaywall_status", "frequency", "percent"});
    for (const auto& cell : summary.cells)
        csv.row({to_string(cell.accessible), to_string(cell.licence),
                 to_string(cell.unpaywall), std::to_string(cell.frequency),
                 format_percent(cell.percent)});
    csv.comment("accessible_nonoa_pct=" + format_percent(summary.accessible_nonoa_pct));
    csv.comment("inaccessible_oa_pct=" + format_percent(summary.inaccessible_oa_pct));
    csv.comment("contradiction_pct=" + format_percent(summary.contradiction_pct));
    finish(csv, manifest_digest);
    return true;
}

}  // namespace oa
