#include "oa/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <set>

#include <CLI11.hpp>

#include "oa/classify.hpp"
#include "oa/ingest.hpp"
#include "oa/licence.hpp"
#include "oa/manifest.hpp"
#include "oa/reconcile.hpp"
#include "oa/remote.hpp"
#include "oa/reports.hpp"

namespace fs = std::filesystem;

namespace oa {

namespace {

void log_line(const std::string& level, const std::string& kv) {
    std::cerr << level << " " << kv << "\n";
}

int data_error(const Error& e) {
    log_line("error", std::string("code=") + err_name(e.code) + " detail=\"" + e.detail + "\"");
    return 2;
}

struct CommonOpts {
    unsigned threads = 0;  // 0 = available cores
};

int run_ingest(const std::string& pubs, const std::string& crossref,
               const std::string& unpaywall, const std::string& gold,
               const std::string& out_path, unsigned threads) {
    RunManifest manifest;
    manifest.subcommand = "ingest";
    std::vector<IngestReportRow> report;

    if (!pubs.empty()) {
        manifest.add_input(pubs);
        auto stats = load_publications(pubs, [](PublicationRecord&&) {});
        if (!stats) return data_error(stats.error());
        report.push_back({pubs, stats.value()});
    }
    if (!crossref.empty()) {
        manifest.inputs.emplace_back(crossref, "directory");
        std::mutex mu;
        std::map<std::string, std::uint64_t> seen;
        std::uint64_t duplicates = 0;
        auto stats = stream_crossref_snapshot(crossref, threads, [&](CrossrefWork&& work) {
            std::lock_guard lock(mu);
            if (++seen[work.doi.value] > 1) ++duplicates;
        });
        stats.duplicates = duplicates;
        report.push_back({crossref, stats});
    }
    if (!unpaywall.empty()) {
        manifest.add_input(unpaywall);
        auto [map, stats] = load_unpaywall_map(unpaywall);
        report.push_back({unpaywall, stats});
    }
    if (!gold.empty()) {
        manifest.add_input(gold);
        IngestStats stats;
        auto dir = load_gold_directory(gold, &stats);
        if (!dir) return data_error(dir.error());
        report.push_back({gold, stats});
    }
    if (report.empty()) {
        log_line("error", "detail=\"no inputs given\"");
        return 1;
    }
    manifest.stamp_now();
    if (auto w = write_ingest_report(out_path, report, manifest.digest()); !w)
        return data_error(w.error());
    if (auto w = manifest.write(out_path + ".manifest.json"); !w)
        return data_error(w.error());
    return 0;
}

int run_classify(const std::string& pubs_path, const std::string& crossref_dir,
                 const std::string& gold_path, const std::string& policy_path,
                 const std::string& out_dir, unsigned threads, int grace_days,
                 bool probable_hybrid_unlicensed) {
    RunManifest manifest;
    manifest.subcommand = "classify";
    manifest.add_input(pubs_path);
    manifest.add_input(gold_path);
    manifest.inputs.emplace_back(crossref_dir, "directory");
    manifest.policy_digest = hex64(fnv1a64_file(policy_path));

    auto policy = LicencePolicy::load(policy_path);
    if (!policy) return data_error(policy.error());
    auto dir = load_gold_directory(gold_path);
    if (!dir) return data_error(dir.error());

    std::vector<PublicationRecord> pubs;
    std::set<std::string> wanted_dois;
    auto pub_stats = load_publications(pubs_path, [&](PublicationRecord&& rec) {
        if (rec.doi) wanted_dois.insert(rec.doi->value);
        pubs.push_back(std::move(rec));
    });
    if (!pub_stats) return data_error(pub_stats.error());

    auto [works, work_stats] = load_crossref_filtered(
        crossref_dir, threads,
        [&](const Doi& doi) { return wanted_dois.count(doi.value) > 0; });
    log_line("info", "stage=ingest pubs_ok=" + std::to_string(pub_stats.value().records_ok) +
                         " crossref_ok=" + std::to_string(work_stats.records_ok) +
                         " crossref_skipped=" + std::to_string(work_stats.records_skipped));

    ResolveConfig resolve_config{grace_days};
    ClassifyConfig config;
    config.probable_hybrid_includes_unlicensed = probable_hybrid_unlicensed;
    auto lookup = [&](const Doi& doi) -> const CrossrefWork* {
        auto it = works.find(doi.value);
        return it == works.end() ? nullptr : &it->second;
    };
    auto classified = classify_corpus(std::move(pubs), lookup, dir.value(), policy.value(),
                                      config, resolve_config, threads);
    if (!classified) return data_error(classified.error());

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    manifest.stamp_now();
    std::string digest = manifest.digest();
    if (auto w = write_classified_csv(out_dir + "/classified.csv", classified.value(), digest);
        !w)
        return data_error(w.error());
    std::vector<IngestReportRow> report = {{pubs_path, pub_stats.value()},
                                           {crossref_dir, work_stats}};
    if (auto w = write_ingest_report(out_dir + "/ingest_report.csv", report, digest); !w)
        return data_error(w.error());
    if (auto w = manifest.write(out_dir + "/manifest.json"); !w) return data_error(w.error());
    return 0;
}

Result<std::vector<std::pair<SourceStatus, SourceStatus>>> join_statuses(
    const std::string& classified_path, const std::string& unpaywall_path) {
    auto rows = read_classified_csv(classified_path);
    if (!rows) return rows.error();
    auto [up, stats] = load_unpaywall_map(unpaywall_path);
    std::vector<std::pair<SourceStatus, SourceStatus>> pairs;
    pairs.reserve(rows.value().size());
    for (const auto& row : rows.value()) {
        std::optional<UnpaywallRecord> rec;
        if (!row.doi.empty()) {
            auto it = up.find(row.doi);
            if (it != up.end()) rec = it->second;
        }
        pairs.emplace_back(row.crossref, unpaywall_status(rec));
    }
    return pairs;
}

int run_crosstab(const std::string& classified_path, const std::string& unpaywall_path,
                 const std::string& out_path) {
    RunManifest manifest;
    manifest.subcommand = "crosstab";
    manifest.add_input(classified_path);
    manifest.add_input(unpaywall_path);
    auto pairs = join_statuses(classified_path, unpaywall_path);
    if (!pairs) return data_error(pairs.error());
    auto tab = crosstab(pairs.value());
    if (!tab) return data_error(tab.error());
    manifest.stamp_now();
    if (auto w = write_crosstab_csv(out_path, tab.value(), manifest.digest()); !w)
        return data_error(w.error());
    if (auto w = manifest.write(out_path + ".manifest.json"); !w)
        return data_error(w.error());
    log_line("info", "contradiction_rate=" + format_percent(contradiction_rate(tab.value())));
    return 0;
}

int run_trends(const std::string& classified_path, int year_min, int year_max,
               const std::string& out_path) {
    if (year_min > year_max) {
        log_line("error", "detail=\"year-min exceeds year-max\"");
        return 1;
    }
    RunManifest manifest;
    manifest.subcommand = "trends";
    manifest.add_input(classified_path);
    auto rows = read_classified_csv(classified_path);
    if (!rows) return data_error(rows.error());
    std::vector<ClassifiedRow> classified;
    classified.reserve(rows.value().size());
    for (const auto& r : rows.value()) {
        ClassifiedRow c;
        c.rec.source = r.source;
        c.rec.native_id = r.native_id;
        c.rec.year = r.year;
        c.category = {r.category, r.delayed};
        classified.push_back(std::move(c));
    }
    auto trends = yearly_trends(classified, year_min, year_max);
    manifest.stamp_now();
    if (auto w = write_trends_csv(out_path, trends, manifest.digest()); !w)
        return data_error(w.error());
    if (auto w = manifest.write(out_path + ".manifest.json"); !w)
        return data_error(w.error());
    return 0;
}

int run_histogram(const std::string& crossref_dir, const std::string& out_path,
                  unsigned threads) {
    RunManifest manifest;
    manifest.subcommand = "histogram";
    manifest.inputs.emplace_back(crossref_dir, "directory");
    std::mutex mu;
    LicenceHistogram hist;
    auto stats = stream_crossref_snapshot(crossref_dir, threads, [&](CrossrefWork&& work) {
        std::lock_guard lock(mu);
        hist.add(work);
    });
    log_line("info", "records_ok=" + std::to_string(stats.records_ok) +
                         " records_skipped=" + std::to_string(stats.records_skipped));
    manifest.stamp_now();
    if (auto w = write_histogram_csv(out_path, hist, manifest.digest()); !w)
        return data_error(w.error());
    if (auto w = manifest.write(out_path + ".manifest.json"); !w)
        return data_error(w.error());
    return 0;
}

int run_sample(const std::string& classified_path, const std::string& unpaywall_path,
               std::size_t n, std::uint64_t seed, const std::string& out_path) {
    RunManifest manifest;
    manifest.subcommand = "sample";
    manifest.add_input(classified_path);
    manifest.add_input(unpaywall_path);
    manifest.seed = seed;
    auto rows = read_classified_csv(classified_path);
    if (!rows) return data_error(rows.error());
    auto [up, stats] = load_unpaywall_map(unpaywall_path);
    std::vector<SampleRow> corpus;
    corpus.reserve(rows.value().size());
    for (const auto& row : rows.value()) {
        SampleRow s;
        s.doi = row.doi;
        s.licence_status = row.crossref;
        std::optional<UnpaywallRecord> rec;
        if (!row.doi.empty()) {
            auto it = up.find(row.doi);
            if (it != up.end()) rec = it->second;
        }
        s.unpaywall_status = unpaywall_status(rec);
        corpus.push_back(std::move(s));
    }
    auto sample = draw_sample(corpus, n, seed);
    if (!sample) return data_error(sample.error());
    manifest.stamp_now();
    if (auto w = write_sample_csv(out_path, sample.value(), manifest.digest()); !w)
        return data_error(w.error());
    if (auto w = manifest.write(out_path + ".manifest.json"); !w)
        return data_error(w.error());
    return 0;
}

int run_audit_summary(const std::string& sample_path, const std::string& out_path) {
    RunManifest manifest;
    manifest.subcommand = "audit-summary";
    manifest.add_input(sample_path);
    auto rows = read_sample_csv(sample_path);
    if (!rows) return data_error(rows.error());
    auto summary = summarize_manual_checks(rows.value());
    if (!summary) return data_error(summary.error());
    manifest.stamp_now();
    if (auto w = write_audit_summary_csv(out_path, summary.value(), manifest.digest()); !w)
        return data_error(w.error());
    if (auto w = manifest.write(out_path + ".manifest.json"); !w)
        return data_error(w.error());
    log_line("info",
             "accessible_nonoa_pct=" + format_percent(summary.value().accessible_nonoa_pct) +
                 " inaccessible_oa_pct=" + format_percent(summary.value().inaccessible_oa_pct) +
                 " contradiction_pct=" + format_percent(summary.value().contradiction_pct));
    return 0;
}

int run_fetch(const std::string& raw_doi, const std::string& source,
              const std::string& base_url, const std::string& email, double rps,
              int max_attempts, long base_backoff_ms, long max_backoff_ms,
              const std::string& cache_dir, long cache_ttl_s) {
    auto doi = normalize_doi(raw_doi);
    if (!doi) return data_error(doi.error());
    RetryPolicy policy;
    policy.max_attempts = max_attempts;
    policy.base_backoff = std::chrono::milliseconds(base_backoff_ms);
    policy.max_backoff = std::chrono::milliseconds(max_backoff_ms);
    policy.requests_per_second = rps;
    if (!policy.valid()) {
        log_line("error", "detail=\"invalid retry policy\"");
        return 1;
    }
    std::optional<DiskCache> cache;
    if (!cache_dir.empty())
        cache.emplace(cache_dir, std::chrono::seconds(cache_ttl_s));
    auto transport = http_transport(base_url);
    if (source == "crossref") {
        CrossrefClient client(policy, transport, cache ? &*cache : nullptr);
        auto work = client.fetch(doi.value());
        if (!work) return data_error(work.error());
        std::cout << "doi=" << work.value().doi.value
                  << " licences=" << work.value().licences.size() << "\n";
    } else {
        UnpaywallClient client(policy, transport, email, cache ? &*cache : nullptr);
        auto rec = client.fetch(doi.value());
        if (!rec) return data_error(rec.error());
        std::cout << "doi=" << rec.value().doi.value << " is_oa="
                  << (rec.value().is_oa ? (*rec.value().is_oa ? "true" : "false") : "unknown")
                  << "\n";
    }
    return 0;
}

}  // namespace

int cli_run(int argc, const char* const* argv) {
    CLI::App app{"Open Access status pipeline"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "pipeline parallelism (0 = available cores)");

    // ingest
    std::string in_pubs, in_crossref, in_unpaywall, in_gold, in_out;
    auto* ingest = app.add_subcommand("ingest", "parse inputs and write an ingest report");
    ingest->add_option("--pubs", in_pubs, "publications CSV");
    ingest->add_option("--crossref", in_crossref, "Crossref snapshot directory");
    ingest->add_option("--unpaywall", in_unpaywall, "Unpaywall snapshot (jsonl, optionally gz)");
    ingest->add_option("--gold", in_gold, "ISSN-Gold-OA table CSV");
    ingest->add_option("--out", in_out, "ingest report CSV")->required();

    // classify
    std::string cl_pubs, cl_crossref, cl_gold, cl_policy, cl_out;
    int cl_grace = 0;
    bool cl_ph_unlicensed = false;
    auto* classify = app.add_subcommand("classify", "classify a corpus");
    classify->add_option("--pubs", cl_pubs)->required();
    classify->add_option("--crossref", cl_crossref)->required();
    classify->add_option("--gold", cl_gold)->required();
    classify->add_option("--policy", cl_policy)->required();
    classify->add_option("--out", cl_out, "output directory")->required();
    classify->add_option("--grace-days", cl_grace, "delay grace period in days");
    classify->add_flag("--probable-hybrid-unlicensed", cl_ph_unlicensed,
                       "label unlicensed members of ProbableHybrid issues as ProbableHybrid");

    // crosstab
    std::string ct_classified, ct_unpaywall, ct_out;
    auto* crosstab_cmd = app.add_subcommand("crosstab", "Crossref vs Unpaywall status table");
    crosstab_cmd->add_option("--classified", ct_classified)->required();
    crosstab_cmd->add_option("--unpaywall", ct_unpaywall)->required();
    crosstab_cmd->add_option("--out", ct_out)->required();

    // trends
    std::string tr_classified, tr_out;
    int tr_min = 2000, tr_max = 2017;
    auto* trends = app.add_subcommand("trends", "per-year category counts");
    trends->add_option("--classified", tr_classified)->required();
    trends->add_option("--year-min", tr_min);
    trends->add_option("--year-max", tr_max);
    trends->add_option("--out", tr_out)->required();

    // histogram
    std::string hi_crossref, hi_out;
    auto* histogram = app.add_subcommand("histogram", "licences-per-DOI distribution");
    histogram->add_option("--crossref", hi_crossref)->required();
    histogram->add_option("--out", hi_out)->required();

    // sample
    std::string sa_classified, sa_unpaywall, sa_out;
    std::size_t sa_n = 0;
    std::uint64_t sa_seed = 0;
    auto* sample = app.add_subcommand("sample", "draw an audit worksheet");
    sample->add_option("--classified", sa_classified)->required();
    sample->add_option("--unpaywall", sa_unpaywall)->required();
    sample->add_option("--n", sa_n)->required();
    sample->add_option("--seed", sa_seed)->required();
    sample->add_option("--out", sa_out)->required();

    // audit-summary
    std::string au_sample, au_out;
    auto* audit = app.add_subcommand("audit-summary", "summarize a filled worksheet");
    audit->add_option("--sample", au_sample)->required();
    audit->add_option("--out", au_out)->required();

    // fetch
    std::string fe_doi, fe_source = "crossref", fe_base, fe_email, fe_cache;
    double fe_rps = 2.0;
    int fe_attempts = 4;
    long fe_base_ms = 500, fe_max_ms = 8000, fe_ttl = 86400;
    auto* fetch = app.add_subcommand("fetch", "per-DOI lookup against a web API");
    fetch->add_option("--doi", fe_doi)->required();
    fetch->add_option("--source", fe_source)->check(CLI::IsMember({"crossref", "unpaywall"}));
    fetch->add_option("--base-url", fe_base)->required();
    fetch->add_option("--email", fe_email, "contact email (or OA_CONTACT_EMAIL)");
    fetch->add_option("--rps", fe_rps);
    fetch->add_option("--max-attempts", fe_attempts);
    fetch->add_option("--base-backoff-ms", fe_base_ms);
    fetch->add_option("--max-backoff-ms", fe_max_ms);
    fetch->add_option("--cache", fe_cache, "response cache directory");
    fetch->add_option("--cache-ttl-s", fe_ttl);

    // let the global --threads option appear after the subcommand too
    for (auto* sub : app.get_subcommands([](CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e);  // --help
            return 0;
        }
        std::cerr << e.what() << "\n" << app.help();
        return 1;
    }

    if (ingest->parsed())
        return run_ingest(in_pubs, in_crossref, in_unpaywall, in_gold, in_out, threads);
    if (classify->parsed())
        return run_classify(cl_pubs, cl_crossref, cl_gold, cl_policy, cl_out, threads,
                            cl_grace, cl_ph_unlicensed);
    if (crosstab_cmd->parsed()) return run_crosstab(ct_classified, ct_unpaywall, ct_out);
    if (trends->parsed()) return run_trends(tr_classified, tr_min, tr_max, tr_out);
    if (histogram->parsed()) return run_histogram(hi_crossref, hi_out, threads);
    if (sample->parsed()) return run_sample(sa_classified, sa_unpaywall, sa_n, sa_seed, sa_out);
    if (audit->parsed()) return run_audit_summary(au_sample, au_out);
    if (fetch->parsed()) {
        if (fe_email.empty()) {
            if (const char* env = std::getenv("OA_CONTACT_EMAIL")) fe_email = env;
        }
        return run_fetch(fe_doi, fe_source, fe_base, fe_email, fe_rps, fe_attempts,
                         fe_base_ms, fe_max_ms, fe_cache, fe_ttl);
    }
    return 1;
}

}  // namespace oa
