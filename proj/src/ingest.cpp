#include "oa/ingest.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include <zlib.h>
#include <json.hpp>

#include "oa/csv.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace oa {

namespace {

std::optional<Date> date_from_parts(const json& obj) {
    auto it = obj.find("date-parts");
    if (it == obj.end() || !it->is_array() || it->empty()) return std::nullopt;
    const json& parts = (*it)[0];
    if (!parts.is_array() || parts.empty() || parts[0].is_null()) return std::nullopt;
    Date d;
    d.year = parts[0].get<int>();
    d.month = parts.size() > 1 && parts[1].is_number() ? parts[1].get<int>() : 1;
    d.day = parts.size() > 2 && parts[2].is_number() ? parts[2].get<int>() : 1;
    if (!d.valid()) return std::nullopt;
    return d;
}

Result<CrossrefWork> work_from_json(const json& rec) {
    if (!rec.is_object())
        return Error{Err::UnparsableRecord, "not a JSON object"};
    auto doi_it = rec.find("DOI");
    if (doi_it == rec.end()) doi_it = rec.find("doi");
    if (doi_it == rec.end() || !doi_it->is_string())
        return Error{Err::MissingDoi, "record has no DOI"};
    auto doi = normalize_doi(doi_it->get<std::string>());
    if (!doi) return doi.error();

    CrossrefWork work;
    work.doi = std::move(doi.value());
    if (auto it = rec.find("issued"); it != rec.end() && it->is_object())
        work.issued_date = date_from_parts(*it);
    if (auto it = rec.find("ISSN"); it != rec.end() && it->is_array()) {
        for (const auto& raw : *it) {
            if (!raw.is_string()) continue;
            if (auto issn = validate_issn(raw.get<std::string>()); issn) {
                if (std::find(work.issns.begin(), work.issns.end(), issn.value()) ==
                    work.issns.end())
                    work.issns.push_back(std::move(issn.value()));
            }
        }
    }
    if (auto it = rec.find("license"); it != rec.end() && it->is_array()) {
        for (const auto& lic : *it) {
            if (!lic.is_object()) continue;
            LicenceEntry entry;
            if (auto u = lic.find("URL"); u != lic.end() && u->is_string())
                entry.url = u->get<std::string>();
            if (entry.url.empty()) continue;
            if (auto s = lic.find("start"); s != lic.end() && s->is_object())
                entry.start_date = date_from_parts(*s);
            if (auto d = lic.find("delay-in-days"); d != lic.end() && d->is_number())
                entry.delay_in_days = d->get<int>();
            if (auto v = lic.find("content-version"); v != lic.end() && v->is_string())
                entry.content_version = v->get<std::string>();
            work.licences.push_back(std::move(entry));
        }
    }
    return work;
}

/// Line reader over plain or gzip files (zlib reads both transparently).
class GzLineReader {
public:
    explicit GzLineReader(const std::string& path)
        : file_(gzopen(path.c_str(), "rb")) {}
    ~GzLineReader() {
        if (file_) gzclose(file_);
    }
    GzLineReader(const GzLineReader&) = delete;
    GzLineReader& operator=(const GzLineReader&) = delete;

    bool good() const { return file_ != nullptr; }

    bool next(std::string& line) {
        line.clear();
        if (!file_) return false;
        char buf[1 << 14];
        while (true) {
            if (gzgets(file_, buf, sizeof(buf)) == nullptr)
                return !line.empty();
            line += buf;
            if (!line.empty() && line.back() == '\n') {
                line.pop_back();
                if (!line.empty() && line.back() == '\r') line.pop_back();
                return true;
            }
        }
    }

private:
    gzFile file_;
};

bool is_blank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

Result<CrossrefWork> parse_crossref_work(const std::string& record_text) {
    json rec = json::parse(record_text, nullptr, false);
    if (rec.is_discarded())
        return Error{Err::UnparsableRecord, "malformed JSON"};
    return work_from_json(rec);
}

Result<UnpaywallRecord> parse_unpaywall_record(const std::string& record_text) {
    json rec = json::parse(record_text, nullptr, false);
    if (rec.is_discarded() || !rec.is_object())
        return Error{Err::UnparsableRecord, "malformed JSON"};
    auto doi_it = rec.find("doi");
    if (doi_it == rec.end() || !doi_it->is_string())
        return Error{Err::UnparsableRecord, "record has no doi"};
    auto doi = normalize_doi(doi_it->get<std::string>());
    if (!doi) return Error{Err::UnparsableRecord, doi.error().detail};
    UnpaywallRecord out;
    out.doi = std::move(doi.value());
    if (auto it = rec.find("is_oa"); it != rec.end() && it->is_boolean())
        out.is_oa = it->get<bool>();
    return out;
}

std::vector<std::string> list_snapshot_files(const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    return files;
}

IngestStats parse_crossref_file(const std::string& path,
                                const std::function<void(CrossrefWork&&)>& sink) {
    IngestStats stats;
    std::ifstream in(path);
    if (!in) {
        stats.records_skipped = 1;
        return stats;
    }
    // Auto-detect: a file whose first non-whitespace byte is '[' holds
    // one JSON array of records, otherwise one record per line.
    char first = 0;
    in >> std::ws;
    in.get(first);
    in.unget();
    if (first == '[') {
        std::string body((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        json arr = json::parse(body, nullptr, false);
        if (arr.is_discarded() || !arr.is_array()) {
            stats.records_skipped = 1;
            return stats;
        }
        for (const auto& rec : arr) {
            auto work = work_from_json(rec);
            if (work) {
                ++stats.records_ok;
                sink(std::move(work.value()));
            } else {
                ++stats.records_skipped;
            }
        }
    } else {
        std::string line;
        while (std::getline(in, line)) {
            if (is_blank(line)) continue;
            auto work = parse_crossref_work(line);
            if (work) {
                ++stats.records_ok;
                sink(std::move(work.value()));
            } else {
                ++stats.records_skipped;
            }
        }
    }
    return stats;
}

IngestStats stream_crossref_snapshot(const std::string& dir, unsigned threads,
                                     const std::function<void(CrossrefWork&&)>& sink) {
    auto files = list_snapshot_files(dir);
    if (threads == 0) threads = std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, files.size()));

    std::atomic<std::size_t> next_file{0};
    std::mutex stats_mu;
    IngestStats total;
    auto worker = [&] {
        IngestStats local;
        while (true) {
            std::size_t i = next_file.fetch_add(1);
            if (i >= files.size()) break;
            local.merge(parse_crossref_file(files[i], sink));
        }
        std::lock_guard lock(stats_mu);
        total.merge(local);
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return total;
}

std::pair<std::map<std::string, CrossrefWork>, IngestStats>
load_crossref_filtered(const std::string& dir, unsigned threads,
                       const std::function<bool(const Doi&)>& keep) {
    auto files = list_snapshot_files(dir);
    if (threads == 0) threads = std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, files.size()));

    // Per-file maps merged in file order keep last-write-wins
    // deterministic for any thread count.
    std::vector<std::map<std::string, CrossrefWork>> per_file(files.size());
    std::vector<IngestStats> per_stats(files.size());
    std::atomic<std::size_t> next_file{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next_file.fetch_add(1);
            if (i >= files.size()) break;
            auto& map = per_file[i];
            auto& stats = per_stats[i];
            stats.merge(parse_crossref_file(files[i], [&](CrossrefWork&& work) {
                if (!keep(work.doi)) return;
                auto [it, inserted] = map.insert_or_assign(work.doi.value, std::move(work));
                if (!inserted) ++stats.duplicates;
            }));
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::map<std::string, CrossrefWork> merged;
    IngestStats total;
    for (std::size_t i = 0; i < files.size(); ++i) {
        total.merge(per_stats[i]);
        for (auto& [doi, work] : per_file[i]) {
            auto [it, inserted] = merged.insert_or_assign(doi, std::move(work));
            if (!inserted) ++total.duplicates;
        }
        per_file[i].clear();
    }
    return {std::move(merged), total};
}

IngestStats stream_unpaywall_snapshot(const std::string& path,
                                      const std::function<void(UnpaywallRecord&&)>& sink) {
    IngestStats stats;
    GzLineReader reader(path);
    if (!reader.good()) {
        stats.records_skipped = 1;
        return stats;
    }
    std::string line;
    while (reader.next(line)) {
        if (is_blank(line)) continue;
        auto rec = parse_unpaywall_record(line);
        if (rec) {
            ++stats.records_ok;
            sink(std::move(rec.value()));
        } else {
            ++stats.records_skipped;
        }
    }
    return stats;
}

std::pair<std::map<std::string, UnpaywallRecord>, IngestStats>
load_unpaywall_map(const std::string& path) {
    std::map<std::string, UnpaywallRecord> map;
    IngestStats stats = stream_unpaywall_snapshot(path, [&](UnpaywallRecord&& rec) {
        auto [it, inserted] = map.insert_or_assign(rec.doi.value, std::move(rec));
        if (!inserted) ++stats.duplicates;
    });
    return {std::move(map), stats};
}

Result<GoldDirectory> load_gold_directory(const std::string& path, IngestStats* stats) {
    IngestStats local;
    GoldDirectory dir;
    std::ifstream in(path);
    if (!in) return Error{Err::Io, "cannot open " + path};
    std::string line;
    if (!std::getline(in, line)) return Error{Err::MissingColumn, "empty table"};
    auto header = split_csv_line(line);
    auto find_col = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (trim(header[i]) == name) return static_cast<int>(i);
        return -1;
    };
    int c_issn = find_col("issn"), c_issnl = find_col("issnl");
    int c_doaj = find_col("in_doaj"), c_road = find_col("in_road");
    if (c_issn < 0 || c_issnl < 0 || c_doaj < 0 || c_road < 0)
        return Error{Err::MissingColumn, "gold table needs issn,issnl,in_doaj,in_road"};

    while (std::getline(in, line)) {
        if (is_blank(line) || line[0] == '#') continue;
        auto fields = split_csv_line(line);
        auto field = [&](int c) {
            return c < static_cast<int>(fields.size()) ? fields[c] : std::string{};
        };
        auto issn = validate_issn(field(c_issn));
        auto issnl = validate_issn(field(c_issnl));
        if (!issn || !issnl) {
            ++local.records_skipped;
            continue;
        }
        bool in_doaj = trim(field(c_doaj)) == "1";
        bool in_road = trim(field(c_road)) == "1";
        auto [it, inserted] =
            dir.issn_to_issnl.insert_or_assign(issn.value().value, issnl.value().value);
        if (!inserted) ++local.duplicates;
        if (in_doaj || in_road) {
            // several ISSN rows can share one ISSNL; flags accumulate
            auto& member = dir.membership[issnl.value().value];
            member.in_doaj = member.in_doaj || in_doaj;
            member.in_road = member.in_road || in_road;
        }
        ++local.records_ok;
    }
    if (stats) stats->merge(local);
    return dir;
}

Result<IngestStats> load_publications(const std::string& path,
                                      const std::function<void(PublicationRecord&&)>& sink) {
    CsvReader reader(path);
    if (!reader.header_ok()) return Error{Err::MissingColumn, "empty publications table"};
    const char* names[] = {"source", "native_id", "doi",    "issns", "year",
                           "doc_type", "journal_title", "volume", "issue"};
    std::size_t col[9];
    for (int i = 0; i < 9; ++i) {
        auto c = reader.column(names[i]);
        if (!c) return c.error();
        col[i] = c.value();
    }

    IngestStats stats;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        for (auto& f : fields) {
            auto [clean, replaced] = sanitize_utf8(f);
            if (replaced) f = std::move(clean);
        }
        PublicationRecord rec;
        auto source = parse_source_db(fields[col[0]]);
        rec.native_id = trim(fields[col[1]]);
        if (!source || rec.native_id.empty()) {
            ++stats.records_skipped;
            continue;
        }
        rec.source = *source;
        std::string raw_doi = trim(fields[col[2]]);
        if (!raw_doi.empty()) {
            // bad DOIs leave doi unset; the record stays classifiable as NA
            if (auto doi = normalize_doi(raw_doi); doi) rec.doi = std::move(doi.value());
        }
        std::string issns = fields[col[3]];
        std::size_t pos = 0;
        while (pos <= issns.size()) {
            std::size_t sep = issns.find(';', pos);
            std::string part = issns.substr(pos, sep == std::string::npos ? sep : sep - pos);
            pos = sep == std::string::npos ? issns.size() + 1 : sep + 1;
            if (trim(part).empty()) continue;
            if (auto issn = validate_issn(part); issn) {
                if (std::find(rec.issns.begin(), rec.issns.end(), issn.value()) ==
                    rec.issns.end())
                    rec.issns.push_back(std::move(issn.value()));
            }
        }
        try {
            rec.year = std::stoi(trim(fields[col[4]]));
        } catch (...) {
            rec.year = 0;
        }
        if (rec.year < 1800 || rec.year > 2100) {
            ++stats.records_skipped;
            continue;
        }
        rec.doc_type = parse_doc_type(fields[col[5]]);
        rec.journal_title = trim(fields[col[6]]);
        if (auto v = trim(fields[col[7]]); !v.empty()) rec.volume = v;
        if (auto v = trim(fields[col[8]]); !v.empty()) rec.issue = v;
        ++stats.records_ok;
        sink(std::move(rec));
    }
    return stats;
}

}  // namespace oa
