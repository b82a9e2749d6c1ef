#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "oa/records.hpp"
#include "oa/util.hpp"

namespace oa {

/// Per-input ingestion counters. records_ok + records_skipped equals the
/// number of records seen; duplicates counts last-write-wins overwrites.
struct IngestStats {
    std::uint64_t records_ok = 0;
    std::uint64_t records_skipped = 0;
    std::uint64_t duplicates = 0;

    void merge(const IngestStats& o) {
        records_ok += o.records_ok;
        records_skipped += o.records_skipped;
        duplicates += o.duplicates;
    }
};

/// Parses one Crossref work record (JSON object). Extracts DOI, issued
/// date (date-parts padded to January/1st), ISSNs and licence rows;
/// everything else is ignored.
Result<CrossrefWork> parse_crossref_work(const std::string& record_text);

/// Parses one line of an Unpaywall line-delimited snapshot.
Result<UnpaywallRecord> parse_unpaywall_record(const std::string& record_text);

/// Snapshot files in a directory, sorted by name (the file order that
/// "last record wins" refers to).
std::vector<std::string> list_snapshot_files(const std::string& dir);

/// Streams one Crossref snapshot file. Each file is either one JSON
/// record per line or a single JSON array, auto-detected. Malformed
/// records are counted and skipped, never abort the stream.
IngestStats parse_crossref_file(const std::string& path,
                                const std::function<void(CrossrefWork&&)>& sink);

/// Streams a whole snapshot directory, parallel over files. The sink
/// must be thread-safe; call order across files is unspecified.
IngestStats stream_crossref_snapshot(const std::string& dir, unsigned threads,
                                     const std::function<void(CrossrefWork&&)>& sink);

/// Keyed load restricted to DOIs accepted by `keep`. Duplicate DOIs are
/// resolved last-write-wins in (file, record) order regardless of the
/// number of threads; overwrites are counted as duplicates.
std::pair<std::map<std::string, CrossrefWork>, IngestStats>
load_crossref_filtered(const std::string& dir, unsigned threads,
                       const std::function<bool(const Doi&)>& keep);

/// Streams an Unpaywall snapshot (plain or gzip, detected by magic
/// bytes). Malformed lines are counted and skipped.
IngestStats stream_unpaywall_snapshot(const std::string& path,
                                      const std::function<void(UnpaywallRecord&&)>& sink);

/// One record per DOI, last-write-wins, duplicates counted.
std::pair<std::map<std::string, UnpaywallRecord>, IngestStats>
load_unpaywall_map(const std::string& path);

/// Loads the ISSN-Gold-OA table (CSV: issn,issnl,in_doaj,in_road).
/// Rows with invalid ISSNs are skipped and counted; rows with both
/// flags false contribute to the linking table only.
Result<GoldDirectory> load_gold_directory(const std::string& path,
                                          IngestStats* stats = nullptr);

/// Streams the publications table. Rows with unparsable DOIs keep the
/// record with doi unset (still classifiable as NA); a missing header
/// column is a hard error.
Result<IngestStats> load_publications(const std::string& path,
                                      const std::function<void(PublicationRecord&&)>& sink);

}  // namespace oa
