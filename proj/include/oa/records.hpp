#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oa/date.hpp"
#include "oa/identifiers.hpp"

namespace oa {

enum class SourceDb { WOS, Scopus };
enum class DocType { Article, Review, Other };

const char* to_string(SourceDb s);
const char* to_string(DocType d);
std::optional<SourceDb> parse_source_db(const std::string& s);
DocType parse_doc_type(const std::string& s);

/// One bibliographic item from WOS or Scopus.
struct PublicationRecord {
    SourceDb source = SourceDb::WOS;
    std::string native_id;
    std::optional<Doi> doi;
    std::vector<Issn> issns;  // deduplicated
    int year = 0;
    DocType doc_type = DocType::Other;
    std::string journal_title;
    std::optional<std::string> volume;
    std::optional<std::string> issue;
};

/// One licence row attached to a Crossref work.
struct LicenceEntry {
    std::string url;
    std::optional<Date> start_date;
    std::optional<int> delay_in_days;
    std::optional<std::string> content_version;
};

struct CrossrefWork {
    Doi doi;
    std::optional<Date> issued_date;
    std::vector<Issn> issns;
    std::vector<LicenceEntry> licences;  // may be empty
};

struct UnpaywallRecord {
    Doi doi;
    std::optional<bool> is_oa;
};

struct GoldMembership {
    bool in_doaj = false;
    bool in_road = false;
};

/// ISSN → ISSNL linking table plus directory membership keyed by ISSNL.
/// Membership entries with both flags false are never stored.
struct GoldDirectory {
    std::map<std::string, std::string> issn_to_issnl;
    std::map<std::string, GoldMembership> membership;

    bool is_gold(const Issn& issnl) const {
        return membership.count(issnl.value) > 0;
    }
};

/// The linking ISSN when the table maps it, else the ISSN unchanged.
Issn to_issnl(const Issn& issn, const GoldDirectory& dir);

}  // namespace oa
