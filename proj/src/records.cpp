#include "oa/records.hpp"

#include "oa/util.hpp"

namespace oa {

const char* to_string(SourceDb s) {
    return s == SourceDb::WOS ? "WOS" : "Scopus";
}

const char* to_string(DocType d) {
    switch (d) {
        case DocType::Article: return "article";
        case DocType::Review: return "review";
        case DocType::Other: return "other";
    }
    return "other";
}

std::optional<SourceDb> parse_source_db(const std::string& s) {
    std::string v = to_lower(trim(s));
    if (v == "wos") return SourceDb::WOS;
    if (v == "scopus") return SourceDb::Scopus;
    return std::nullopt;
}

DocType parse_doc_type(const std::string& s) {
    std::string v = to_lower(trim(s));
    if (v == "article") return DocType::Article;
    if (v == "review") return DocType::Review;
    return DocType::Other;
}

Issn to_issnl(const Issn& issn, const GoldDirectory& dir) {
    auto it = dir.issn_to_issnl.find(issn.value);
    if (it == dir.issn_to_issnl.end()) return issn;
    return Issn{it->second};
}

}  // namespace oa
