#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oa/licence.hpp"
#include "oa/records.hpp"

namespace oa {

enum class OaKind { Gold, HiddenGold, Hybrid, ProbableHybrid, Closed, NA };

const char* to_string(OaKind k);
std::optional<OaKind> parse_oa_kind(const std::string& s);

struct OaCategory {
    OaKind kind = OaKind::NA;
    DelayStatus delayed = DelayStatus::Unknown;  // meaningful for OA kinds only
};

/// Issue identity: (source, journal, volume, issue). Publications
/// lacking volume or issue get no key.
struct IssueKey {
    SourceDb source = SourceDb::WOS;
    std::string journal_key;  // ISSNL when available, else normalized title
    std::string volume;
    std::string issue;

    auto operator<=>(const IssueKey&) const = default;
};

struct IssueAggregate {
    int n_total = 0;
    int n_oa = 0;
    int n_nonoa = 0;
    int n_na = 0;  // Unclear and None

    void add(LicenceStatus status);
    void merge(const IssueAggregate& o);
};

std::optional<IssueKey> issue_key(const PublicationRecord& rec, const GoldDirectory& dir);

IssueAggregate aggregate_issue(const std::vector<LicenceStatus>& members);

struct ClassifyConfig {
    /// When true, the no-licence members of a ProbableHybrid issue are
    /// also labelled ProbableHybrid instead of NA (sensitivity switch).
    bool probable_hybrid_includes_unlicensed = false;
};

/// First matching rule wins: directory-listed → Gold; all-OA issue →
/// HiddenGold; OA in a mixed issue → Hybrid / ProbableHybrid; all-non-OA
/// issue → Closed; anything else → NA.
Result<OaCategory> classify_publication(const PublicationRecord& rec,
                                        const ResolvedLicence& resolved,
                                        const std::optional<IssueAggregate>& agg,
                                        const GoldDirectory& dir,
                                        const ClassifyConfig& config = {});

struct ClassifiedRow {
    PublicationRecord rec;
    ResolvedLicence resolved;
    OaCategory category;
};

/// Whole-corpus classification. Pass 1 resolves licences and builds
/// issue aggregates, pass 2 assigns categories. Output is sorted by
/// (source, native_id) so it is identical for any parallelism.
Result<std::vector<ClassifiedRow>> classify_corpus(
    std::vector<PublicationRecord> pubs,
    const std::function<const CrossrefWork*(const Doi&)>& works,
    const GoldDirectory& dir, const LicencePolicy& policy,
    const ClassifyConfig& config = {}, const ResolveConfig& resolve_config = {},
    unsigned threads = 1);

}  // namespace oa
