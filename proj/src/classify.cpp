#include "oa/classify.hpp"

#include <algorithm>
#include <map>
#include <thread>

namespace oa {

const char* to_string(OaKind k) {
    switch (k) {
        case OaKind::Gold: return "Gold";
        case OaKind::HiddenGold: return "HiddenGold";
        case OaKind::Hybrid: return "Hybrid";
        case OaKind::ProbableHybrid: return "ProbableHybrid";
        case OaKind::Closed: return "Closed";
        case OaKind::NA: return "NA";
    }
    return "NA";
}

std::optional<OaKind> parse_oa_kind(const std::string& s) {
    if (s == "Gold") return OaKind::Gold;
    if (s == "HiddenGold") return OaKind::HiddenGold;
    if (s == "Hybrid") return OaKind::Hybrid;
    if (s == "ProbableHybrid") return OaKind::ProbableHybrid;
    if (s == "Closed") return OaKind::Closed;
    if (s == "NA") return OaKind::NA;
    return std::nullopt;
}

void IssueAggregate::add(LicenceStatus status) {
    ++n_total;
    switch (status) {
        case LicenceStatus::OA: ++n_oa; break;
        case LicenceStatus::NonOA: ++n_nonoa; break;
        case LicenceStatus::Unclear:
        case LicenceStatus::None: ++n_na; break;
    }
}

void IssueAggregate::merge(const IssueAggregate& o) {
    n_total += o.n_total;
    n_oa += o.n_oa;
    n_nonoa += o.n_nonoa;
    n_na += o.n_na;
}

std::optional<IssueKey> issue_key(const PublicationRecord& rec, const GoldDirectory& dir) {
    if (!rec.volume || !rec.issue) return std::nullopt;
    IssueKey key;
    key.source = rec.source;
    if (!rec.issns.empty()) {
        key.journal_key = to_issnl(rec.issns.front(), dir).value;
    } else {
        key.journal_key = to_lower(collapse_whitespace(rec.journal_title));
    }
    if (key.journal_key.empty()) return std::nullopt;
    key.volume = *rec.volume;
    key.issue = *rec.issue;
    return key;
}

IssueAggregate aggregate_issue(const std::vector<LicenceStatus>& members) {
    IssueAggregate agg;
    for (auto s : members) agg.add(s);
    return agg;
}

Result<OaCategory> classify_publication(const PublicationRecord& rec,
                                        const ResolvedLicence& resolved,
                                        const std::optional<IssueAggregate>& agg,
                                        const GoldDirectory& dir,
                                        const ClassifyConfig& config) {
    OaCategory cat;
    auto oa_kind = [&](OaKind kind) {
        cat.kind = kind;
        cat.delayed = resolved.delayed;
        return cat;
    };

    for (const auto& issn : rec.issns) {
        if (dir.is_gold(to_issnl(issn, dir))) return oa_kind(OaKind::Gold);
    }
    if (agg) {
        if (agg->n_total < 1 || agg->n_oa + agg->n_nonoa + agg->n_na != agg->n_total)
            return Error{Err::InconsistentInput, "bad issue aggregate"};
        if (agg->n_oa == agg->n_total) return oa_kind(OaKind::HiddenGold);
        if (resolved.status == LicenceStatus::OA && agg->n_nonoa >= 1)
            return oa_kind(OaKind::Hybrid);
        if (resolved.status == LicenceStatus::OA && agg->n_nonoa == 0 && agg->n_na >= 1)
            return oa_kind(OaKind::ProbableHybrid);
        if (config.probable_hybrid_includes_unlicensed &&
            resolved.status != LicenceStatus::NonOA && agg->n_oa >= 1 && agg->n_nonoa == 0)
            return oa_kind(OaKind::ProbableHybrid);
        if (agg->n_nonoa == agg->n_total) {
            cat.kind = OaKind::Closed;
            return cat;
        }
    }
    return cat;  // NA, delayed Unknown
}

Result<std::vector<ClassifiedRow>> classify_corpus(
    std::vector<PublicationRecord> pubs,
    const std::function<const CrossrefWork*(const Doi&)>& works,
    const GoldDirectory& dir, const LicencePolicy& policy,
    const ClassifyConfig& config, const ResolveConfig& resolve_config, unsigned threads) {
    if (threads == 0) threads = std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, pubs.size() ? pubs.size() : 1));

    // Pass 1: resolve licences per publication, merge issue aggregates.
    std::vector<ResolvedLicence> resolved(pubs.size());
    std::vector<std::optional<IssueKey>> keys(pubs.size());
    auto resolve_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto& rec = pubs[i];
            const CrossrefWork* work = rec.doi ? works(*rec.doi) : nullptr;
            static const std::vector<LicenceEntry> kNoLicences;
            resolved[i] = resolve_licences(work ? work->licences : kNoLicences,
                                           work ? work->issued_date : std::nullopt, policy,
                                           resolve_config);
            keys[i] = issue_key(rec, dir);
        }
    };
    if (threads == 1 || pubs.size() < 2 * threads) {
        resolve_range(0, pubs.size());
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (pubs.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t b = t * chunk, e = std::min(pubs.size(), b + chunk);
            if (b < e) pool.emplace_back(resolve_range, b, e);
        }
        for (auto& t : pool) t.join();
    }

    std::map<IssueKey, IssueAggregate> aggregates;
    for (std::size_t i = 0; i < pubs.size(); ++i) {
        if (keys[i]) aggregates[*keys[i]].add(resolved[i].status);
    }

    // Pass 2: classify against the finished aggregates.
    std::vector<ClassifiedRow> out;
    out.reserve(pubs.size());
    for (std::size_t i = 0; i < pubs.size(); ++i) {
        std::optional<IssueAggregate> agg;
        if (keys[i]) agg = aggregates.at(*keys[i]);
        auto cat = classify_publication(pubs[i], resolved[i], agg, dir, config);
        if (!cat) return cat.error();
        out.push_back({std::move(pubs[i]), resolved[i], cat.value()});
    }
    std::sort(out.begin(), out.end(), [](const ClassifiedRow& a, const ClassifiedRow& b) {
        if (a.rec.source != b.rec.source) return a.rec.source < b.rec.source;
        return a.rec.native_id < b.rec.native_id;
    });
    return out;
}

}  // namespace oa
