#pragma once

namespace oa {

/// Subcommand front-end: ingest, classify, crosstab, trends, histogram,
/// sample, audit-summary, fetch. Returns 0 on success, 1 on usage
/// error, 2 on data error.
int cli_run(int argc, const char* const* argv);

}  // namespace oa
