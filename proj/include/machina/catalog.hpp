#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "machina/closure.hpp"
#include "machina/green.hpp"
#include "machina/semigroup.hpp"

namespace machina {

// Orders supported by enumerate() and sweep().
inline constexpr std::size_t kMaxCatalogOrder = 4;

// Row-major table bytes, one byte per entry.
using TableBytes = std::string;

struct CatalogEntry {
  FiniteSemigroup semigroup;
  // Lexicographic minimum of the table over all n! relabelings.
  TableBytes  canonical_table;
  std::size_t labeled_index = 0;
};

enum class EnumerationMode { labeled, up_to_iso };

// Order in which the backtracking search fills the n*n cells.
enum class FillOrder { row_major, column_major };

TableBytes canonical_table(FiniteSemigroup const& s);
TableBytes canonical_table(std::size_t order, std::span<const Element> table);

// Printable form of a canonical table: the entries as digits, rows joined by
// '.', e.g. "00.01" for chain:2.
std::string canonical_id(TableBytes const& table, std::size_t order);

// Every associative table of order n (1 <= n <= 4), found by backtracking
// with associativity checked as soon as a triple's entries are all known.
// up_to_iso keeps the first table of each isomorphism class (not
// anti-isomorphism) and replaces it by its canonical table; entries keep
// the labeled index of that first table.
std::vector<CatalogEntry> enumerate(std::size_t     n,
                                    EnumerationMode mode  = EnumerationMode::labeled,
                                    FillOrder       order = FillOrder::row_major);

// Scans all n^(n*n) tables (n <= 3). Independent oracle for enumerate().
std::vector<CatalogEntry> naive_enumerate(std::size_t n);

struct ClosureOutcome {
  bool        finite = false;
  std::size_t count  = 0;  // size if finite, elements found otherwise
  Resource    limit  = Resource::elements;
};

struct CertificateSummary {
  std::string              kind;
  std::size_t              length       = 0;
  bool                     all_distinct = false;
  std::vector<std::size_t> distinct_counts;
};

struct SweepRecord {
  std::string      canonical_id;
  CatalogEntry     entry;
  CriterionVerdict criteria;
  ClosureOutcome   cayley;
  ClosureOutcome   dual;
  std::optional<CertificateSummary> cayley_certificate;
  std::optional<CertificateSummary> dual_certificate;
};

struct SweepOptions {
  Budget budget{10'000, kDefaultMaxMachineStates, 600'000};
  // Witness words are checked up to this length.
  std::size_t certificate_length = 8;
  // Workers over catalog entries; 0 picks worker_count().
  std::size_t threads = 0;
};

struct SweepReport {
  std::size_t              order = 0;
  std::vector<SweepRecord> records;
  std::size_t              cayley_finite = 0;
  std::size_t              dual_finite   = 0;
  std::vector<std::string> mismatches;
};

// Criterion against closure for every isomorphism class of order n. A
// finite prediction must terminate within the budget; an infinite one must
// exhaust the element budget and come with distinct certificate words.
SweepReport sweep(std::size_t n, SweepOptions const& options = {});

// Mismatch descriptions for a single record, empty when consistent.
std::vector<std::string> record_mismatches(SweepRecord const& record);

SweepRecord sweep_entry(CatalogEntry const& entry, SweepOptions const& options);

std::string sweep_report_json(SweepReport const& report);
std::string sweep_report_text(SweepReport const& report);
// One tab-separated row per isomorphism class, with a header line.
std::string sweep_report_tsv(SweepReport const& report);

}  // namespace machina
