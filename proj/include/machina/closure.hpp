#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "machina/mealy.hpp"
#include "machina/semigroup.hpp"

namespace machina {

struct Budget {
  std::size_t max_elements       = 100'000;
  std::size_t max_machine_states = kDefaultMaxMachineStates;
  std::size_t max_millis         = 60'000;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFinite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Resource { elements, machine_states, time };

char const* to_string(Resource r) noexcept;

// A word over the deduplicated generator list, leftmost factor first.
using Word = std::vector<std::uint32_t>;

struct FiniteClosure {
  // Discovery order: distinct generators first, then breadth-first by
  // word length, expanding each element by every generator in index order.
  std::vector<PointedTransducer> elements;
  std::vector<Word>              words;
  // table[i][j] is the index of elements[i] * elements[j].
  std::vector<std::vector<std::uint32_t>> table;

  std::size_t size() const noexcept { return elements.size(); }
};

struct ExhaustedClosure {
  std::size_t elements_found = 0;
  Resource    limit          = Resource::elements;
};

struct ClosureReport {
  std::variant<FiniteClosure, ExhaustedClosure> verdict;
  // Distinct generators after canonical deduplication.
  std::size_t generator_count = 0;
  // New elements discovered per word length, starting at length 1. The last
  // entry of an exhausted run covers a partially explored length.
  std::vector<std::size_t> growth_by_length;

  bool                 is_finite() const noexcept { return verdict.index() == 0; }
  FiniteClosure const& finite() const { return std::get<FiniteClosure>(verdict); }
  ExhaustedClosure const& exhausted() const {
    return std::get<ExhaustedClosure>(verdict);
  }
  // Size when finite, elements found otherwise.
  std::size_t element_count() const noexcept;
};

struct ClosureOptions {
  // 0 picks worker_count().
  std::size_t threads = 0;
  // Frontier elements expanded per parallel batch.
  std::size_t batch = 256;
};

// Breadth-first enumeration of the semigroup generated by `generators`,
// multiplying each element on the right by every generator. Frontier batches
// are expanded in parallel and merged in the sequential order, so the report
// does not depend on the thread count (unless the time budget is hit).
// Elements are first compared by their outputs on fixed probe inputs;
// transducers are only built and minimized for elements whose probe outputs
// coincide with an earlier one, and for the elements of a finite result. The
// state cap therefore applies to those products only.
ClosureReport closure(std::span<const PointedTransducer> generators,
                      Budget const&                      budget  = {},
                      ClosureOptions const&              options = {});

// Straightforward single-threaded version of closure() that keeps every
// element as a transducer and builds every product. Same report as closure()
// as long as no product reaches the state cap.
ClosureReport closure_reference(std::span<const PointedTransducer> generators,
                                Budget const& budget = {});

// Re-multiplies every element of a finite report by every generator and
// checks that the product is listed, and that the table matches.
bool verify_closed(ClosureReport const&               report,
                   std::span<const PointedTransducer> generators,
                   std::size_t max_states = kDefaultMaxMachineStates);

// Structured (JSON) and text renderings. The finite multiplication table is
// emitted in the semigroup table formats.
std::string closure_report_json(ClosureReport const& report);
std::string closure_report_text(ClosureReport const& report);

struct FreeCheckReport {
  std::size_t              length = 0;
  std::size_t              rank   = 0;
  std::vector<std::size_t> distinct_counts;
  // Distinct elements over all lengths together.
  std::size_t distinct_total  = 0;
  bool        is_free_up_to_l = false;
  // No coincidences at all, including across different lengths.
  bool all_distinct = false;
};

// Counts distinct products of each length 1..l over `generators` (taken as
// given, duplicates included). Throws BudgetExceeded when the number of
// words exceeds budget.max_elements or a product exceeds the state cap.
FreeCheckReport free_check(std::span<const PointedTransducer> generators,
                           std::size_t                        l,
                           Budget const&                      budget = {});

std::string free_check_json(FreeCheckReport const& report);
std::string free_check_text(FreeCheckReport const& report);

struct FreeRightZeroPair {
  Element e;
  Element f;
};

struct NontrivialHClass {
  std::vector<Element> h_class;
  // Dual machine: {t : Ht in H}; Cayley machine: {t : tH in H}.
  std::vector<Element> stabilizer_t;
  // Stabilizer elements inducing pairwise distinct translations of H,
  // preferring the members of H when H is a group.
  std::vector<Element> witnesses;
};

struct Certificate {
  std::variant<FreeRightZeroPair, NontrivialHClass> kind;
  std::size_t                                       witness_words_checked = 0;
  bool                                              all_distinct = false;
  std::vector<std::size_t>                          distinct_counts;

  std::string kind_name() const;
};

// Infiniteness evidence for C(S) (dual = false) or C*(S) (dual = true): no
// value when the criterion predicts a finite semigroup.
std::optional<Certificate> certificate(FiniteSemigroup const& s,
                                       bool                   dual,
                                       std::size_t            l,
                                       Budget const&          budget = {});

// Isomorphism of the multiplication tables of two finite closures of at most
// 64 elements. Throws NotFinite otherwise.
bool closure_isomorphic(ClosureReport const& a, ClosureReport const& b);

struct Eq1Failure {
  std::vector<Element> word;
  Element              x = 0;
  std::string          reason;
};

struct Eq1Result {
  bool                      passed = true;
  std::size_t               trials = 0;
  std::optional<Eq1Failure> failure;
};

// Samples words a1..ak (k <= 5) and symbols x in the dual Cayley machine and
// checks that the state reached from a1...ak on x is the product of the
// generators for a1 x, a2 x a1, ..., ak x a1...a(k-1), and that the emitted
// symbol is x a1...ak. Deterministic for a given seed.
Eq1Result verify_eq1(FiniteSemigroup const& s,
                     std::size_t            trials,
                     std::uint64_t          seed);

}  // namespace machina
