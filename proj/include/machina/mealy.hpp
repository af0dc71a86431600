#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "machina/semigroup.hpp"

namespace machina {

using State  = std::uint32_t;
using Symbol = std::uint32_t;

// Cap on reachable states of a raw cascade product before minimization.
inline constexpr std::size_t kDefaultMaxMachineStates = 1'000'000;

class TransducerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SymbolOutOfRange : public TransducerError {
 public:
  SymbolOutOfRange(Symbol x, std::size_t alphabet);
};

class StateBudgetExceeded : public TransducerError {
 public:
  explicit StateBudgetExceeded(std::size_t cap);
};

// Complete deterministic Mealy machine; transitions and outputs are stored
// row-major, one row of alphabet_size entries per state.
class MealyMachine {
 public:
  MealyMachine() = default;
  MealyMachine(std::size_t         state_count,
               std::size_t         alphabet_size,
               std::vector<State>  delta,
               std::vector<Symbol> lambda);

  std::size_t state_count() const noexcept { return states_; }
  std::size_t alphabet_size() const noexcept { return alphabet_; }

  State next(State q, Symbol x) const noexcept {
    return delta_[q * alphabet_ + x];
  }
  Symbol output(State q, Symbol x) const noexcept {
    return lambda_[q * alphabet_ + x];
  }

  std::span<const State>  delta() const noexcept { return delta_; }
  std::span<const Symbol> lambda() const noexcept { return lambda_; }

  bool operator==(MealyMachine const&) const = default;

 private:
  std::size_t         states_   = 0;
  std::size_t         alphabet_ = 0;
  std::vector<State>  delta_;
  std::vector<Symbol> lambda_;
};

// A machine with a designated initial state: one transformation of the
// infinite sequences over the alphabet. Canonical instances are accessible,
// minimal, numbered in breadth-first order from the initial state (symbols
// scanned in increasing order) and have initial state 0; two canonical
// instances are structurally equal iff they induce the same transformation.
class PointedTransducer {
 public:
  PointedTransducer(MealyMachine machine, State initial);

  MealyMachine const& machine() const noexcept { return machine_; }
  State               initial() const noexcept { return initial_; }
  bool                canonical() const noexcept { return canonical_; }
  std::size_t         state_count() const noexcept {
    return machine_.state_count();
  }
  std::size_t alphabet_size() const noexcept {
    return machine_.alphabet_size();
  }

  bool operator==(PointedTransducer const& other) const noexcept {
    return initial_ == other.initial_ && machine_ == other.machine_;
  }

 private:
  friend PointedTransducer canonicalize(PointedTransducer const&);
  friend PointedTransducer decode_key(std::string_view);
  friend PointedTransducer compose(PointedTransducer const&,
                                   PointedTransducer const&,
                                   std::size_t);

  PointedTransducer(MealyMachine machine, State initial, bool canonical)
      : machine_(std::move(machine)), initial_(initial), canonical_(canonical) {}

  MealyMachine machine_;
  State        initial_   = 0;
  bool         canonical_ = false;
};

struct OutputMap {
  std::vector<Symbol> map;
  bool                operator==(OutputMap const&) const = default;
};

// State q reading x moves to q*x and outputs q*x.
MealyMachine cayley(FiniteSemigroup const& s);

// State q reading x moves to q*x and outputs x*q.
MealyMachine dual_cayley(FiniteSemigroup const& s);

// Canonical transducer for state q of m.
PointedTransducer generator(MealyMachine const& m, State q);

// One canonical generator per state, in state order.
std::vector<PointedTransducer> generators(MealyMachine const& m);

PointedTransducer identity_transducer(std::size_t alphabet_size);

PointedTransducer canonicalize(PointedTransducer const& u);

// Cascade product: u reads the input first and its output feeds v. In a
// product a1 a2 ... ak the leftmost factor acts first. The result is
// canonical. Throws StateBudgetExceeded when the reachable part of the raw
// product exceeds max_states.
PointedTransducer compose(PointedTransducer const& u,
                          PointedTransducer const& v,
                          std::size_t max_states = kDefaultMaxMachineStates);

// Left-to-right product of a nonempty sequence of transducers.
PointedTransducer compose_all(std::span<const PointedTransducer> factors,
                              std::size_t max_states = kDefaultMaxMachineStates);

bool equal(PointedTransducer const& u, PointedTransducer const& v);

struct StepResult {
  Symbol            output;
  PointedTransducer next;
};

StepResult step(PointedTransducer const& u, Symbol x);

OutputMap output_map(PointedTransducer const& u);

std::vector<Symbol> apply_prefix(PointedTransducer const& u,
                                 std::span<const Symbol>  word);

// Byte serialization of a canonical transducer: state count, alphabet size,
// flattened delta, flattened lambda. Delta entries use the narrowest of
// 1, 2 or 4 bytes that fits the state count; lambda uses 1 byte (alphabet
// sizes never exceed kMaxOrder). Byte equality of keys is equality of the
// induced transformations.
std::string       canonical_key(PointedTransducer const& u);
PointedTransducer decode_key(std::string_view key);

// One arc per line: "state symbol -> state / output".
std::string to_dot(PointedTransducer const& u);

}  // namespace machina
