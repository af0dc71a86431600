#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace machina {

using Element = std::uint32_t;

// Largest semigroup order accepted anywhere in the library.
inline constexpr std::size_t kMaxOrder = 256;

class SemigroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonAssociative : public SemigroupError {
 public:
  NonAssociative(Element a, Element b, Element c);
  Element a, b, c;
};

class OutOfRange : public SemigroupError {
 public:
  OutOfRange(std::size_t row, std::size_t col, std::size_t value);
  std::size_t row, col, value;
};

class UnknownFamily : public SemigroupError {
 public:
  using SemigroupError::SemigroupError;
};

class OrderTooLarge : public SemigroupError {
 public:
  using SemigroupError::SemigroupError;
};

// An associative multiplication table on the elements 0..n-1. Immutable once
// constructed; the only way to build one is through from_table (or helpers
// that call it), so every instance has passed the full associativity check.
class FiniteSemigroup {
 public:
  std::size_t order() const noexcept { return order_; }

  Element operator()(Element a, Element b) const noexcept {
    return table_[a * order_ + b];
  }

  std::span<const Element> row(Element a) const noexcept {
    return {table_.data() + a * order_, order_};
  }

  // Row-major n*n table.
  std::span<const Element> table() const noexcept { return table_; }

  std::vector<std::vector<Element>> rows() const;

  std::optional<std::vector<std::string>> const& labels() const noexcept {
    return labels_;
  }

  std::string label(Element a) const;

  // Product of a nonempty word, evaluated left to right.
  Element product(std::span<const Element> word) const;

  bool operator==(FiniteSemigroup const& other) const noexcept {
    return order_ == other.order_ && table_ == other.table_;
  }

 private:
  friend FiniteSemigroup from_table(std::size_t,
                                    std::vector<std::vector<Element>> const&,
                                    std::optional<std::vector<std::string>>);
  friend FiniteSemigroup from_flat_table(std::size_t,
                                         std::span<const Element>,
                                         std::optional<std::vector<std::string>>);

  FiniteSemigroup() = default;

  std::size_t                             order_ = 0;
  std::vector<Element>                    table_;
  std::optional<std::vector<std::string>> labels_;
};

// Validates range and associativity. The first failing triple in
// lexicographic (a, b, c) order is reported.
FiniteSemigroup from_table(std::size_t                              order,
                           std::vector<std::vector<Element>> const& table,
                           std::optional<std::vector<std::string>> labels = {});

FiniteSemigroup from_flat_table(std::size_t                             order,
                                std::span<const Element>                table,
                                std::optional<std::vector<std::string>> labels
                                = {});

// Returns the lexicographically first failing triple, if any. No range check.
std::optional<std::array<Element, 3>> first_nonassociative(
    std::size_t order, std::span<const Element> table);

// Named families: cyclic:k, leftzero:k, rightzero:k, chain:k, null:k,
// trivial. Factors joined with '*' denote a direct product, for example
// "cyclic:2*cyclic:2".
FiniteSemigroup named(std::string_view spec);

// Element (i, j) is encoded as i * |b| + j.
FiniteSemigroup direct_product(FiniteSemigroup const& a,
                               FiniteSemigroup const& b,
                               std::size_t max_order = kMaxOrder);

struct Classification {
  bool                 is_group       = false;
  bool                 is_left_zero   = false;
  bool                 is_right_zero  = false;
  bool                 is_commutative = false;
  std::vector<Element> idempotents;
};

Classification classify(FiniteSemigroup const& s);

}  // namespace machina
