#include "machina/semigroup.hpp"

#include <algorithm>
#include <charconv>
#include <string>

namespace machina {

NonAssociative::NonAssociative(Element a_, Element b_, Element c_)
    : SemigroupError("table is not associative at (" + std::to_string(a_)
                     + ", " + std::to_string(b_) + ", " + std::to_string(c_)
                     + ")"),
      a(a_),
      b(b_),
      c(c_) {}

OutOfRange::OutOfRange(std::size_t row_, std::size_t col_, std::size_t value_)
    : SemigroupError("table entry (" + std::to_string(row_) + ", "
                     + std::to_string(col_) + ") = " + std::to_string(value_)
                     + " is out of range"),
      row(row_),
      col(col_),
      value(value_) {}

std::vector<std::vector<Element>> FiniteSemigroup::rows() const {
  std::vector<std::vector<Element>> out(order_);
  for (Element a = 0; a < order_; ++a) {
    auto r = row(a);
    out[a].assign(r.begin(), r.end());
  }
  return out;
}

std::string FiniteSemigroup::label(Element a) const {
  if (labels_) {
    return (*labels_)[a];
  }
  return std::to_string(a);
}

Element FiniteSemigroup::product(std::span<const Element> word) const {
  if (word.empty()) {
    throw SemigroupError("product of an empty word is undefined");
  }
  Element acc = word[0];
  for (std::size_t i = 1; i < word.size(); ++i) {
    acc = (*this)(acc, word[i]);
  }
  return acc;
}

std::optional<std::array<Element, 3>> first_nonassociative(
    std::size_t order, std::span<const Element> t) {
  for (Element a = 0; a < order; ++a) {
    for (Element b = 0; b < order; ++b) {
      Element ab = t[a * order + b];
      for (Element c = 0; c < order; ++c) {
        if (t[ab * order + c] != t[a * order + t[b * order + c]]) {
          return std::array<Element, 3>{a, b, c};
        }
      }
    }
  }
  return std::nullopt;
}

FiniteSemigroup from_flat_table(std::size_t                             order,
                                std::span<const Element>                table,
                                std::optional<std::vector<std::string>> labels) {
  if (order == 0) {
    throw SemigroupError("semigroup order must be at least 1");
  }
  if (order > kMaxOrder) {
    throw OrderTooLarge("semigroup order " + std::to_string(order)
                        + " exceeds the maximum " + std::to_string(kMaxOrder));
  }
  if (table.size() != order * order) {
    throw SemigroupError("table must have " + std::to_string(order * order)
                         + " entries");
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] >= order) {
      throw OutOfRange(i / order, i % order, table[i]);
    }
  }
  if (labels && labels->size() != order) {
    throw SemigroupError("expected " + std::to_string(order) + " labels");
  }
  if (auto bad = first_nonassociative(order, table)) {
    throw NonAssociative((*bad)[0], (*bad)[1], (*bad)[2]);
  }
  FiniteSemigroup s;
  s.order_ = order;
  s.table_.assign(table.begin(), table.end());
  s.labels_ = std::move(labels);
  return s;
}

FiniteSemigroup from_table(std::size_t                              order,
                           std::vector<std::vector<Element>> const& table,
                           std::optional<std::vector<std::string>>  labels) {
  if (table.size() != order) {
    throw SemigroupError("table must have " + std::to_string(order) + " rows");
  }
  std::vector<Element> flat;
  flat.reserve(order * order);
  for (std::size_t r = 0; r < order; ++r) {
    if (table[r].size() != order) {
      throw SemigroupError("row " + std::to_string(r) + " must have "
                           + std::to_string(order) + " entries");
    }
    flat.insert(flat.end(), table[r].begin(), table[r].end());
  }
  return from_flat_table(order, flat, std::move(labels));
}

namespace {

FiniteSemigroup named_factor(std::string_view spec) {
  if (spec == "trivial") {
    return from_flat_table(1, std::vector<Element>{0});
  }
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw UnknownFamily("unknown semigroup family '" + std::string(spec) + "'");
  }
  auto        family = spec.substr(0, colon);
  auto        digits = spec.substr(colon + 1);
  std::size_t k      = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
    throw UnknownFamily("bad size in '" + std::string(spec) + "'");
  }
  if (k < 1) {
    throw SemigroupError("family size must be at least 1 in '"
                         + std::string(spec) + "'");
  }
  if (k > kMaxOrder) {
    throw OrderTooLarge("family size exceeds " + std::to_string(kMaxOrder));
  }
  std::vector<Element> t(k * k);
  for (Element a = 0; a < k; ++a) {
    for (Element b = 0; b < k; ++b) {
      Element v;
      if (family == "cyclic") {
        v = (a + b) % k;
      } else if (family == "leftzero") {
        v = a;
      } else if (family == "rightzero") {
        v = b;
      } else if (family == "chain") {
        v = std::min(a, b);
      } else if (family == "null") {
        v = 0;
      } else {
        throw UnknownFamily("unknown semigroup family '" + std::string(family)
                            + "'");
      }
      t[a * k + b] = v;
    }
  }
  return from_flat_table(k, t);
}

}  // namespace

FiniteSemigroup named(std::string_view spec) {
  auto star = spec.find('*');
  if (star == std::string_view::npos) {
    return named_factor(spec);
  }
  return direct_product(named_factor(spec.substr(0, star)),
                        named(spec.substr(star + 1)));
}

FiniteSemigroup direct_product(FiniteSemigroup const& a,
                               FiniteSemigroup const& b,
                               std::size_t            max_order) {
  std::size_t const na = a.order(), nb = b.order(), n = na * nb;
  if (n > max_order) {
    throw OrderTooLarge("direct product order " + std::to_string(n)
                        + " exceeds the maximum " + std::to_string(max_order));
  }
  std::vector<Element> t(n * n);
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      Element i = a(x / nb, y / nb);
      Element j = b(x % nb, y % nb);
      t[x * n + y] = i * nb + j;
    }
  }
  return from_flat_table(n, t);
}

Classification classify(FiniteSemigroup const& s) {
  std::size_t const n = s.order();
  Classification    c;
  c.is_left_zero   = true;
  c.is_right_zero  = true;
  c.is_commutative = true;
  for (Element a = 0; a < n; ++a) {
    if (s(a, a) == a) {
      c.idempotents.push_back(a);
    }
    for (Element b = 0; b < n; ++b) {
      c.is_left_zero  = c.is_left_zero && s(a, b) == a;
      c.is_right_zero = c.is_right_zero && s(a, b) == b;
      c.is_commutative = c.is_commutative && s(a, b) == s(b, a);
    }
  }
  // A finite semigroup is a group iff aS = S = Sa for every a.
  c.is_group = true;
  for (Element a = 0; a < n && c.is_group; ++a) {
    std::vector<bool> right(n), left(n);
    for (Element b = 0; b < n; ++b) {
      right[s(a, b)] = true;
      left[s(b, a)]  = true;
    }
    for (Element x = 0; x < n; ++x) {
      c.is_group = c.is_group && right[x] && left[x];
    }
  }
  return c;
}

}  // namespace machina
