#pragma once

// Test-only oracles, independent of the minimization and composition code.

#include <cstdint>
#include <random>
#include <vector>

#include "machina/catalog.hpp"
#include "machina/mealy.hpp"

namespace machina::testing {

// Runs the machine directly on every word of length `len` (all |A|^len of
// them) and reports whether u and v agree on each.
inline bool agree_on_all_words(PointedTransducer const& u,
                               PointedTransducer const& v,
                               std::size_t              len) {
  std::size_t const   a = u.alphabet_size();
  std::vector<Symbol> word(len, 0);
  while (true) {
    State p = u.initial(), q = v.initial();
    for (Symbol x : word) {
      if (u.machine().output(p, x) != v.machine().output(q, x)) {
        return false;
      }
      p = u.machine().next(p, x);
      q = v.machine().next(q, x);
    }
    std::size_t i = len;
    while (i > 0 && word[i - 1] == a - 1) {
      word[--i] = 0;
    }
    if (i == 0) {
      return true;
    }
    ++word[i - 1];
  }
}

inline PointedTransducer random_transducer(std::mt19937_64& rng,
                                           std::size_t      states,
                                           std::size_t      alphabet) {
  std::uniform_int_distribution<State>  st(0, static_cast<State>(states - 1));
  std::uniform_int_distribution<Symbol> sy(0, static_cast<Symbol>(alphabet - 1));
  std::vector<State>                    delta(states * alphabet);
  std::vector<Symbol>                   lambda(states * alphabet);
  for (auto& d : delta) {
    d = st(rng);
  }
  for (auto& l : lambda) {
    l = sy(rng);
  }
  return {MealyMachine(states, alphabet, delta, lambda), st(rng)};
}

// Every isomorphism class of order 1..max_order.
inline std::vector<FiniteSemigroup> iso_catalog(std::size_t max_order) {
  std::vector<FiniteSemigroup> out;
  for (std::size_t n = 1; n <= max_order; ++n) {
    for (auto& e : enumerate(n, EnumerationMode::up_to_iso)) {
      out.push_back(e.semigroup);
    }
  }
  return out;
}

// Every labeled semigroup of order 1..max_order.
inline std::vector<FiniteSemigroup> labeled_catalog(std::size_t max_order) {
  std::vector<FiniteSemigroup> out;
  for (std::size_t n = 1; n <= max_order; ++n) {
    for (auto& e : enumerate(n, EnumerationMode::labeled)) {
      out.push_back(e.semigroup);
    }
  }
  return out;
}

}  // namespace machina::testing
