#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "machina/semigroup.hpp"

namespace machina {

// A partition of 0..n-1 stored as a class index per element. Class ids are
// assigned in order of each class's smallest element.
struct Partition {
  std::vector<std::size_t> class_of;
  std::size_t              class_count = 0;

  std::vector<std::vector<Element>> classes() const;
  std::vector<Element>              members(std::size_t id) const;
  bool                              same(Element a, Element b) const {
    return class_of[a] == class_of[b];
  }
  bool operator==(Partition const&) const = default;
};

struct GreenStructure {
  Partition r;
  Partition l;
  Partition h;
  Partition d;
  // below[c][d] holds when the principal ideal of D-class c is strictly
  // contained in that of D-class d.
  std::vector<std::vector<bool>> d_below;
  std::vector<std::size_t>       maximal_d;
  std::vector<Element>           ideal_i;

  bool d_less(std::size_t c, std::size_t d) const { return d_below[c][d]; }
};

// D is computed as J, which coincides with D for finite semigroups.
GreenStructure green(FiniteSemigroup const& s);

class InternalDisagreement : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct CriterionVerdict {
  bool                                   h_trivial = false;
  std::optional<std::pair<Element, Element>> right_zero_pair;
  bool                                   cayley_finite = false;
  bool                                   dual_finite   = false;
};

// Lexicographically first pair (e, f), e != f, of idempotents with ef = f
// and fe = e, i.e. forming a two-element right zero subsemigroup.
std::optional<std::pair<Element, Element>> right_zero_idempotent_pair(
    FiniteSemigroup const& s);

// Lexicographically first pair of distinct R-related idempotents.
std::optional<std::pair<Element, Element>> r_related_idempotent_pair(
    FiniteSemigroup const& s, GreenStructure const& g);

// Throws InternalDisagreement when the two pair predicates above differ.
CriterionVerdict criteria(FiniteSemigroup const& s);
CriterionVerdict criteria(FiniteSemigroup const& s, GreenStructure const& g);

struct SchutzenbergerGroup {
  std::vector<Element> h_class;
  // T = { t in S : Ht is contained in H }.
  std::vector<Element> stabilizer_t;
  // Each map lists the image of h_class[i] at position i. Deduplicated, in
  // order of the smallest t inducing the map.
  std::vector<std::vector<Element>> maps;
  // representatives[k] is the smallest t in T inducing maps[k], or order()
  // for the identity map when only the adjoined identity of S^1 induces it.
  std::vector<Element> representatives;
};

SchutzenbergerGroup schutzenberger(FiniteSemigroup const& s, Element h_member);
SchutzenbergerGroup schutzenberger(FiniteSemigroup const& s,
                                   GreenStructure const&  g,
                                   Element                h_member);

// True iff whenever a, b and ab share a D-class, ab lies in R_a and L_b.
bool miller_clifford_holds(FiniteSemigroup const& s);

}  // namespace machina
