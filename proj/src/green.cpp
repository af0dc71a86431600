#include "machina/green.hpp"

#include <algorithm>
#include <map>

namespace machina {

std::vector<std::vector<Element>> Partition::classes() const {
  std::vector<std::vector<Element>> out(class_count);
  for (Element a = 0; a < class_of.size(); ++a) {
    out[class_of[a]].push_back(a);
  }
  return out;
}

std::vector<Element> Partition::members(std::size_t id) const {
  std::vector<Element> out;
  for (Element a = 0; a < class_of.size(); ++a) {
    if (class_of[a] == id) {
      out.push_back(a);
    }
  }
  return out;
}

namespace {

using ElementSet = std::vector<bool>;

// {a} u aS, {a} u Sa and {a} u aS u Sa u SaS are already ideals, so no
// closure iteration is needed.
ElementSet right_ideal(FiniteSemigroup const& s, Element a) {
  ElementSet out(s.order());
  out[a] = true;
  for (Element x : s.row(a)) {
    out[x] = true;
  }
  return out;
}

ElementSet left_ideal(FiniteSemigroup const& s, Element a) {
  ElementSet out(s.order());
  out[a] = true;
  for (Element x = 0; x < s.order(); ++x) {
    out[s(x, a)] = true;
  }
  return out;
}

ElementSet two_sided_ideal(FiniteSemigroup const& s, Element a) {
  std::size_t const n = s.order();
  ElementSet        out(n);
  out[a] = true;
  for (Element x = 0; x < n; ++x) {
    out[s(a, x)] = true;
    out[s(x, a)] = true;
    for (Element y = 0; y < n; ++y) {
      out[s(s(x, a), y)] = true;
    }
  }
  return out;
}

Partition partition_by(std::vector<ElementSet> const& keys) {
  Partition                      p;
  std::map<ElementSet, std::size_t> ids;
  p.class_of.resize(keys.size());
  for (Element a = 0; a < keys.size(); ++a) {
    auto [it, inserted] = ids.try_emplace(keys[a], p.class_count);
    if (inserted) {
      ++p.class_count;
    }
    p.class_of[a] = it->second;
  }
  return p;
}

Partition meet(Partition const& x, Partition const& y) {
  Partition                                             p;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> ids;
  p.class_of.resize(x.class_of.size());
  for (Element a = 0; a < x.class_of.size(); ++a) {
    auto [it, inserted]
        = ids.try_emplace({x.class_of[a], y.class_of[a]}, p.class_count);
    if (inserted) {
      ++p.class_count;
    }
    p.class_of[a] = it->second;
  }
  return p;
}

bool strictly_contained(ElementSet const& x, ElementSet const& y) {
  bool proper = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] && !y[i]) {
      return false;
    }
    proper = proper || (y[i] && !x[i]);
  }
  return proper;
}

}  // namespace

GreenStructure green(FiniteSemigroup const& s) {
  std::size_t const       n = s.order();
  std::vector<ElementSet> rights(n), lefts(n), twos(n);
  for (Element a = 0; a < n; ++a) {
    rights[a] = right_ideal(s, a);
    lefts[a]  = left_ideal(s, a);
    twos[a]   = two_sided_ideal(s, a);
  }
  GreenStructure g;
  g.r = partition_by(rights);
  g.l = partition_by(lefts);
  g.h = meet(g.r, g.l);
  g.d = partition_by(twos);

  std::size_t const        dc = g.d.class_count;
  std::vector<ElementSet> ideal_of(dc);
  for (Element a = 0; a < n; ++a) {
    ideal_of[g.d.class_of[a]] = twos[a];
  }
  g.d_below.assign(dc, std::vector<bool>(dc, false));
  for (std::size_t c = 0; c < dc; ++c) {
    for (std::size_t d = 0; d < dc; ++d) {
      g.d_below[c][d] = strictly_contained(ideal_of[c], ideal_of[d]);
    }
  }
  std::vector<bool> is_max(dc, true);
  for (std::size_t c = 0; c < dc; ++c) {
    for (std::size_t d = 0; d < dc; ++d) {
      if (g.d_below[c][d]) {
        is_max[c] = false;
      }
    }
    if (is_max[c]) {
      g.maximal_d.push_back(c);
    }
  }
  for (Element a = 0; a < n; ++a) {
    if (!is_max[g.d.class_of[a]]) {
      g.ideal_i.push_back(a);
    }
  }
  return g;
}

std::optional<std::pair<Element, Element>> right_zero_idempotent_pair(
    FiniteSemigroup const& s) {
  for (Element e = 0; e < s.order(); ++e) {
    if (s(e, e) != e) {
      continue;
    }
    for (Element f = 0; f < s.order(); ++f) {
      if (f != e && s(f, f) == f && s(e, f) == f && s(f, e) == e) {
        return std::pair{e, f};
      }
    }
  }
  return std::nullopt;
}

std::optional<std::pair<Element, Element>> r_related_idempotent_pair(
    FiniteSemigroup const& s, GreenStructure const& g) {
  for (Element e = 0; e < s.order(); ++e) {
    if (s(e, e) != e) {
      continue;
    }
    for (Element f = 0; f < s.order(); ++f) {
      if (f != e && s(f, f) == f && g.r.same(e, f)) {
        return std::pair{e, f};
      }
    }
  }
  return std::nullopt;
}

CriterionVerdict criteria(FiniteSemigroup const& s) {
  return criteria(s, green(s));
}

CriterionVerdict criteria(FiniteSemigroup const& s, GreenStructure const& g) {
  CriterionVerdict v;
  v.h_trivial  = g.h.class_count == s.order();
  auto by_rule = right_zero_idempotent_pair(s);
  auto by_r    = r_related_idempotent_pair(s, g);
  if (by_rule != by_r) {
    throw InternalDisagreement(
        "right zero idempotent pair and R-related idempotent pair disagree");
  }
  v.right_zero_pair = by_rule;
  v.cayley_finite   = v.h_trivial;
  v.dual_finite     = v.h_trivial && !v.right_zero_pair;
  return v;
}

SchutzenbergerGroup schutzenberger(FiniteSemigroup const& s, Element h_member) {
  return schutzenberger(s, green(s), h_member);
}

SchutzenbergerGroup schutzenberger(FiniteSemigroup const& s,
                                   GreenStructure const&  g,
                                   Element                h_member) {
  if (h_member >= s.order()) {
    throw OutOfRange(h_member, 0, h_member);
  }
  SchutzenbergerGroup out;
  out.h_class = g.h.members(g.h.class_of[h_member]);
  std::vector<bool> in_h(s.order());
  for (Element h : out.h_class) {
    in_h[h] = true;
  }
  for (Element t = 0; t < s.order(); ++t) {
    bool stabilizes = std::all_of(out.h_class.begin(),
                                  out.h_class.end(),
                                  [&](Element h) { return in_h[s(h, t)]; });
    if (!stabilizes) {
      continue;
    }
    out.stabilizer_t.push_back(t);
    std::vector<Element> image;
    image.reserve(out.h_class.size());
    for (Element h : out.h_class) {
      image.push_back(s(h, t));
    }
    if (std::find(out.maps.begin(), out.maps.end(), image) == out.maps.end()) {
      out.maps.push_back(std::move(image));
      out.representatives.push_back(t);
    }
  }
  // t ranges over S^1: the adjoined identity always stabilizes H.
  if (std::find(out.maps.begin(), out.maps.end(), out.h_class) == out.maps.end()) {
    out.maps.insert(out.maps.begin(), out.h_class);
    out.representatives.insert(out.representatives.begin(),
                               static_cast<Element>(s.order()));
  }
  return out;
}

bool miller_clifford_holds(FiniteSemigroup const& s) {
  auto g = green(s);
  for (Element a = 0; a < s.order(); ++a) {
    for (Element b = 0; b < s.order(); ++b) {
      Element ab = s(a, b);
      if (g.d.same(a, b) && g.d.same(a, ab)
          && !(g.r.same(ab, a) && g.l.same(ab, b))) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace machina
