#include "machina/closure.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "machina/green.hpp"
#include "machina/parallel.hpp"
#include "json.hpp"

namespace machina {

char const* to_string(Resource r) noexcept {
  switch (r) {
    case Resource::elements:
      return "elements";
    case Resource::machine_states:
      return "machine_states";
    case Resource::time:
      return "time";
  }
  return "unknown";
}

std::size_t ClosureReport::element_count() const noexcept {
  return is_finite() ? std::get<FiniteClosure>(verdict).size()
                     : std::get<ExhaustedClosure>(verdict).elements_found;
}

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// Length of each probe input used to tell closure elements apart cheaply.
constexpr std::size_t kClosureProbeWidth = 64;

using Clock = std::chrono::steady_clock;

class Deadline {
 public:
  explicit Deadline(std::size_t millis)
      : end_(Clock::now() + std::chrono::milliseconds(millis)) {}
  bool passed() const { return Clock::now() >= end_; }

 private:
  Clock::time_point end_;
};

struct Discovery {
  std::vector<std::uint32_t> parent;  // kNone for generators
  std::vector<std::uint32_t> last;    // generator index
  std::vector<std::uint32_t> right;   // right[i * g + j] = i * gen_j

  void add(std::uint32_t p, std::uint32_t gen, std::size_t g) {
    parent.push_back(p);
    last.push_back(gen);
    right.resize(right.size() + g, kNone);
  }
};

FiniteClosure build_finite(std::vector<PointedTransducer> elements,
                           Discovery const&               disc,
                           std::size_t                    g) {
  std::size_t const n = elements.size();
  FiniteClosure     fc;
  fc.elements = std::move(elements);
  fc.words.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (disc.parent[j] != kNone) {
      fc.words[j] = fc.words[disc.parent[j]];
    }
    fc.words[j].push_back(disc.last[j]);
  }
  // x * e_j = (x * e_parent) * gen_last, with parents discovered earlier.
  fc.table.assign(n, std::vector<std::uint32_t>(n, kNone));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::uint32_t left
          = disc.parent[j] == kNone ? static_cast<std::uint32_t>(i)
                                    : fc.table[i][disc.parent[j]];
      fc.table[i][j] = disc.right[left * g + disc.last[j]];
    }
  }
  return fc;
}

// Words over the generators evaluated on a fixed set of probe inputs. Two
// words with different probe outputs are different transformations; words
// whose outputs agree are compared by canonical form.
class WordTable {
 public:
  WordTable(std::vector<PointedTransducer> gens,
            std::size_t                    width,
            std::size_t                    max_states)
      : gens_(std::move(gens)), max_states_(max_states) {
    std::size_t const a = gens_.front().alphabet_size();
    std::mt19937_64   rng(0x5eed);
    std::uniform_int_distribution<Symbol> sy(0, static_cast<Symbol>(a - 1));
    for (Symbol x = 0; x < std::min<std::size_t>(a, 4); ++x) {
      probes_.emplace_back(width, x);
    }
    for (int k = 0; k < 4; ++k) {
      std::vector<Symbol> w(width);
      for (auto& x : w) {
        x = sy(rng);
      }
      probes_.push_back(std::move(w));
    }
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t level(std::uint32_t i) const { return nodes_[i].level; }

  // Probe outputs of (word i) * gen, or of gen alone when i is kNone.
  std::string signature(std::uint32_t i, std::uint32_t gen) const {
    std::string out;
    out.reserve(probes_.size() * probes_.front().size());
    auto const& m = gens_[gen].machine();
    for (std::size_t p = 0; p < probes_.size(); ++p) {
      State q = gens_[gen].initial();
      for (std::size_t t = 0; t < probes_[p].size(); ++t) {
        Symbol x = i == kNone
                       ? probes_[p][t]
                       : static_cast<unsigned char>(
                             nodes_[i].outputs[p * probes_[p].size() + t]);
        out.push_back(static_cast<char>(m.output(q, x)));
        q = m.next(q, x);
      }
    }
    return out;
  }

  std::uint32_t add(std::uint32_t              parent,
                    std::uint32_t              gen,
                    std::string                outputs,
                    std::optional<std::string> key = std::nullopt) {
    std::size_t lvl = parent == kNone ? 1 : nodes_[parent].level + 1;
    nodes_.push_back({parent, gen, lvl, std::move(outputs), std::move(key)});
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }

  // Outputs are only needed while a word is still to be extended.
  void drop_outputs(std::uint32_t i) { std::string().swap(nodes_[i].outputs); }

  // Canonical key of (word parent) * gen. Throws BudgetExceeded when the
  // raw product exceeds the state cap.
  std::string product_key(std::uint32_t parent, std::uint32_t gen) {
    try {
      return parent == kNone ? canonical_key(gens_[gen])
                             : canonical_key(compose(decode_key(key(parent)),
                                                     gens_[gen], max_states_));
    } catch (StateBudgetExceeded const&) {
      throw BudgetExceeded("product exceeds " + std::to_string(max_states_)
                           + " states");
    }
  }

  std::string const& key(std::uint32_t i) {
    auto& n = nodes_[i];
    if (!n.key) {
      n.key = product_key(n.parent, n.gen);
    }
    return *n.key;
  }

 private:
  struct Node {
    std::uint32_t              parent;
    std::uint32_t              gen;
    std::size_t                level;
    std::string                outputs;
    std::optional<std::string> key;
  };
  std::vector<PointedTransducer>   gens_;
  std::size_t                      max_states_;
  std::vector<std::vector<Symbol>> probes_;
  std::deque<Node>                 nodes_;
};

// Canonical, deduplicated generators in first-occurrence order.
std::vector<PointedTransducer> distinct_generators(
    std::span<const PointedTransducer> generators) {
  if (generators.empty()) {
    throw std::invalid_argument("closure needs at least one generator");
  }
  std::vector<PointedTransducer> out;
  for (auto const& gen : generators) {
    if (gen.alphabet_size() != generators[0].alphabet_size()) {
      throw TransducerError("generators use different alphabets");
    }
    auto c = canonicalize(gen);
    if (std::find(out.begin(), out.end(), c) == out.end()) {
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace

ClosureReport closure(std::span<const PointedTransducer> generators,
                      Budget const&                      budget,
                      ClosureOptions const&              options) {
  Deadline const    deadline(budget.max_millis);
  std::size_t const threads = worker_count(options.threads);
  std::size_t const batch   = std::max<std::size_t>(options.batch, 1);
  auto              gens    = distinct_generators(generators);
  std::size_t const g       = gens.size();

  ClosureReport report;
  report.generator_count = g;
  WordTable table(gens, kClosureProbeWidth, budget.max_machine_states);
  Discovery disc;
  // First element seen with each probe signature hash. Elements sharing a
  // hash with an earlier one are told apart by canonical key, and from then
  // on every element of that hash is listed in by_key.
  std::unordered_map<std::uint64_t, std::uint32_t>    by_signature;
  std::unordered_map<std::string_view, std::uint32_t> by_key;

  auto exhausted = [&](Resource r) {
    report.verdict = ExhaustedClosure{table.size(), r};
    return report;
  };
  auto hash_of = [](std::string const& sig) {
    return static_cast<std::uint64_t>(std::hash<std::string>{}(sig));
  };
  std::vector<bool> keyed;
  auto              index_key = [&](std::uint32_t id) {
    by_key.emplace(std::string_view(table.key(id)), id);
    keyed[id] = true;
  };

  // Id of (word parent) * gen, adding it when new. kNone when the store is
  // full.
  auto insert = [&](std::uint32_t parent, std::uint32_t gen,
                    std::string&& sig) -> std::pair<std::uint32_t, bool> {
    auto const h  = hash_of(sig);
    auto const it = by_signature.find(h);
    if (it == by_signature.end()) {
      if (table.size() >= budget.max_elements) {
        return {kNone, false};
      }
      auto id = table.add(parent, gen, std::move(sig));
      keyed.push_back(false);
      by_signature.emplace(h, id);
      return {id, true};
    }
    if (!keyed[it->second]) {
      index_key(it->second);
    }
    auto key = table.product_key(parent, gen);
    if (auto hit = by_key.find(key); hit != by_key.end()) {
      return {hit->second, false};
    }
    if (table.size() >= budget.max_elements) {
      return {kNone, false};
    }
    auto id = table.add(parent, gen, std::move(sig), std::move(key));
    keyed.push_back(false);
    index_key(id);
    return {id, true};
  };

  std::vector<std::uint32_t> frontier, next;
  bool                       exploring = false;
  try {
    for (std::uint32_t j = 0; j < g; ++j) {
      auto [id, fresh] = insert(kNone, j, table.signature(kNone, j));
      if (id == kNone) {
        return exhausted(Resource::elements);
      }
      disc.add(kNone, j, g);
      frontier.push_back(id);
    }
    report.growth_by_length.push_back(g);

    while (!frontier.empty()) {
      next.clear();
      report.growth_by_length.push_back(0);
      exploring = true;
      for (std::size_t start = 0; start < frontier.size(); start += batch) {
        if (deadline.passed()) {
          report.growth_by_length.back() = next.size();
          return exhausted(Resource::time);
        }
        std::size_t const        stop = std::min(frontier.size(), start + batch);
        std::vector<std::string> sigs((stop - start) * g);
        auto const               count = static_cast<std::int64_t>(stop - start);
#pragma omp parallel for schedule(static) num_threads(threads) if (threads > 1)
        for (std::int64_t i = 0; i < count; ++i) {
          for (std::uint32_t j = 0; j < g; ++j) {
            sigs[i * g + j] = table.signature(frontier[start + i], j);
          }
        }
        for (std::size_t i = start; i < stop; ++i) {
          for (std::uint32_t j = 0; j < g; ++j) {
            auto [id, fresh]
                = insert(frontier[i], j, std::move(sigs[(i - start) * g + j]));
            if (id == kNone) {
              report.growth_by_length.back() = next.size();
              return exhausted(Resource::elements);
            }
            if (fresh) {
              disc.add(frontier[i], j, g);
              next.push_back(id);
            }
            disc.right[frontier[i] * g + j] = id;
          }
          table.drop_outputs(frontier[i]);
        }
      }
      report.growth_by_length.back() = next.size();
      exploring = false;
      if (next.empty()) {
        report.growth_by_length.pop_back();
      }
      frontier.swap(next);
    }

    std::vector<PointedTransducer> elements;
    elements.reserve(table.size());
    for (std::uint32_t i = 0; i < table.size(); ++i) {
      elements.push_back(decode_key(table.key(i)));
    }
    report.verdict = build_finite(std::move(elements), disc, g);
  } catch (BudgetExceeded const&) {
    if (exploring) {
      report.growth_by_length.back() = next.size();
    }
    return exhausted(Resource::machine_states);
  }
  return report;
}

ClosureReport closure_reference(std::span<const PointedTransducer> generators,
                                Budget const&                      budget) {
  Deadline const    deadline(budget.max_millis);
  auto              gens = distinct_generators(generators);
  std::size_t const g    = gens.size();

  ClosureReport report;
  report.generator_count = g;
  std::vector<PointedTransducer>         elements;
  std::vector<std::size_t>               depth;
  std::map<std::string, std::uint32_t>   seen;
  Discovery                              disc;

  auto exhausted = [&](Resource r) {
    report.verdict = ExhaustedClosure{elements.size(), r};
    return report;
  };
  auto count_at = [&](std::size_t d) {
    if (report.growth_by_length.size() < d) {
      report.growth_by_length.resize(d, 0);
    }
  };

  for (std::uint32_t j = 0; j < g; ++j) {
    if (elements.size() >= budget.max_elements) {
      return exhausted(Resource::elements);
    }
    seen.emplace(canonical_key(gens[j]), j);
    elements.push_back(gens[j]);
    depth.push_back(1);
    disc.add(kNone, j, g);
  }
  count_at(1);
  report.growth_by_length[0] = g;

  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (deadline.passed()) {
      return exhausted(Resource::time);
    }
    count_at(depth[i] + 1);
    for (std::uint32_t j = 0; j < g; ++j) {
      PointedTransducer product = gens[j];
      try {
        product = compose(elements[i], gens[j], budget.max_machine_states);
      } catch (StateBudgetExceeded const&) {
        return exhausted(Resource::machine_states);
      }
      auto key = canonical_key(product);
      auto it  = seen.find(key);
      if (it == seen.end()) {
        if (elements.size() >= budget.max_elements) {
          return exhausted(Resource::elements);
        }
        auto id = static_cast<std::uint32_t>(elements.size());
        it      = seen.emplace(std::move(key), id).first;
        elements.push_back(std::move(product));
        depth.push_back(depth[i] + 1);
        disc.add(static_cast<std::uint32_t>(i), j, g);
        ++report.growth_by_length[depth[i]];
      }
      disc.right[i * g + j] = it->second;
    }
  }
  while (!report.growth_by_length.empty()
         && report.growth_by_length.back() == 0) {
    report.growth_by_length.pop_back();
  }
  report.verdict = build_finite(std::move(elements), disc, g);
  return report;
}

bool verify_closed(ClosureReport const&               report,
                   std::span<const PointedTransducer> generators,
                   std::size_t                        max_states) {
  if (!report.is_finite()) {
    return false;
  }
  auto const& fc   = report.finite();
  auto        gens = distinct_generators(generators);
  std::map<std::string, std::uint32_t> index;
  for (std::uint32_t i = 0; i < fc.size(); ++i) {
    index.emplace(canonical_key(fc.elements[i]), i);
  }
  if (index.size() != fc.size()) {
    return false;
  }
  for (auto const& gen : gens) {
    if (!index.contains(canonical_key(gen))) {
      return false;
    }
  }
  for (auto const& e : fc.elements) {
    for (auto const& gen : gens) {
      if (!index.contains(canonical_key(compose(e, gen, max_states)))) {
        return false;
      }
    }
  }
  for (std::size_t i = 0; i < fc.size(); ++i) {
    for (std::size_t j = 0; j < fc.size(); ++j) {
      auto it = index.find(
          canonical_key(compose(fc.elements[i], fc.elements[j], max_states)));
      if (it == index.end() || it->second != fc.table[i][j]) {
        return false;
      }
    }
  }
  return true;
}

namespace {

std::string table_text(std::vector<std::vector<std::uint32_t>> const& table) {
  std::ostringstream out;
  out << table.size() << '\n';
  for (auto const& row : table) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      out << (j == 0 ? "" : " ") << row[j];
    }
    out << '\n';
  }
  return out.str();
}

std::string join(std::vector<std::size_t> const& v) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    out << (i == 0 ? "" : ",") << v[i];
  }
  out << ']';
  return out.str();
}

}  // namespace

std::string closure_report_json(ClosureReport const& report) {
  nlohmann::json doc;
  doc["format_version"]   = 1;
  doc["kind"]             = "closure";
  doc["generator_count"]  = report.generator_count;
  doc["growth_by_length"] = report.growth_by_length;
  if (report.is_finite()) {
    auto const& fc  = report.finite();
    doc["verdict"]  = "finite";
    doc["size"]     = fc.size();
    doc["words"]    = fc.words;
    doc["table"]    = {{"order", fc.size()}, {"table", fc.table}};
    std::vector<std::size_t> states;
    for (auto const& e : fc.elements) {
      states.push_back(e.state_count());
    }
    doc["element_states"] = states;
  } else {
    doc["verdict"]        = "exhausted";
    doc["elements_found"] = report.exhausted().elements_found;
    doc["limit"]          = to_string(report.exhausted().limit);
  }
  return doc.dump(2) + "\n";
}

std::string closure_report_text(ClosureReport const& report) {
  std::ostringstream out;
  out << "generators: " << report.generator_count << '\n';
  if (report.is_finite()) {
    out << "verdict: finite\n";
    out << "size: " << report.finite().size() << '\n';
  } else {
    out << "verdict: exhausted\n";
    out << "elements_found: " << report.exhausted().elements_found << '\n';
    out << "limit: " << to_string(report.exhausted().limit) << '\n';
  }
  out << "growth_by_length: " << join(report.growth_by_length) << '\n';
  if (report.is_finite()) {
    out << "table:\n" << table_text(report.finite().table);
  }
  return out.str();
}

FreeCheckReport free_check(std::span<const PointedTransducer> generators,
                           std::size_t                        l,
                           Budget const&                      budget) {
  if (l < 1) {
    throw std::invalid_argument("free check length must be at least 1");
  }
  if (generators.empty()) {
    throw std::invalid_argument("free check needs at least one generator");
  }
  std::size_t const g     = generators.size();
  std::size_t       words = 0;
  std::size_t       power = 1;
  for (std::size_t i = 0; i < l; ++i) {
    power *= g;
    words += power;
    if (words > budget.max_elements) {
      throw BudgetExceeded("free check needs " + std::to_string(words)
                           + "+ words, budget is "
                           + std::to_string(budget.max_elements));
    }
  }
  std::vector<PointedTransducer> gens;
  for (auto const& gen : generators) {
    if (gen.alphabet_size() != generators.front().alphabet_size()) {
      throw TransducerError("generators use different alphabets");
    }
    gens.push_back(canonicalize(gen));
  }
  std::size_t const threads = worker_count();

  FreeCheckReport report;
  report.length = l;
  report.rank   = g;
  WordTable table(gens, l + 8, budget.max_machine_states);
  std::unordered_map<std::string, std::vector<std::uint32_t>> by_signature;

  // The distinct products of length i+1 are exactly the distinct products
  // of length i times each generator, so only representatives are extended.
  std::vector<std::uint32_t> level{kNone};
  bool                       all = true;
  for (std::size_t len = 1; len <= l; ++len) {
    std::vector<std::string> sigs(level.size() * g);
    auto const               count = static_cast<std::int64_t>(level.size());
#pragma omp parallel for schedule(static) num_threads(threads) if (threads > 1)
    for (std::int64_t i = 0; i < count; ++i) {
      for (std::size_t j = 0; j < g; ++j) {
        sigs[i * g + j] = table.signature(level[i], static_cast<std::uint32_t>(j));
      }
    }
    std::vector<std::uint32_t> next;
    for (std::size_t c = 0; c < sigs.size(); ++c) {
      auto parent = level[c / g];
      auto gen    = static_cast<std::uint32_t>(c % g);
      auto& bucket = by_signature[sigs[c]];
      auto  id     = table.add(parent, gen, std::move(sigs[c]));
      bool  same_level = false, earlier = false;
      for (auto other : bucket) {
        if (table.key(other) == table.key(id)) {
          (table.level(other) == len ? same_level : earlier) = true;
        }
      }
      if (same_level) {
        continue;
      }
      all = all && !earlier;
      bucket.push_back(id);
      next.push_back(id);
    }
    level = std::move(next);
    report.distinct_counts.push_back(level.size());
  }
  std::size_t total = 0;
  for (auto const& [sig, ids] : by_signature) {
    std::vector<std::string_view> keys;
    for (auto id : ids) {
      keys.push_back(ids.size() == 1 ? std::string_view{} : table.key(id));
    }
    std::sort(keys.begin(), keys.end());
    total += std::unique(keys.begin(), keys.end()) - keys.begin();
  }
  report.distinct_total  = total;
  report.is_free_up_to_l = true;
  std::size_t expected   = 1;
  for (std::size_t i = 0; i < l; ++i) {
    expected *= g;
    report.is_free_up_to_l
        = report.is_free_up_to_l && report.distinct_counts[i] == expected;
  }
  report.all_distinct = all && report.is_free_up_to_l;
  return report;
}

std::string free_check_json(FreeCheckReport const& report) {
  nlohmann::json doc;
  doc["format_version"]  = 1;
  doc["kind"]            = "free_check";
  doc["length"]          = report.length;
  doc["rank"]            = report.rank;
  doc["distinct_counts"] = report.distinct_counts;
  doc["distinct_total"]  = report.distinct_total;
  doc["is_free_up_to_l"] = report.is_free_up_to_l;
  doc["all_distinct"]    = report.all_distinct;
  return doc.dump(2) + "\n";
}

std::string free_check_text(FreeCheckReport const& report) {
  std::ostringstream out;
  out << "rank: " << report.rank << '\n';
  out << "length: " << report.length << '\n';
  out << "distinct_counts: " << join(report.distinct_counts) << '\n';
  out << "distinct_total: " << report.distinct_total << '\n';
  out << (report.is_free_up_to_l ? "free up to length " : "not free (coincidence found by length ")
      << report.length << (report.is_free_up_to_l ? "" : ")") << '\n';
  return out.str();
}

std::string Certificate::kind_name() const {
  return kind.index() == 0 ? "free_right_zero_pair" : "nontrivial_h_class";
}

namespace {

NontrivialHClass h_class_witness(FiniteSemigroup const& s,
                                 GreenStructure const&  g,
                                 bool                   dual) {
  // Prefer a group H-class: it is a subgroup whose elements act on its own
  // sequences exactly as in the Cayley machine of that group.
  std::optional<std::size_t> chosen;
  for (std::size_t id = 0; id < g.h.class_count; ++id) {
    auto members = g.h.members(id);
    if (members.size() < 2) {
      continue;
    }
    bool group = std::any_of(members.begin(), members.end(), [&](Element e) {
      return s(e, e) == e;
    });
    if (group) {
      chosen = id;
      break;
    }
    if (!chosen) {
      chosen = id;
    }
  }
  if (!chosen) {
    throw std::logic_error("no nontrivial H-class");
  }
  NontrivialHClass out;
  out.h_class = g.h.members(*chosen);
  std::vector<bool> in_h(s.order());
  for (Element h : out.h_class) {
    in_h[h] = true;
  }
  std::vector<std::vector<Element>> maps;
  std::vector<Element>              reps;
  for (Element t = 0; t < s.order(); ++t) {
    std::vector<Element> image;
    for (Element h : out.h_class) {
      image.push_back(dual ? s(h, t) : s(t, h));
    }
    if (!std::all_of(image.begin(), image.end(), [&](Element x) { return in_h[x]; })) {
      continue;
    }
    out.stabilizer_t.push_back(t);
    auto it = std::find(maps.begin(), maps.end(), image);
    if (it == maps.end()) {
      maps.push_back(std::move(image));
      reps.push_back(t);
    } else if (in_h[t] && !in_h[reps[it - maps.begin()]]) {
      reps[it - maps.begin()] = t;
    }
  }
  std::sort(reps.begin(), reps.end());
  out.witnesses = reps;
  return out;
}

}  // namespace

std::optional<Certificate> certificate(FiniteSemigroup const& s,
                                       bool                   dual,
                                       std::size_t            l,
                                       Budget const&          budget) {
  auto const g = green(s);
  auto const v = criteria(s, g);
  if (dual ? v.dual_finite : v.cayley_finite) {
    return std::nullopt;
  }
  MealyMachine const   m = dual ? dual_cayley(s) : cayley(s);
  Certificate          cert;
  std::vector<Element> witnesses;
  if (dual && v.right_zero_pair) {
    auto [e, f] = *v.right_zero_pair;
    cert.kind   = FreeRightZeroPair{e, f};
    witnesses   = {e, f};
  } else {
    auto h    = h_class_witness(s, g, dual);
    witnesses = h.witnesses;
    cert.kind = std::move(h);
  }
  std::vector<PointedTransducer> gens;
  for (Element w : witnesses) {
    gens.push_back(generator(m, w));
  }
  auto fc                    = free_check(gens, l, budget);
  cert.witness_words_checked = l;
  cert.all_distinct          = fc.all_distinct;
  cert.distinct_counts       = fc.distinct_counts;
  return cert;
}

namespace {

struct ElementInvariant {
  bool        idempotent;
  std::size_t index;
  std::size_t period;
  std::size_t row_image;
  std::size_t col_image;
  auto        operator<=>(ElementInvariant const&) const = default;
};

std::vector<ElementInvariant> invariants(
    std::vector<std::vector<std::uint32_t>> const& t) {
  std::size_t const             n = t.size();
  std::vector<ElementInvariant> out(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::size_t> first(n, 0);
    std::size_t              k = 1;
    std::uint32_t            p = static_cast<std::uint32_t>(x);
    while (first[p] == 0) {
      first[p] = k++;
      p        = t[p][x];
    }
    std::vector<bool> row(n), col(n);
    for (std::size_t y = 0; y < n; ++y) {
      row[t[x][y]] = true;
      col[t[y][x]] = true;
    }
    out[x] = {t[x][x] == x,
              first[p],
              k - first[p],
              static_cast<std::size_t>(std::count(row.begin(), row.end(), true)),
              static_cast<std::size_t>(std::count(col.begin(), col.end(), true))};
  }
  return out;
}

class IsoSearch {
 public:
  IsoSearch(std::vector<std::vector<std::uint32_t>> const& a,
            std::vector<std::vector<std::uint32_t>> const& b)
      : a_(a),
        b_(b),
        n_(a.size()),
        ia_(invariants(a)),
        ib_(invariants(b)),
        phi_(n_, kNone),
        inv_(n_, kNone) {}

  bool run() {
    auto sa = ia_, sb = ib_;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa == sb && search();
  }

 private:
  bool search() {
    std::size_t x = 0;
    while (x < n_ && phi_[x] != kNone) {
      ++x;
    }
    if (x == n_) {
      return true;
    }
    for (std::uint32_t y = 0; y < n_; ++y) {
      if (inv_[y] != kNone || ia_[x] != ib_[y]) {
        continue;
      }
      std::vector<std::uint32_t> trail;
      if (assign(static_cast<std::uint32_t>(x), y, trail) && search()) {
        return true;
      }
      for (auto z : trail) {
        inv_[phi_[z]] = kNone;
        phi_[z]       = kNone;
      }
    }
    return false;
  }

  // Sets phi(x) = y and propagates every forced product. Undo via trail.
  bool assign(std::uint32_t x, std::uint32_t y, std::vector<std::uint32_t>& trail) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> queue{{x, y}};
    while (!queue.empty()) {
      auto [u, v] = queue.back();
      queue.pop_back();
      if (phi_[u] != kNone) {
        if (phi_[u] != v) {
          return false;
        }
        continue;
      }
      if (inv_[v] != kNone || ia_[u] != ib_[v]) {
        return false;
      }
      phi_[u] = v;
      inv_[v] = u;
      trail.push_back(u);
      for (std::uint32_t w = 0; w < n_; ++w) {
        if (phi_[w] == kNone) {
          continue;
        }
        queue.emplace_back(a_[u][w], b_[v][phi_[w]]);
        queue.emplace_back(a_[w][u], b_[phi_[w]][v]);
      }
    }
    return true;
  }

  std::vector<std::vector<std::uint32_t>> const& a_;
  std::vector<std::vector<std::uint32_t>> const& b_;
  std::size_t                                    n_;
  std::vector<ElementInvariant>                  ia_, ib_;
  std::vector<std::uint32_t>                     phi_, inv_;
};

}  // namespace

bool closure_isomorphic(ClosureReport const& a, ClosureReport const& b) {
  if (!a.is_finite() || !b.is_finite()) {
    throw NotFinite("isomorphism test needs two finite closures");
  }
  if (a.finite().size() > 64 || b.finite().size() > 64) {
    throw std::invalid_argument("isomorphism test supports at most 64 elements");
  }
  if (a.finite().size() != b.finite().size()) {
    return false;
  }
  return IsoSearch(a.finite().table, b.finite().table).run();
}

Eq1Result verify_eq1(FiniteSemigroup const& s,
                     std::size_t            trials,
                     std::uint64_t          seed) {
  if (trials < 1) {
    throw std::invalid_argument("verify_eq1 needs at least one trial");
  }
  auto const                              gens = generators(dual_cayley(s));
  std::mt19937_64                         rng(seed);
  std::uniform_int_distribution<std::size_t> length(1, 5);
  std::uniform_int_distribution<Element>  pick(0, static_cast<Element>(s.order() - 1));

  Eq1Result result;
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t const    k = length(rng);
    std::vector<Element> word(k);
    for (auto& a : word) {
      a = pick(rng);
    }
    Element const x = pick(rng);

    std::vector<PointedTransducer> factors, expected;
    Element                        prefix = 0;  // a1 ... a(i-1)
    for (std::size_t i = 0; i < k; ++i) {
      factors.push_back(gens[word[i]]);
      Element c = i == 0 ? s(word[0], x) : s(s(word[i], x), prefix);
      expected.push_back(gens[c]);
      prefix = i == 0 ? word[0] : s(prefix, word[i]);
    }
    auto const stepped = step(compose_all(factors), x);
    ++result.trials;
    std::string reason;
    if (stepped.output != s(x, prefix)) {
      reason = "output differs from x a1...ak";
    } else if (!(stepped.next == compose_all(expected))) {
      reason = "next state differs from the product of the shifted generators";
    }
    if (!reason.empty()) {
      result.passed  = false;
      result.failure = Eq1Failure{word, x, reason};
      return result;
    }
  }
  return result;
}

}  // namespace machina
