#include "machina/catalog.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "machina/mealy.hpp"
#include "machina/parallel.hpp"
#include "json.hpp"

namespace machina {

TableBytes canonical_table(std::size_t order, std::span<const Element> table) {
  std::vector<Element> perm(order);
  std::iota(perm.begin(), perm.end(), 0);
  TableBytes best;
  TableBytes candidate(order * order, '\0');
  do {
    for (Element a = 0; a < order; ++a) {
      for (Element b = 0; b < order; ++b) {
        candidate[perm[a] * order + perm[b]]
            = static_cast<char>(perm[table[a * order + b]]);
      }
    }
    if (best.empty() || candidate < best) {
      best = candidate;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

TableBytes canonical_table(FiniteSemigroup const& s) {
  return canonical_table(s.order(), s.table());
}

std::string canonical_id(TableBytes const& table, std::size_t order) {
  std::string out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i > 0 && i % order == 0) {
      out.push_back('.');
    }
    out += std::to_string(static_cast<unsigned char>(table[i]));
  }
  return out;
}

namespace {

constexpr Element kEmpty = 0xffffffffu;

void check_order(std::size_t n, std::size_t max) {
  if (n < 1 || n > max) {
    throw std::out_of_range("catalog order must be between 1 and "
                            + std::to_string(max) + ", got "
                            + std::to_string(n));
  }
}

// True unless some triple with all four entries known violates
// associativity.
bool consistent(std::size_t n, std::vector<Element> const& t) {
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      Element xy = t[x * n + y];
      if (xy == kEmpty) {
        continue;
      }
      for (std::size_t z = 0; z < n; ++z) {
        Element yz = t[y * n + z];
        if (yz == kEmpty) {
          continue;
        }
        Element left  = t[xy * n + z];
        Element right = t[x * n + yz];
        if (left != kEmpty && right != kEmpty && left != right) {
          return false;
        }
      }
    }
  }
  return true;
}

void backtrack(std::size_t                                       n,
               std::vector<std::size_t> const&                   cells,
               std::size_t                                       depth,
               std::vector<Element>&                             t,
               std::function<void(std::vector<Element> const&)> const& emit) {
  if (depth == cells.size()) {
    emit(t);
    return;
  }
  std::size_t const cell = cells[depth];
  for (Element v = 0; v < n; ++v) {
    t[cell] = v;
    if (consistent(n, t)) {
      backtrack(n, cells, depth + 1, t, emit);
    }
  }
  t[cell] = kEmpty;
}

std::vector<CatalogEntry> finish(std::size_t                        n,
                                 std::vector<std::vector<Element>>  tables,
                                 EnumerationMode                    mode) {
  std::vector<CatalogEntry>                    out;
  std::unordered_map<TableBytes, std::size_t> seen;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    auto canon = canonical_table(n, tables[i]);
    if (mode == EnumerationMode::labeled) {
      out.push_back({from_flat_table(n, tables[i]), std::move(canon), i});
      continue;
    }
    if (seen.emplace(canon, out.size()).second) {
      std::vector<Element> rep(canon.begin(), canon.end());
      for (auto& x : rep) {
        x = static_cast<unsigned char>(x);
      }
      out.push_back({from_flat_table(n, rep), std::move(canon), i});
    }
  }
  return out;
}

}  // namespace

std::vector<CatalogEntry> enumerate(std::size_t     n,
                                    EnumerationMode mode,
                                    FillOrder       order) {
  check_order(n, kMaxCatalogOrder);
  std::vector<std::size_t> cells;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cells.push_back(order == FillOrder::row_major ? i * n + j : j * n + i);
    }
  }
  std::vector<std::vector<Element>> tables;
  std::vector<Element>              t(n * n, kEmpty);
  backtrack(n, cells, 0, t, [&](auto const& full) { tables.push_back(full); });
  return finish(n, std::move(tables), mode);
}

std::vector<CatalogEntry> naive_enumerate(std::size_t n) {
  check_order(n, 3);
  std::size_t const                 cells = n * n;
  std::vector<Element>              t(cells, 0);
  std::vector<std::vector<Element>> tables;
  while (true) {
    if (!first_nonassociative(n, t)) {
      tables.push_back(t);
    }
    std::size_t i = cells;
    while (i > 0 && t[i - 1] == n - 1) {
      t[--i] = 0;
    }
    if (i == 0) {
      break;
    }
    ++t[i - 1];
  }
  return finish(n, std::move(tables), EnumerationMode::labeled);
}

namespace {

ClosureOutcome outcome(ClosureReport const& r) {
  if (r.is_finite()) {
    return {true, r.finite().size(), Resource::elements};
  }
  return {false, r.exhausted().elements_found, r.exhausted().limit};
}

std::optional<CertificateSummary> summarize(std::optional<Certificate> const& c) {
  if (!c) {
    return std::nullopt;
  }
  return CertificateSummary{
      c->kind_name(), c->witness_words_checked, c->all_distinct, c->distinct_counts};
}

void check_side(std::vector<std::string>&                out,
                std::string const&                       side,
                bool                                     predicted_finite,
                ClosureOutcome const&                    o,
                std::optional<CertificateSummary> const& cert) {
  if (predicted_finite) {
    if (!o.finite) {
      out.push_back(side + ": predicted finite but closure exhausted "
                    + to_string(o.limit) + " after "
                    + std::to_string(o.count) + " elements");
    }
    return;
  }
  if (o.finite) {
    out.push_back(side + ": predicted infinite but closure is finite of size "
                  + std::to_string(o.count));
  } else if (o.limit != Resource::elements) {
    out.push_back(side + ": predicted infinite but closure stopped on "
                  + to_string(o.limit) + " before the element budget");
  }
  if (!cert) {
    out.push_back(side + ": predicted infinite but no certificate");
  } else if (!cert->all_distinct) {
    out.push_back(side + ": certificate words coincide by length "
                  + std::to_string(cert->length));
  }
}

}  // namespace

std::vector<std::string> record_mismatches(SweepRecord const& r) {
  std::vector<std::string> out;
  check_side(out, "cayley", r.criteria.cayley_finite, r.cayley, r.cayley_certificate);
  check_side(out, "dual", r.criteria.dual_finite, r.dual, r.dual_certificate);
  for (auto& m : out) {
    m = r.canonical_id + " " + m;
  }
  return out;
}

SweepRecord sweep_entry(CatalogEntry const& entry, SweepOptions const& options) {
  auto const&    s = entry.semigroup;
  SweepRecord    rec{canonical_id(entry.canonical_table, s.order()), entry,
                  criteria(s), {}, {}, std::nullopt, std::nullopt};
  ClosureOptions serial{1, 256};
  rec.cayley = outcome(closure(generators(cayley(s)), options.budget, serial));
  rec.dual   = outcome(closure(generators(dual_cayley(s)), options.budget, serial));
  Budget cert_budget = options.budget;
  cert_budget.max_elements = std::numeric_limits<std::size_t>::max();
  rec.cayley_certificate
      = summarize(certificate(s, false, options.certificate_length, cert_budget));
  rec.dual_certificate
      = summarize(certificate(s, true, options.certificate_length, cert_budget));
  return rec;
}

SweepReport sweep(std::size_t n, SweepOptions const& options) {
  check_order(n, kMaxCatalogOrder);
  auto const        entries = enumerate(n, EnumerationMode::up_to_iso);
  std::size_t const threads = worker_count(options.threads);

  SweepReport report;
  report.order = n;
  std::vector<std::optional<SweepRecord>> slots(entries.size());
  std::vector<std::string>                errors(entries.size());
  auto const count = static_cast<std::int64_t>(entries.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      slots[i] = sweep_entry(entries[i], options);
    } catch (std::exception const& e) {
      errors[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!slots[i]) {
      throw std::runtime_error("sweep failed on entry "
                               + std::to_string(i) + ": " + errors[i]);
    }
    auto& rec = *slots[i];
    report.cayley_finite += rec.cayley.finite;
    report.dual_finite += rec.dual.finite;
    for (auto& m : record_mismatches(rec)) {
      report.mismatches.push_back(std::move(m));
    }
    report.records.push_back(std::move(rec));
  }
  return report;
}

namespace {

nlohmann::json outcome_json(ClosureOutcome const& o) {
  nlohmann::json j;
  j["verdict"] = o.finite ? "finite" : "exhausted";
  j[o.finite ? "size" : "elements_found"] = o.count;
  if (!o.finite) {
    j["limit"] = to_string(o.limit);
  }
  return j;
}

nlohmann::json certificate_json(std::optional<CertificateSummary> const& c) {
  if (!c) {
    return nullptr;
  }
  return {{"kind", c->kind},
          {"length", c->length},
          {"all_distinct", c->all_distinct},
          {"distinct_counts", c->distinct_counts}};
}

std::string pair_text(std::optional<std::pair<Element, Element>> const& p) {
  return p ? std::to_string(p->first) + "," + std::to_string(p->second) : "-";
}

std::string outcome_text(ClosureOutcome const& o) {
  return o.finite ? "finite(" + std::to_string(o.count) + ")"
                  : "exhausted(" + std::to_string(o.count) + ","
                        + to_string(o.limit) + ")";
}

}  // namespace

std::string sweep_report_json(SweepReport const& report) {
  nlohmann::json doc;
  doc["format_version"] = 1;
  doc["kind"]           = "sweep";
  doc["order"]          = report.order;
  doc["classes"]        = report.records.size();
  doc["cayley_finite"]  = report.cayley_finite;
  doc["dual_finite"]    = report.dual_finite;
  doc["mismatches"]     = report.mismatches;
  auto& rows            = doc["records"] = nlohmann::json::array();
  for (auto const& r : report.records) {
    nlohmann::json row;
    row["canonical_id"]  = r.canonical_id;
    row["labeled_index"] = r.entry.labeled_index;
    row["h_trivial"]     = r.criteria.h_trivial;
    row["right_zero_pair"]
        = r.criteria.right_zero_pair
              ? nlohmann::json::array({r.criteria.right_zero_pair->first,
                                       r.criteria.right_zero_pair->second})
              : nlohmann::json(nullptr);
    row["cayley_finite_predicted"] = r.criteria.cayley_finite;
    row["dual_finite_predicted"]   = r.criteria.dual_finite;
    row["cayley"]                  = outcome_json(r.cayley);
    row["dual"]                    = outcome_json(r.dual);
    row["cayley_certificate"]      = certificate_json(r.cayley_certificate);
    row["dual_certificate"]        = certificate_json(r.dual_certificate);
    rows.push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

std::string sweep_report_text(SweepReport const& report) {
  std::ostringstream out;
  out << "order: " << report.order << '\n';
  out << "classes: " << report.records.size() << '\n';
  out << "cayley finite: " << report.cayley_finite << '\n';
  out << "dual finite: " << report.dual_finite << '\n';
  out << "mismatches: " << report.mismatches.size() << '\n';
  for (auto const& m : report.mismatches) {
    out << "  " << m << '\n';
  }
  for (auto const& r : report.records) {
    out << r.canonical_id << "  H-trivial=" << (r.criteria.h_trivial ? "yes" : "no")
        << " rz-pair=" << pair_text(r.criteria.right_zero_pair)
        << " C=" << outcome_text(r.cayley) << " C*=" << outcome_text(r.dual)
        << '\n';
  }
  return out.str();
}

std::string sweep_report_tsv(SweepReport const& report) {
  std::ostringstream out;
  out << "canonical_id\th_trivial\tright_zero_pair\tcayley_verdict\tcayley_size"
         "\tdual_verdict\tdual_size\tcayley_certificate\tdual_certificate\n";
  for (auto const& r : report.records) {
    out << r.canonical_id << '\t' << (r.criteria.h_trivial ? "true" : "false")
        << '\t' << pair_text(r.criteria.right_zero_pair) << '\t'
        << (r.cayley.finite ? "finite" : "exhausted") << '\t' << r.cayley.count
        << '\t' << (r.dual.finite ? "finite" : "exhausted") << '\t'
        << r.dual.count << '\t'
        << (r.cayley_certificate ? r.cayley_certificate->kind : "-") << '\t'
        << (r.dual_certificate ? r.dual_certificate->kind : "-") << '\n';
  }
  return out.str();
}

}  // namespace machina
