// cayley-machina: Cayley and dual Cayley automaton semigroups of finite
// semigroups.
//
// Exit codes: 0 success, 1 input or flag error, 2 budget exhausted under
// --expect-finite, 3 coincidence under --assert-free or sweep mismatch.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "machina/catalog.hpp"
#include "machina/closure.hpp"
#include "machina/green.hpp"
#include "machina/mealy.hpp"
#include "machina/table_io.hpp"

namespace {

using namespace machina;

enum class Format { text, structured };

constexpr int kExitOk       = 0;
constexpr int kExitInput    = 1;
constexpr int kExitBudget   = 2;
constexpr int kExitMismatch = 3;

std::string element_list(std::vector<Element> const& xs) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out << (i == 0 ? "" : ",") << xs[i];
  }
  out << '}';
  return out.str();
}

std::string cayley_reason(CriterionVerdict const& v) {
  return v.cayley_finite ? "finite (H-trivial)" : "infinite (not H-trivial)";
}

std::string dual_reason(CriterionVerdict const& v) {
  if (!v.h_trivial) {
    return "infinite (not H-trivial)";
  }
  if (v.right_zero_pair) {
    return "infinite (R-related idempotent pair "
           + std::to_string(v.right_zero_pair->first) + ","
           + std::to_string(v.right_zero_pair->second) + ")";
  }
  return "finite (H-trivial, no R-related idempotent pair)";
}

int run_analyze(std::string const& source, Format format) {
  auto const s = load_source(source);
  auto const g = green(s);
  auto const v = criteria(s, g);
  auto const c = classify(s);

  std::vector<std::size_t> gamma_sizes(g.h.class_count);
  std::vector<std::size_t> h_sizes(g.h.class_count);
  for (std::size_t id = 0; id < g.h.class_count; ++id) {
    auto members    = g.h.members(id);
    h_sizes[id]     = members.size();
    gamma_sizes[id] = schutzenberger(s, g, members.front()).maps.size();
  }

  if (format == Format::structured) {
    nlohmann::json doc;
    doc["format_version"] = 1;
    doc["kind"]           = "analyze";
    doc["order"]          = s.order();
    doc["classification"] = {{"is_group", c.is_group},
                             {"is_left_zero", c.is_left_zero},
                             {"is_right_zero", c.is_right_zero},
                             {"is_commutative", c.is_commutative},
                             {"idempotents", c.idempotents}};
    doc["green"] = {{"r", g.r.classes()},
                    {"l", g.l.classes()},
                    {"h", g.h.classes()},
                    {"d", g.d.classes()},
                    {"maximal_d", g.maximal_d},
                    {"ideal_i", g.ideal_i}};
    doc["criteria"] = {
        {"h_trivial", v.h_trivial},
        {"right_zero_pair",
         v.right_zero_pair ? nlohmann::json::array(
                                 {v.right_zero_pair->first, v.right_zero_pair->second})
                           : nlohmann::json(nullptr)},
        {"cayley_finite", v.cayley_finite},
        {"dual_finite", v.dual_finite},
        {"cayley_verdict", cayley_reason(v)},
        {"dual_verdict", dual_reason(v)}};
    doc["schutzenberger_sizes"] = gamma_sizes;
    std::cout << doc.dump(2) << '\n';
    return kExitOk;
  }

  std::cout << "order: " << s.order() << '\n';
  std::cout << "group: " << c.is_group << "  left zero: " << c.is_left_zero
            << "  right zero: " << c.is_right_zero
            << "  commutative: " << c.is_commutative << '\n';
  std::cout << "idempotents: " << element_list(c.idempotents) << '\n';
  std::cout << "classes: R=" << g.r.class_count << " L=" << g.l.class_count
            << " H=" << g.h.class_count << " D=" << g.d.class_count << '\n';
  std::cout << "egg-box:\n";
  for (std::size_t d = 0; d < g.d.class_count; ++d) {
    auto members = g.d.members(d);
    bool maximal = std::find(g.maximal_d.begin(), g.maximal_d.end(), d)
                   != g.maximal_d.end();
    std::cout << "  D" << d << (maximal ? " (maximal)" : "") << '\n';
    std::vector<std::size_t> rows, cols;
    for (Element a : members) {
      if (std::find(rows.begin(), rows.end(), g.r.class_of[a]) == rows.end()) {
        rows.push_back(g.r.class_of[a]);
      }
      if (std::find(cols.begin(), cols.end(), g.l.class_of[a]) == cols.end()) {
        cols.push_back(g.l.class_of[a]);
      }
    }
    for (auto r : rows) {
      std::cout << "   ";
      for (auto l : cols) {
        std::vector<Element> cell;
        for (Element a : members) {
          if (g.r.class_of[a] == r && g.l.class_of[a] == l) {
            cell.push_back(a);
          }
        }
        std::cout << " | " << (cell.empty() ? "-" : element_list(cell));
      }
      std::cout << " |\n";
    }
  }
  std::cout << "ideal I: " << element_list(g.ideal_i) << '\n';
  std::cout << "C(S): " << cayley_reason(v) << '\n';
  std::cout << "C*(S): " << dual_reason(v) << '\n';
  std::cout << "schutzenberger groups:";
  for (std::size_t id = 0; id < g.h.class_count; ++id) {
    std::cout << ' ' << element_list(g.h.members(id)) << ":" << gamma_sizes[id];
  }
  std::cout << '\n';
  return kExitOk;
}

struct ClosureArgs {
  std::string source;
  bool        dual          = false;
  bool        expect_finite = false;
  std::size_t elements      = Budget{}.max_elements;
  std::size_t states        = Budget{}.max_machine_states;
  std::size_t millis        = Budget{}.max_millis;
  std::size_t threads       = 0;
};

int run_closure(ClosureArgs const& a, Format format) {
  auto const s = load_source(a.source);
  auto const m = a.dual ? dual_cayley(s) : cayley(s);
  Budget     budget{a.elements, a.states, a.millis};
  auto const report = closure(generators(m), budget, {a.threads, 256});
  std::cout << (format == Format::structured ? closure_report_json(report)
                                             : closure_report_text(report));
  if (a.expect_finite && !report.is_finite()) {
    return kExitBudget;
  }
  return kExitOk;
}

int run_free_check(std::string const& source,
                   bool               dual,
                   std::size_t        length,
                   bool               assert_free,
                   std::size_t        elements,
                   Format             format) {
  auto const s      = load_source(source);
  auto const m      = dual ? dual_cayley(s) : cayley(s);
  Budget     budget;
  budget.max_elements = elements;
  auto const report   = free_check(generators(m), length, budget);
  std::cout << (format == Format::structured ? free_check_json(report)
                                             : free_check_text(report));
  if (assert_free && !report.is_free_up_to_l) {
    return kExitMismatch;
  }
  return kExitOk;
}

int run_sweep(std::size_t        order,
              std::size_t        elements,
              std::size_t        cert_length,
              std::string const& out_path,
              Format             format) {
  if (order < 1 || order > kMaxCatalogOrder) {
    std::cerr << "error: unsupported order " << order << " (supported: 1.."
              << kMaxCatalogOrder << ")\n";
    return kExitInput;
  }
  SweepOptions options;
  options.budget.max_elements = elements;
  options.certificate_length  = cert_length;
  auto const report           = sweep(order, options);
  auto const rendered = format == Format::structured ? sweep_report_json(report)
                                                     : sweep_report_text(report);
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream(out_path) << rendered;
    std::ofstream(out_path + ".tsv") << sweep_report_tsv(report);
    std::cout << "classes: " << report.records.size()
              << "\nmismatches: " << report.mismatches.size() << '\n';
  }
  return report.mismatches.empty() ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cayley and dual Cayley automaton semigroups of finite semigroups"};
  app.require_subcommand(1);

  std::map<std::string, Format> formats{{"text", Format::text},
                                        {"structured", Format::structured}};
  Format format = Format::text;
  auto   add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format: text or structured")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };

  std::string source;

  auto* analyze = app.add_subcommand("analyze", "Green's structure and finiteness criteria");
  analyze->add_option("source", source, "Table file or named family (e.g. chain:2)")
      ->required();
  add_format(analyze);

  ClosureArgs closure_args;
  auto* closure_cmd = app.add_subcommand("closure", "Enumerate the automaton semigroup");
  closure_cmd->add_option("source", closure_args.source, "Table file or named family")
      ->required();
  closure_cmd->add_flag("--dual", closure_args.dual, "Use the dual Cayley automaton");
  closure_cmd->add_option("--budget-elements", closure_args.elements, "Element budget")
      ->check(CLI::PositiveNumber);
  closure_cmd->add_option("--budget-states", closure_args.states,
                          "State cap for raw transducer products")
      ->check(CLI::PositiveNumber);
  closure_cmd->add_option("--budget-millis", closure_args.millis, "Time budget")
      ->check(CLI::PositiveNumber);
  closure_cmd->add_option("--threads", closure_args.threads, "Worker threads (0 = default)");
  closure_cmd->add_flag("--expect-finite", closure_args.expect_finite,
                        "Exit 2 if the budget runs out");
  add_format(closure_cmd);

  bool        fc_dual = false, assert_free = false;
  std::size_t length = 5, fc_elements = Budget{}.max_elements;
  auto* free_cmd = app.add_subcommand("free-check", "Count distinct products per length");
  free_cmd->add_option("source", source, "Table file or named family")->required();
  free_cmd->add_flag("--dual", fc_dual, "Use the dual Cayley automaton");
  free_cmd->add_option("--length", length, "Longest word length")->check(CLI::PositiveNumber);
  free_cmd->add_option("--budget-elements", fc_elements, "Maximum number of words")
      ->check(CLI::PositiveNumber);
  free_cmd->add_flag("--assert-free", assert_free, "Exit 3 on any coincidence");
  add_format(free_cmd);

  std::size_t order = 0, sweep_elements = SweepOptions{}.budget.max_elements;
  std::size_t cert_length = SweepOptions{}.certificate_length;
  std::string out_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Criterion against closure over a catalog");
  sweep_cmd->add_option("--order", order, "Semigroup order (1..4)")->required();
  sweep_cmd->add_option("--budget-elements", sweep_elements, "Element budget per closure")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--certificate-length", cert_length, "Witness word length")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", out_path,
                        "Write the report here and the flat table to <path>.tsv");
  add_format(sweep_cmd);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze) {
      return run_analyze(source, format);
    }
    if (*closure_cmd) {
      return run_closure(closure_args, format);
    }
    if (*free_cmd) {
      return run_free_check(source, fc_dual, length, assert_free, fc_elements, format);
    }
    if (*sweep_cmd) {
      return run_sweep(order, sweep_elements, cert_length, out_path, format);
    }
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
