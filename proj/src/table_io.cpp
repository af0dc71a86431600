#include "machina/table_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace machina {

ParseError::ParseError(std::size_t line_, std::string const& what)
    : SemigroupError("line " + std::to_string(line_) + ": " + what),
      line(line_) {}

namespace {

bool parse_entry(std::string const& token, std::size_t& out) {
  if (token.empty()
      || token.find_first_not_of("0123456789") != std::string::npos) {
    return false;
  }
  try {
    out = std::stoul(token);
  } catch (std::exception const&) {
    return false;
  }
  return true;
}

std::string read_file(std::filesystem::path const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw SemigroupError("cannot open '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

FiniteSemigroup parse_table_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string        line;
  std::size_t        lineno = 0;
  std::size_t        order  = 0;
  bool               have_order = false;
  std::vector<Element> flat;

  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }
    std::istringstream fields(line);
    std::string        token;
    if (!have_order) {
      fields >> token;
      if (!parse_entry(token, order) || order == 0) {
        throw ParseError(lineno, "expected a positive order, got '" + token + "'");
      }
      if (order > kMaxOrder) {
        throw OrderTooLarge("semigroup order " + std::to_string(order)
                            + " exceeds the maximum "
                            + std::to_string(kMaxOrder));
      }
      if (fields >> token) {
        throw ParseError(lineno, "unexpected token after order");
      }
      have_order = true;
      continue;
    }
    std::size_t const row = flat.size() / order;
    if (row >= order) {
      throw ParseError(lineno, "more than " + std::to_string(order) + " rows");
    }
    std::size_t count = 0;
    while (fields >> token) {
      std::size_t value = 0;
      if (!parse_entry(token, value)) {
        throw ParseError(lineno, "bad entry '" + token + "'");
      }
      if (count >= order) {
        throw ParseError(lineno, "row has more than " + std::to_string(order)
                                     + " entries");
      }
      if (value >= order) {
        throw OutOfRange(row, count, value);
      }
      flat.push_back(static_cast<Element>(value));
      ++count;
    }
    if (count != order) {
      throw ParseError(lineno, "row has " + std::to_string(count)
                                   + " entries, expected "
                                   + std::to_string(order));
    }
  }
  if (!have_order) {
    throw ParseError(lineno, "missing order line");
  }
  if (flat.size() != order * order) {
    throw ParseError(lineno, "expected " + std::to_string(order) + " rows, got "
                                 + std::to_string(flat.size() / order));
  }
  return from_flat_table(order, flat);
}

std::string format_table_text(FiniteSemigroup const& s) {
  std::ostringstream out;
  out << s.order() << '\n';
  for (Element a = 0; a < s.order(); ++a) {
    auto row = s.row(a);
    for (std::size_t b = 0; b < row.size(); ++b) {
      out << (b == 0 ? "" : " ") << row[b];
    }
    out << '\n';
  }
  return out.str();
}

FiniteSemigroup parse_table_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (nlohmann::json::parse_error const& e) {
    // nlohmann reports a byte offset; count lines up to it.
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i) {
      line += text[i] == '\n';
    }
    throw ParseError(line, e.what());
  }
  try {
    auto order = doc.at("order").get<std::size_t>();
    auto rows  = doc.at("table").get<std::vector<std::vector<std::size_t>>>();
    std::optional<std::vector<std::string>> labels;
    if (doc.contains("labels") && !doc["labels"].is_null()) {
      labels = doc["labels"].get<std::vector<std::string>>();
    }
    if (order == 0) {
      throw ParseError(1, "order must be positive");
    }
    if (order > kMaxOrder) {
      throw OrderTooLarge("semigroup order " + std::to_string(order)
                          + " exceeds the maximum " + std::to_string(kMaxOrder));
    }
    if (rows.size() != order) {
      throw ParseError(1, "table must have " + std::to_string(order) + " rows");
    }
    std::vector<Element> flat;
    for (std::size_t r = 0; r < order; ++r) {
      if (rows[r].size() != order) {
        throw ParseError(1, "row " + std::to_string(r) + " must have "
                                + std::to_string(order) + " entries");
      }
      for (std::size_t c = 0; c < order; ++c) {
        if (rows[r][c] >= order) {
          throw OutOfRange(r, c, rows[r][c]);
        }
        flat.push_back(static_cast<Element>(rows[r][c]));
      }
    }
    return from_flat_table(order, flat, std::move(labels));
  } catch (nlohmann::json::exception const& e) {
    throw ParseError(1, e.what());
  }
}

std::string format_table_json(FiniteSemigroup const& s) {
  nlohmann::json doc;
  doc["order"] = s.order();
  doc["table"] = s.rows();
  if (s.labels()) {
    doc["labels"] = *s.labels();
  }
  return doc.dump() + "\n";
}

FiniteSemigroup load(std::filesystem::path const& path) {
  auto text = read_file(path);
  if (path.extension() == ".json") {
    return parse_table_json(text);
  }
  return parse_table_text(text);
}

void save(FiniteSemigroup const& s, std::filesystem::path const& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw SemigroupError("cannot write '" + path.string() + "'");
  }
  out << (path.extension() == ".json" ? format_table_json(s)
                                      : format_table_text(s));
}

FiniteSemigroup load_source(std::string const& source) {
  if (std::filesystem::exists(source)) {
    return load(source);
  }
  return named(source);
}

}  // namespace machina
