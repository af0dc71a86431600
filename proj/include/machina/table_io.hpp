#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "machina/semigroup.hpp"

namespace machina {

class ParseError : public SemigroupError {
 public:
  ParseError(std::size_t line, std::string const& what);
  std::size_t line;
};

// Text format: optional '#' comment lines, then the order n, then n rows of
// n whitespace-separated entries.
FiniteSemigroup parse_table_text(std::string_view text);
std::string     format_table_text(FiniteSemigroup const& s);

// Structured format: {"order": n, "table": [[...], ...], "labels": [...]}.
FiniteSemigroup parse_table_json(std::string_view text);
std::string     format_table_json(FiniteSemigroup const& s);

// Chooses the format by extension: ".json" is structured, anything else text.
FiniteSemigroup load(std::filesystem::path const& path);
void            save(FiniteSemigroup const& s, std::filesystem::path const& path);

// A named family (see named()) or, failing that, a file path.
FiniteSemigroup load_source(std::string const& source);

}  // namespace machina
