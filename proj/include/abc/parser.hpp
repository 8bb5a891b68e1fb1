#pragma once

#include <string_view>
#include <vector>

#include "abc/diagnostics.hpp"
#include "abc/term.hpp"

namespace abc {

struct ParseResult {
  SystemSpec spec;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !hasErrors(diagnostics); }
};

/// Parses `.abc` source, resolves identifiers (variable vs attribute, call
/// captures) and validates the result. `spec` is meaningful only when ok().
ParseResult parseSpec(std::string_view source);

/// Syntax only: no resolution, no validation.
ParseResult parseSyntax(std::string_view source);

/// Rewrites bare identifiers that are in variable scope into Var nodes and
/// fills in the captures of every Call. Idempotent.
void resolveNames(SystemSpec& spec);

/// Well-formedness checks on a resolved specification.
std::vector<Diagnostic> validate(const SystemSpec& spec);

}  // namespace abc
