#pragma once

#include <string>
#include <vector>

#include "abc/term.hpp"

namespace abc {

enum class Severity { Error, Warning };

/// A located message with a stable error code (E-SYNTAX, E-DUP-PROC, ...).
struct Diagnostic {
  Severity severity = Severity::Error;
  SourceSpan span;
  std::string code;
  std::string message;
};

bool hasErrors(const std::vector<Diagnostic>& diags);

/// `file:line:col: severity[code]: message`, optionally with ANSI colour.
std::string renderDiagnostic(const Diagnostic& d, const std::string& file, bool color = false);

}  // namespace abc
