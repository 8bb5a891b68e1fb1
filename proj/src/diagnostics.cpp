#include "abc/diagnostics.hpp"

#include <algorithm>

namespace abc {

bool hasErrors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string renderDiagnostic(const Diagnostic& d, const std::string& file, bool color) {
  const char* sev = d.severity == Severity::Error ? "error" : "warning";
  std::string out = file + ":" + std::to_string(d.span.line) + ":" + std::to_string(d.span.column) + ": ";
  if (color) {
    out += d.severity == Severity::Error ? "\x1b[1;31m" : "\x1b[1;33m";
    out += sev;
    out += "\x1b[0m";
  } else {
    out += sev;
  }
  out += "[" + d.code + "]: " + d.message;
  return out;
}

}  // namespace abc
