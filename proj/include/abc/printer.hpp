#pragma once

#include <string>

#include "abc/term.hpp"

namespace abc {

/// Deterministic concrete syntax that parses back to an equal AST. Operators
/// are parenthesized only where precedence requires it.
std::string prettyPrint(const SystemSpec& spec);

std::string toText(const Expr& e);
std::string toText(const Pred& p);
std::string toText(const Proc& p);
std::string toText(const StateExprPtr& s);
std::string toText(const EventPattern& e);

}  // namespace abc
