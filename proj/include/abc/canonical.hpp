#pragma once

#include "abc/term.hpp"

namespace abc {

/// Normal form for state hashing: nested `|` and `+` are flattened, their
/// operands sorted under the term order of compare(Proc, Proc) and rebuilt
/// right-nested. Only commutative/associative reordering is performed, so the
/// result is behaviourally identical to the input. Idempotent.
Proc canonicalize(const Proc& p);

}  // namespace abc
