#pragma once

#include "gradex/literal.hpp"
#include "gradex/types.hpp"

namespace gradex {

/// Type of a literal. Atoms are singleton types.
Type literal_type(const Literal& lit);

/// `t <: u`. `any` relates only to itself, to `term` from below and to
/// `none` from above.
bool is_subtype(const Type& t, const Type& u);

/// `u ≪ t`: `u` is obtained from `t` by replacing occurrences of `any`.
bool is_more_precise(const Type& u, const Type& t);

/// Whether a value of type `t` is accepted where `u` is expected, combining
/// upcasts (subtyping) with downcasts through `any`.
bool fits(const Type& t, const Type& u);

/// Least upper bound under subtyping. `any` yields to the other side.
Type join(const Type& t, const Type& u);

/// Greatest lower bound under subtyping. `any` yields to the other side.
Type meet(const Type& t, const Type& u);

}  // namespace gradex
