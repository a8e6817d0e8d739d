#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "gradex/types.hpp"

namespace gradex {

/// String literal payload, kept distinct from atoms.
struct Str {
  std::string value;
  friend bool operator==(const Str&, const Str&) = default;
};

/// Literal values: integer, float, string, boolean, atom. Booleans are never
/// atoms.
struct Literal {
  std::variant<std::int64_t, double, Str, bool, Atom> value;

  friend bool operator==(const Literal&, const Literal&) = default;

  /// Literals that can also serve as map keys.
  [[nodiscard]] std::optional<Key> as_key() const;
  static Literal from_key(const Key& key);
};

/// Source form of a literal (`:ok`, `"hi"`, `2.0`, ...).
std::string to_source(const Literal& lit);

}  // namespace gradex
