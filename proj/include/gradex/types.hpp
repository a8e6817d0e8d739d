#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace gradex {

/// An atom name, written `:name` in source.
struct Atom {
  std::string name;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// Map keys are restricted to atoms, booleans and integers.
struct Key {
  std::variant<Atom, bool, std::int64_t> value;

  static Key atom(std::string name) { return Key{Atom{std::move(name)}}; }
  static Key boolean(bool b) { return Key{b}; }
  static Key integer(std::int64_t i) { return Key{i}; }

  friend auto operator<=>(const Key&, const Key&) = default;
  friend bool operator==(const Key&, const Key&) = default;
};

std::string to_string(const Key& key);

enum class TypeKind {
  None,
  Term,
  Any,
  Integer,
  Float,
  Boolean,
  String,
  Atom,
  AtomLiteral,
  List,
  Tuple,
  Map,
  Function,
};

class Type;

struct MapField;

/// Immutable gradual type. Structured types share their children, so copies
/// are cheap. Map fields are kept sorted by key, which makes equality and
/// ordering insensitive to the order fields were written in.
class Type {
 public:
  Type() : Type(TypeKind::None) {}

  static Type none() { return Type(TypeKind::None); }
  static Type term() { return Type(TypeKind::Term); }
  static Type any() { return Type(TypeKind::Any); }
  static Type integer() { return Type(TypeKind::Integer); }
  static Type floating() { return Type(TypeKind::Float); }
  static Type boolean() { return Type(TypeKind::Boolean); }
  static Type string() { return Type(TypeKind::String); }
  static Type atom() { return Type(TypeKind::Atom); }
  static Type atom_literal(std::string name);
  static Type list(Type element);
  static Type tuple(std::vector<Type> elements);
  /// Throws std::invalid_argument on duplicate keys.
  static Type map(std::vector<MapField> fields);
  static Type function(std::vector<Type> params, Type result);

  [[nodiscard]] TypeKind kind() const { return kind_; }
  [[nodiscard]] bool is(TypeKind k) const { return kind_ == k; }
  [[nodiscard]] bool is_any() const { return kind_ == TypeKind::Any; }

  [[nodiscard]] const std::string& atom_name() const;
  [[nodiscard]] const Type& element() const;
  [[nodiscard]] std::span<const Type> elements() const;
  [[nodiscard]] std::span<const MapField> fields() const;
  [[nodiscard]] const Type* field(const Key& key) const;
  [[nodiscard]] std::span<const Type> params() const;
  [[nodiscard]] const Type& result() const;
  [[nodiscard]] std::size_t arity() const;

  /// True if `any` occurs anywhere inside.
  [[nodiscard]] bool contains_any() const;

  friend bool operator==(const Type& a, const Type& b);
  friend std::strong_ordering operator<=>(const Type& a, const Type& b);

 private:
  explicit Type(TypeKind kind) : kind_(kind) {}

  struct Payload;
  TypeKind kind_;
  std::shared_ptr<const Payload> payload_;
};

struct MapField {
  Key key;
  Type type;
  friend bool operator==(const MapField&, const MapField&) = default;
};

/// Renders in `@spec` surface syntax: `[integer]`, `{any, float}`,
/// `%{:k => t}`, `(t) -> t`.
std::string to_string(const Type& type);

}  // namespace gradex
