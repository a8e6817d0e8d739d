#include "gradex/type_relations.hpp"

#include <algorithm>

namespace gradex {

Type literal_type(const Literal& lit) {
  return std::visit(
      [](const auto& v) -> Type {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::int64_t>) {
          return Type::integer();
        } else if constexpr (std::is_same_v<V, double>) {
          return Type::floating();
        } else if constexpr (std::is_same_v<V, Str>) {
          return Type::string();
        } else if constexpr (std::is_same_v<V, bool>) {
          return Type::boolean();
        } else {
          return Type::atom_literal(v.name);
        }
      },
      lit.value);
}

namespace {

bool same_shape(const Type& t, const Type& u) {
  if (t.kind() != u.kind()) return false;
  switch (t.kind()) {
    case TypeKind::Tuple: return t.elements().size() == u.elements().size();
    case TypeKind::Function: return t.arity() == u.arity();
    default: return true;
  }
}

// Shared structural walk for the relations that only differ in how leaves
// compare and in which direction function parameters go.
template <typename Leaf, typename Self>
bool structural(const Type& t, const Type& u, Leaf leaf, Self self, bool contravariant_params,
                bool map_width) {
  if (!same_shape(t, u)) return leaf(t, u);
  switch (t.kind()) {
    case TypeKind::List:
      return self(t.element(), u.element());
    case TypeKind::Tuple: {
      auto a = t.elements();
      auto b = u.elements();
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (!self(a[i], b[i])) return false;
      }
      return true;
    }
    case TypeKind::Map: {
      if (!map_width && t.fields().size() != u.fields().size()) return false;
      for (const auto& f : u.fields()) {
        const Type* mine = t.field(f.key);
        if (mine == nullptr || !self(*mine, f.type)) return false;
      }
      return true;
    }
    case TypeKind::Function: {
      auto a = t.params();
      auto b = u.params();
      for (std::size_t i = 0; i < a.size(); ++i) {
        bool ok = contravariant_params ? self(b[i], a[i]) : self(a[i], b[i]);
        if (!ok) return false;
      }
      return self(t.result(), u.result());
    }
    default:
      return leaf(t, u);
  }
}

bool base_subtype(const Type& t, const Type& u) {
  if (t == u) return true;
  if (t.is(TypeKind::None) || u.is(TypeKind::Term)) return true;
  if (t.is(TypeKind::Integer) && u.is(TypeKind::Float)) return true;
  if (t.is(TypeKind::AtomLiteral) && u.is(TypeKind::Atom)) return true;
  return false;
}

}  // namespace

bool is_subtype(const Type& t, const Type& u) {
  if (t.is(TypeKind::None) || u.is(TypeKind::Term)) return true;
  return structural(t, u, base_subtype, is_subtype, /*contravariant_params=*/true,
                    /*map_width=*/true);
}

bool is_more_precise(const Type& u, const Type& t) {
  if (t.is_any()) return true;
  return structural(
      u, t, [](const Type& a, const Type& b) { return a == b; }, is_more_precise,
      /*contravariant_params=*/false, /*map_width=*/false);
}

bool fits(const Type& t, const Type& u) {
  if (t.is(TypeKind::None) || u.is(TypeKind::Term) || t.is_any() || u.is_any()) return true;
  return structural(t, u, base_subtype, fits, /*contravariant_params=*/true, /*map_width=*/true);
}

namespace {

enum class Bound { Upper, Lower };

Type bound(const Type& t, const Type& u, Bound dir);

Type combine_maps(const Type& t, const Type& u, Bound dir) {
  std::vector<MapField> out;
  if (dir == Bound::Upper) {
    for (const auto& f : t.fields()) {
      if (const Type* other = u.field(f.key)) out.push_back({f.key, bound(f.type, *other, dir)});
    }
  } else {
    for (const auto& f : t.fields()) {
      const Type* other = u.field(f.key);
      out.push_back({f.key, other ? bound(f.type, *other, dir) : f.type});
    }
    for (const auto& f : u.fields()) {
      if (t.field(f.key) == nullptr) out.push_back(f);
    }
  }
  return Type::map(std::move(out));
}

Type bound(const Type& t, const Type& u, Bound dir) {
  const bool upper = dir == Bound::Upper;
  if (t == u) return t;
  if (t.is_any()) return u;
  if (u.is_any()) return t;

  if (t.is(TypeKind::None)) return upper ? u : t;
  if (u.is(TypeKind::None)) return upper ? t : u;
  if (t.is(TypeKind::Term)) return upper ? t : u;
  if (u.is(TypeKind::Term)) return upper ? u : t;

  const Type failed = upper ? Type::term() : Type::none();

  auto is_num = [](const Type& x) { return x.is(TypeKind::Integer) || x.is(TypeKind::Float); };
  if (is_num(t) && is_num(u)) return upper ? Type::floating() : Type::integer();

  auto is_atomic = [](const Type& x) {
    return x.is(TypeKind::Atom) || x.is(TypeKind::AtomLiteral);
  };
  if (is_atomic(t) && is_atomic(u)) {
    if (upper) return Type::atom();
    // Distinct literals share nothing; a literal under `atom` is itself.
    if (t.is(TypeKind::AtomLiteral) && u.is(TypeKind::AtomLiteral)) return Type::none();
    return t.is(TypeKind::AtomLiteral) ? t : u;
  }

  if (!same_shape(t, u)) return failed;
  switch (t.kind()) {
    case TypeKind::List:
      return Type::list(bound(t.element(), u.element(), dir));
    case TypeKind::Tuple: {
      std::vector<Type> parts;
      auto a = t.elements();
      auto b = u.elements();
      for (std::size_t i = 0; i < a.size(); ++i) parts.push_back(bound(a[i], b[i], dir));
      return Type::tuple(std::move(parts));
    }
    case TypeKind::Map:
      return combine_maps(t, u, dir);
    case TypeKind::Function: {
      const Bound flipped = upper ? Bound::Lower : Bound::Upper;
      std::vector<Type> params;
      auto a = t.params();
      auto b = u.params();
      for (std::size_t i = 0; i < a.size(); ++i) params.push_back(bound(a[i], b[i], flipped));
      return Type::function(std::move(params), bound(t.result(), u.result(), dir));
    }
    default:
      return failed;
  }
}

}  // namespace

Type join(const Type& t, const Type& u) { return bound(t, u, Bound::Upper); }

Type meet(const Type& t, const Type& u) { return bound(t, u, Bound::Lower); }

}  // namespace gradex
