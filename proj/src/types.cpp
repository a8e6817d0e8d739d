#include "gradex/types.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace gradex {

struct Type::Payload {
  std::string name;
  // List: [element]. Tuple: elements. Function: params then result.
  std::vector<Type> children;
  std::vector<MapField> fields;
  bool has_any = false;
};

namespace {

const std::vector<Type> kNoTypes;

}  // namespace

std::string to_string(const Key& key) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, Atom>) {
          return ":" + v.name;
        } else if constexpr (std::is_same_v<V, bool>) {
          return v ? "true" : "false";
        } else {
          return std::to_string(v);
        }
      },
      key.value);
}

Type Type::atom_literal(std::string name) {
  Type t(TypeKind::AtomLiteral);
  auto p = std::make_shared<Payload>();
  p->name = std::move(name);
  t.payload_ = std::move(p);
  return t;
}

Type Type::list(Type element) {
  Type t(TypeKind::List);
  auto p = std::make_shared<Payload>();
  p->has_any = element.contains_any();
  p->children.push_back(std::move(element));
  t.payload_ = std::move(p);
  return t;
}

Type Type::tuple(std::vector<Type> elements) {
  Type t(TypeKind::Tuple);
  auto p = std::make_shared<Payload>();
  p->has_any = std::any_of(elements.begin(), elements.end(),
                           [](const Type& e) { return e.contains_any(); });
  p->children = std::move(elements);
  t.payload_ = std::move(p);
  return t;
}

Type Type::map(std::vector<MapField> fields) {
  std::sort(fields.begin(), fields.end(),
            [](const MapField& a, const MapField& b) { return a.key < b.key; });
  auto dup = std::adjacent_find(fields.begin(), fields.end(),
                                [](const MapField& a, const MapField& b) { return a.key == b.key; });
  if (dup != fields.end()) {
    throw std::invalid_argument("duplicate map key " + to_string(dup->key));
  }
  Type t(TypeKind::Map);
  auto p = std::make_shared<Payload>();
  p->has_any = std::any_of(fields.begin(), fields.end(),
                           [](const MapField& f) { return f.type.contains_any(); });
  p->fields = std::move(fields);
  t.payload_ = std::move(p);
  return t;
}

Type Type::function(std::vector<Type> params, Type result) {
  Type t(TypeKind::Function);
  auto p = std::make_shared<Payload>();
  p->children = std::move(params);
  p->children.push_back(std::move(result));
  p->has_any = std::any_of(p->children.begin(), p->children.end(),
                           [](const Type& c) { return c.contains_any(); });
  t.payload_ = std::move(p);
  return t;
}

const std::string& Type::atom_name() const {
  if (kind_ != TypeKind::AtomLiteral) throw std::logic_error("not an atom literal type");
  return payload_->name;
}

const Type& Type::element() const {
  if (kind_ != TypeKind::List) throw std::logic_error("not a list type");
  return payload_->children.front();
}

std::span<const Type> Type::elements() const {
  if (kind_ != TypeKind::Tuple) throw std::logic_error("not a tuple type");
  return payload_->children;
}

std::span<const MapField> Type::fields() const {
  if (kind_ != TypeKind::Map) throw std::logic_error("not a map type");
  return payload_->fields;
}

const Type* Type::field(const Key& key) const {
  auto fs = fields();
  auto it = std::lower_bound(fs.begin(), fs.end(), key,
                             [](const MapField& f, const Key& k) { return f.key < k; });
  if (it == fs.end() || !(it->key == key)) return nullptr;
  return &it->type;
}

std::span<const Type> Type::params() const {
  if (kind_ != TypeKind::Function) throw std::logic_error("not a function type");
  return std::span<const Type>(payload_->children).first(payload_->children.size() - 1);
}

const Type& Type::result() const {
  if (kind_ != TypeKind::Function) throw std::logic_error("not a function type");
  return payload_->children.back();
}

std::size_t Type::arity() const { return params().size(); }

bool Type::contains_any() const {
  if (kind_ == TypeKind::Any) return true;
  return payload_ && payload_->has_any;
}

std::strong_ordering operator<=>(const Type& a, const Type& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (a.payload_ == b.payload_) return std::strong_ordering::equal;
  switch (a.kind_) {
    case TypeKind::AtomLiteral:
      return a.payload_->name <=> b.payload_->name;
    case TypeKind::List:
    case TypeKind::Tuple:
    case TypeKind::Function: {
      const auto& x = a.payload_->children;
      const auto& y = b.payload_->children;
      // Compare arity first so that functions of different arity never
      // interleave with their results.
      if (auto c = x.size() <=> y.size(); c != 0) return c;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (auto c = x[i] <=> y[i]; c != 0) return c;
      }
      return std::strong_ordering::equal;
    }
    case TypeKind::Map: {
      const auto& x = a.payload_->fields;
      const auto& y = b.payload_->fields;
      if (auto c = x.size() <=> y.size(); c != 0) return c;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (auto c = x[i].key <=> y[i].key; c != 0) return c;
        if (auto c = x[i].type <=> y[i].type; c != 0) return c;
      }
      return std::strong_ordering::equal;
    }
    default:
      return std::strong_ordering::equal;
  }
}

bool operator==(const Type& a, const Type& b) { return (a <=> b) == 0; }

namespace {

std::string join_types(std::span<const Type> types) {
  std::string out;
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(types[i]);
  }
  return out;
}

}  // namespace

std::string to_string(const Type& type) {
  switch (type.kind()) {
    case TypeKind::None: return "none";
    case TypeKind::Term: return "term";
    case TypeKind::Any: return "any";
    case TypeKind::Integer: return "integer";
    case TypeKind::Float: return "float";
    case TypeKind::Boolean: return "boolean";
    case TypeKind::String: return "string";
    case TypeKind::Atom: return "atom";
    case TypeKind::AtomLiteral: return ":" + type.atom_name();
    case TypeKind::List: return "[" + to_string(type.element()) + "]";
    case TypeKind::Tuple: return "{" + join_types(type.elements()) + "}";
    case TypeKind::Map: {
      std::string out = "%{";
      bool first = true;
      for (const auto& f : type.fields()) {
        if (!first) out += ", ";
        first = false;
        out += fmt::format("{} => {}", to_string(f.key), to_string(f.type));
      }
      return out + "}";
    }
    case TypeKind::Function:
      return fmt::format("({}) -> {}", join_types(type.params()), to_string(type.result()));
  }
  return "?";
}

}  // namespace gradex
