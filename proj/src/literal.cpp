#include "gradex/literal.hpp"

#include <charconv>
#include <system_error>

namespace gradex {

std::optional<Key> Literal::as_key() const {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return Key::integer(*i);
  if (const auto* b = std::get_if<bool>(&value)) return Key::boolean(*b);
  if (const auto* a = std::get_if<Atom>(&value)) return Key::atom(a->name);
  return std::nullopt;
}

Literal Literal::from_key(const Key& key) {
  return std::visit([](const auto& v) { return Literal{v}; }, key.value);
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

// Shortest round-tripping fixed notation, always with a fractional part.
std::string format_float(double d) {
  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof buf, d, std::chars_format::fixed);
  std::string out(buf, res.ptr);
  if (out.find('.') == std::string::npos) out += ".0";
  return out;
}

}  // namespace

std::string to_source(const Literal& lit) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<V, double>) {
          return format_float(v);
        } else if constexpr (std::is_same_v<V, Str>) {
          return "\"" + escape(v.value) + "\"";
        } else if constexpr (std::is_same_v<V, bool>) {
          return v ? "true" : "false";
        } else {
          return ":" + v.name;
        }
      },
      lit.value);
}

}  // namespace gradex
