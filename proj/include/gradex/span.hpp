#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gradex {

/// Half-open byte range into a source buffer, with 1-based line/column of
/// both ends. `end_col` is the column one past the last character.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  int line = 1;
  int col = 1;
  int end_line = 1;
  int end_col = 1;

  [[nodiscard]] bool contains(const Span& other) const {
    return begin <= other.begin && other.end <= end;
  }

  /// Smallest span covering both.
  [[nodiscard]] static Span cover(const Span& a, const Span& b);

  friend bool operator==(const Span&, const Span&) = default;
};

/// A named source buffer with a line index for excerpting.
class SourceFile {
 public:
  SourceFile(std::string name, std::string text);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const std::string& text() const { return text_; }

  /// Text of 1-based line `line`, without the trailing newline.
  [[nodiscard]] std::string_view line_text(int line) const;
  [[nodiscard]] int line_count() const { return static_cast<int>(line_starts_.size()); }

  /// Text covered by a span.
  [[nodiscard]] std::string_view slice(const Span& span) const;

 private:
  std::string name_;
  std::string text_;
  std::vector<std::size_t> line_starts_;
};

}  // namespace gradex
