#include "gradex/span.hpp"

#include <algorithm>

namespace gradex {

Span Span::cover(const Span& a, const Span& b) {
  Span out = a;
  if (b.begin < a.begin) {
    out.begin = b.begin;
    out.line = b.line;
    out.col = b.col;
  }
  if (b.end > a.end) {
    out.end = b.end;
    out.end_line = b.end_line;
    out.end_col = b.end_col;
  }
  return out;
}

SourceFile::SourceFile(std::string name, std::string text)
    : name_(std::move(name)), text_(std::move(text)) {
  line_starts_.push_back(0);
  for (std::size_t i = 0; i < text_.size(); ++i) {
    if (text_[i] == '\n') line_starts_.push_back(i + 1);
  }
}

std::string_view SourceFile::line_text(int line) const {
  if (line < 1 || line > line_count()) return {};
  std::size_t start = line_starts_[static_cast<std::size_t>(line - 1)];
  std::size_t stop = line < line_count() ? line_starts_[static_cast<std::size_t>(line)] : text_.size();
  std::string_view view(text_);
  view = view.substr(start, stop - start);
  while (!view.empty() && (view.back() == '\n' || view.back() == '\r')) view.remove_suffix(1);
  return view;
}

std::string_view SourceFile::slice(const Span& span) const {
  std::size_t begin = std::min(span.begin, text_.size());
  std::size_t end = std::clamp(span.end, begin, text_.size());
  return std::string_view(text_).substr(begin, end - begin);
}

}  // namespace gradex
