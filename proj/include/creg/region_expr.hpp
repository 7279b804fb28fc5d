#pragma once

// Text syntax for plane regions:
//   expr   := term ('|' term)*
//   term   := factor ('&' factor)*
//   factor := atom | '(' expr ')'
//   atom   := ('u'|'v') ('<='|'>='|'<'|'>'|'=') rational | 'all' | 'empty'
// Rational literals look like 3, -3, or 7/2. '&' binds tighter than '|'.

#include <cctype>
#include <string>
#include <string_view>

#include "creg/errors.hpp"
#include "creg/minkowski.hpp"
#include "creg/rational.hpp"

namespace creg {

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  MinkRegion parse() {
    MinkRegion r = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("unexpected trailing input", pos_);
    return r;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  // keyword: must not run into a following alphanumeric character
  bool eat_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) return false;
    const std::size_t after = pos_ + w.size();
    if (after < text_.size() &&
        std::isalnum(static_cast<unsigned char>(text_[after])))
      return false;
    pos_ = after;
    return true;
  }

  bool eat_str(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) return false;
    pos_ += w.size();
    return true;
  }

  MinkRegion expr() {
    MinkRegion r = term();
    while (eat('|')) r = region_union(r, term());
    return r;
  }

  MinkRegion term() {
    MinkRegion r = factor();
    while (eat('&')) r = region_intersect(r, factor());
    return r;
  }

  MinkRegion factor() {
    if (eat('(')) {
      MinkRegion r = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return r;
    }
    return atom();
  }

  MinkRegion atom() {
    if (eat_word("all")) return MinkRegion::whole_plane();
    if (eat_word("empty")) return MinkRegion();
    skip_ws();
    if (pos_ >= text_.size())
      throw ParseError("expected a constraint", pos_);
    const char coord = text_[pos_];
    if (coord != 'u' && coord != 'v')
      throw ParseError("expected 'u', 'v', 'all', 'empty', or '('", pos_);
    ++pos_;
    skip_ws();
    enum { le, ge, lt, gt, eq } op;
    if (eat_str("<="))
      op = le;
    else if (eat_str(">="))
      op = ge;
    else if (eat('<'))
      op = lt;
    else if (eat('>'))
      op = gt;
    else if (eat('='))
      op = eq;
    else
      throw ParseError("expected a comparison operator", pos_);
    const Rational q = rational_literal();

    Bound lo = Bound::minus_infinity();
    Bound hi = Bound::plus_infinity();
    switch (op) {
      case le: hi = Bound::closed_at(q); break;
      case ge: lo = Bound::closed_at(q); break;
      case lt: hi = Bound::open_at(q); break;
      case gt: lo = Bound::open_at(q); break;
      case eq: lo = hi = Bound::closed_at(q); break;
    }
    const Bound none_lo = Bound::minus_infinity();
    const Bound none_hi = Bound::plus_infinity();
    const Box b = coord == 'u' ? make_box(lo, hi, none_lo, none_hi)
                               : make_box(none_lo, none_hi, lo, hi);
    return MinkRegion::from_boxes({b});
  }

  Rational rational_literal() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a rational literal", pos_);
    try {
      return Rational::parse(text_.substr(start, pos_ - start));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), start + e.position);
    }
  }
};

}  // namespace detail

inline MinkRegion parse_region_expression(std::string_view text) {
  return detail::ExprParser(text).parse();
}

}  // namespace creg
