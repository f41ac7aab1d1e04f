#pragma once

// Angle literals: numbers, `pi`, `e`, + - * /, parentheses, and implicit
// multiplication ("2pi", "3(pi+1)"). Evaluated in double precision.

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace blochprop {

namespace detail {

class ExprParser {
public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  double parse() {
    const double v = sum();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("bad angle expression '" + std::string(s_) + "': " + why);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  double sum() {
    double v = product();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      const double r = product();
      v = c == '+' ? v + r : v - r;
    }
    return v;
  }

  double product() {
    double v = unary();
    while (true) {
      const char c = peek();
      if (c == '*' || c == '/') {
        ++pos_;
        const double r = unary();
        v = c == '*' ? v * r : v / r;
      } else if (c == '(' || std::isalpha(static_cast<unsigned char>(c))) {
        v *= primary();
      } else {
        return v;
      }
    }
  }

  double unary() {
    const char c = peek();
    if (c == '-' || c == '+') {
      ++pos_;
      const double v = unary();
      return c == '-' ? -v : v;
    }
    return primary();
  }

  double primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      const double v = sum();
      if (peek() != ')') fail("missing ')'");
      ++pos_;
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
      const std::string_view name = s_.substr(pos_, end - pos_);
      pos_ = end;
      if (name == "pi") return 3.141592653589793238462643383279502884;
      if (name == "e") return 2.718281828459045235360287471352662498;
      fail("unknown name '" + std::string(name) + "'");
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '\0') fail("unexpected end");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  double number() {
    // Digits and an optional exponent; a bare trailing 'e' is the constant.
    std::size_t end = pos_;
    while (end < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.')) ++end;
    if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
      std::size_t k = end + 1;
      if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
      if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
        while (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) ++k;
        end = k;
      }
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + end, v);
    if (ec != std::errc() || ptr != s_.data() + end) fail("bad number");
    pos_ = end;
    return v;
  }
};

}  // namespace detail

inline double parse_angle(std::string_view text) {
  const double v = detail::ExprParser(text).parse();
  if (!std::isfinite(v)) throw std::invalid_argument("angle expression '" + std::string(text) + "' is not finite");
  return v;
}

// "a,b,c" with each part an angle expression.
inline std::array<double, 3> parse_triple(std::string_view text) {
  std::array<double, 3> out{};
  std::size_t start = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t comma = text.find(',', start);
    if ((i < 2) != (comma != std::string_view::npos))
      throw std::invalid_argument("expected three comma-separated values, got '" + std::string(text) + "'");
    out[i] = parse_angle(text.substr(start, i < 2 ? comma - start : std::string_view::npos));
    start = comma + 1;
  }
  return out;
}

}  // namespace blochprop
