#pragma once

// Parameterized families R_w. The body is presentation text in which the
// identifier `w` stands for an integer; an optional line "range: a..b" fixes
// the inclusive parameter range.

#include <cctype>
#include <optional>
#include <regex>
#include <string>

#include "jetmetric/errors.hpp"
#include "jetmetric/presentation/presentation.hpp"

namespace jetmetric::pres {

struct FamilyTemplate {
  std::string body;
  long lo = 0;
  long hi = 0;
};

// "a..b" with a <= b.
inline std::pair<long, long> parse_range(const std::string& text) {
  static const std::regex re(R"(^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) fail(ErrorKind::Syntax, "malformed range '" + text + "', expected a..b");
  const long a = std::stol(m[1]), b = std::stol(m[2]);
  if (a > b) fail(ErrorKind::Range, "empty range " + text);
  return {a, b};
}

inline FamilyTemplate parse_template(const std::string& text, std::optional<long> lo = std::nullopt,
                                     std::optional<long> hi = std::nullopt) {
  static const std::regex range_line(R"((^|\n)[ \t]*range[ \t]*:([^\n;#]*)[;]?)");
  FamilyTemplate tpl;
  std::smatch m;
  if (std::regex_search(text, m, range_line)) {
    const auto [a, b] = parse_range(m[2]);
    tpl.lo = a;
    tpl.hi = b;
    tpl.body = text.substr(0, static_cast<std::size_t>(m.position(0))) + std::string(m[1]) +
               text.substr(static_cast<std::size_t>(m.position(0) + m.length(0)));
  } else {
    if (!lo || !hi) fail(ErrorKind::Usage, "template has no range line and no range was given");
    tpl.body = text;
  }
  if (lo) tpl.lo = *lo;
  if (hi) tpl.hi = *hi;
  if (tpl.lo > tpl.hi) fail(ErrorKind::Range, "empty template range");
  return tpl;
}

// Replaces every identifier token equal to `w`.
inline std::string substitute_parameter(const std::string& body, long w) {
  const std::string value = w < 0 ? "(" + std::to_string(w) + ")" : std::to_string(w);
  std::string out;
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  bool in_comment = false;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    if (c == '#') in_comment = true;
    if (c == '\n') in_comment = false;
    if (!in_comment && c == 'w' && (i == 0 || !ident_char(body[i - 1])) &&
        (i + 1 == body.size() || !ident_char(body[i + 1]))) {
      out += value;
      continue;
    }
    out += c;
  }
  return out;
}

inline AnyPresentation instantiate_template(const FamilyTemplate& tpl, long w) {
  if (w < tpl.lo || w > tpl.hi)
    fail(ErrorKind::Range, "w = " + std::to_string(w) + " outside " + std::to_string(tpl.lo) + ".." +
                               std::to_string(tpl.hi));
  try {
    return parse_presentation(substitute_parameter(tpl.body, w));
  } catch (const Error& e) {
    fail(e.kind(), "w = " + std::to_string(w) + ": " + e.message());
  }
}

}  // namespace jetmetric::pres
