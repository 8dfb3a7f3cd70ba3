#pragma once

// Parsing of element names typed by users.
//
//   #17            element index, any group
//   g17            element index, generic (file) groups
//   X.Z  XZ  -Y.I  iZ  -1  i  1
//                  pauli words: optional phase prefix (-, i, -i, +) and one
//                  letter from IXYZ per qubit, dot separated (dots optional
//                  when every factor is a single letter)
//   w2X.Z2  XZ2    weyl words: optional phase w<k> (zeta_d^k), local factors
//                  I or X<a>Z<b>, dot separated
//
// A bare phase (-1, i, w1, ...) denotes that scalar times the identity.

#include <cctype>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cliffcode/errors.hpp"
#include "cliffcode/representation.hpp"

namespace cliffcode {

namespace detail {

inline std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::vector<std::string_view> split_locals(std::string_view word, std::size_t positions, bool single_letters) {
  std::vector<std::string_view> parts;
  if (word.find('.') == std::string_view::npos && single_letters && word.size() == positions && positions > 1) {
    for (std::size_t k = 0; k < word.size(); ++k) parts.push_back(word.substr(k, 1));
    return parts;
  }
  std::size_t start = 0;
  while (true) {
    auto dot = word.find('.', start);
    parts.push_back(word.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

inline std::optional<TensorWord> parse_pauli(std::string_view s, std::size_t positions) {
  TensorWord w;
  if (s.starts_with("+")) s.remove_prefix(1);
  if (s.starts_with("-")) {
    w.phase += 2;
    s.remove_prefix(1);
  }
  bool imaginary = false;
  if (s.starts_with("i")) {
    w.phase += 1;
    s.remove_prefix(1);
    imaginary = true;
  }
  if ((s.empty() && imaginary) || s == "1") {
    w.locals.assign(positions, {});
    return w;
  }
  for (auto part : split_locals(s, positions, true)) {
    if (part.size() != 1) return std::nullopt;
    switch (part[0]) {
      case 'I': w.locals.push_back({0, 0}); break;
      case 'X': w.locals.push_back({1, 0}); break;
      case 'Z': w.locals.push_back({0, 1}); break;
      case 'Y': w.locals.push_back({1, 1}); break;
      default: return std::nullopt;
    }
  }
  if (w.locals.size() != positions) return std::nullopt;
  return w;
}

inline std::optional<int> parse_power(std::string_view& s, char letter) {
  if (s.empty() || s[0] != letter) return 0;
  s.remove_prefix(1);
  std::size_t k = 0;
  while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
  if (k == 0) return 1;
  auto v = parse_int(s.substr(0, k));
  s.remove_prefix(k);
  return v;
}

inline std::optional<TensorWord> parse_weyl(std::string_view s, std::size_t positions, int d) {
  TensorWord w;
  if (s.starts_with("w")) {
    s.remove_prefix(1);
    std::size_t k = 0;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    auto v = parse_int(s.substr(0, k));
    if (!v) return std::nullopt;
    w.phase = *v % d;
    s.remove_prefix(k);
  }
  if (s.empty() || s == "1") {
    w.locals.assign(positions, {});
    return w;
  }
  for (auto part : split_locals(s, positions, false)) {
    if (part == "I") {
      w.locals.push_back({});
      continue;
    }
    auto x = parse_power(part, 'X');
    auto z = parse_power(part, 'Z');
    if (!x || !z || !part.empty() || (*x == 0 && *z == 0)) return std::nullopt;
    w.locals.push_back({*x % d, *z % d});
  }
  if (w.locals.size() != positions) return std::nullopt;
  return w;
}

}  // namespace detail

/// Resolves a user-typed element name; throws InvalidArgument when the name
/// is malformed or denotes no element of the group.
inline Element parse_element(const UnitaryRep& rep, std::string_view text) {
  auto fail = [&](const std::string& why) -> Element {
    throw InvalidArgument("cannot parse element '" + std::string(text) + "' in " + rep.name() + ": " + why);
  };
  if (text.starts_with("#") || (rep.label_scheme() == LabelScheme::generic && text.starts_with("g"))) {
    auto v = detail::parse_int(text.substr(1));
    if (!v || *v < 0 || static_cast<std::size_t>(*v) >= rep.order()) return fail("index out of range");
    return static_cast<Element>(*v);
  }
  const std::size_t positions = rep.tensor_factors() ? rep.tensor_factors()->size() : 0;
  std::optional<TensorWord> word;
  switch (rep.label_scheme()) {
    case LabelScheme::pauli:
      word = detail::parse_pauli(text, positions);
      break;
    case LabelScheme::weyl:
      word = detail::parse_weyl(text, positions, rep.local_dimension());
      break;
    case LabelScheme::generic:
      if (text == "1" || text == "e") return 0;
      return fail("use #index or g<index> for groups loaded from files");
  }
  if (!word) return fail("malformed word");
  auto g = rep.find_label(format_word(*word, rep.label_scheme()));
  if (!g) return fail("not an element");
  return *g;
}

inline std::vector<Element> parse_element_list(const UnitaryRep& rep, std::string_view csv) {
  std::vector<Element> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    auto comma = csv.find(',', start);
    auto item = csv.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    if (!item.empty()) out.push_back(parse_element(rep, item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace cliffcode
