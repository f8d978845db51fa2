#include "wavecoeff/cli/descriptors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include "wavecoeff/cli/config.hpp"

namespace wavecoeff::cli {

namespace {

using std::numbers::pi;

std::vector<double> parse_list(std::string_view text, std::string_view context) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (item.empty()) throw ConfigError("empty number in '" + std::string(context) + "'");
    out.push_back(parse_number(item));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

Profile parse_term(std::string_view term) {
  if (term == "paper_a") return [](double x) { return 0.5 * std::sin(pi * x) + 1.0; };
  if (term == "paper_b") return [](double x) { return x * (x - 1.0) * (x - 1.5) + 1.0; };
  if (term == "paper_c")
    return [](double x) { return 0.5 * std::min(x, 1.0 - x) + 0.25 * std::sin(pi * x) + 1.0; };
  if (term == "one") return [](double) { return 1.0; };
  if (term == "zero") return [](double) { return 0.0; };

  const auto colon = term.find(':');
  if (colon == std::string_view::npos)
    throw ConfigError("unknown function descriptor '" + std::string(term) + "'");
  const auto kind = trim(term.substr(0, colon));
  const auto args = parse_list(term.substr(colon + 1), term);
  auto expect = [&](std::size_t n) {
    if (args.size() != n)
      throw ConfigError("'" + std::string(kind) + "' takes " + std::to_string(n) +
                        " argument(s) in '" + std::string(term) + "'");
  };
  if (kind == "const") {
    expect(1);
    return [c = args[0]](double) { return c; };
  }
  if (kind == "poly") {
    return [c = args](double x) {
      double v = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
      return v;
    };
  }
  if (kind == "sin") {
    expect(2);
    return [a = args[0], k = args[1]](double x) { return a * std::sin(k * pi * x); };
  }
  if (kind == "cos") {
    expect(2);
    return [a = args[0], k = args[1]](double x) { return a * std::cos(k * pi * x); };
  }
  if (kind == "tent") {
    expect(1);
    return [a = args[0]](double x) { return a * std::min(x, 1.0 - x); };
  }
  throw ConfigError("unknown function term '" + std::string(kind) + "'");
}

// Next '+' that separates terms, skipping exponent signs such as 1e+5.
std::size_t find_term_break(std::string_view s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '+') continue;
    if (i >= 2 && (s[i - 1] == 'e' || s[i - 1] == 'E') &&
        (std::isdigit(static_cast<unsigned char>(s[i - 2])) || s[i - 2] == '.'))
      continue;
    return i;
  }
  return std::string_view::npos;
}

}  // namespace

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw ConfigError("not a number: '" + std::string(text) + "'");
  return v;
}

std::string format_number(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

Profile parse_profile(std::string_view descriptor) {
  std::vector<Profile> terms;
  std::string_view rest = trim(descriptor);
  if (rest.empty()) throw ConfigError("empty function descriptor");
  while (true) {
    const auto plus = find_term_break(rest);
    const auto term = trim(rest.substr(0, plus));
    if (term.empty()) throw ConfigError("empty term in '" + std::string(descriptor) + "'");
    terms.push_back(parse_term(term));
    if (plus == std::string_view::npos) break;
    rest.remove_prefix(plus + 1);
  }
  if (terms.size() == 1) return terms.front();
  return [terms = std::move(terms)](double x) {
    double v = 0.0;
    for (const auto& t : terms) v += t(x);
    return v;
  };
}

SourceTerm parse_source(std::string_view descriptor) {
  const auto d = trim(descriptor);
  if (d == "paper") return [](double x, double t) { return x + t + 1.0; };
  if (d == "zero") return [](double, double) { return 0.0; };
  if (d.starts_with("affine:")) {
    const auto c = parse_list(d.substr(7), d);
    if (c.size() != 3) throw ConfigError("'affine' takes 3 arguments in '" + std::string(d) + "'");
    return [a = c[0], b = c[1], k = c[2]](double x, double t) { return a * x + b * t + k; };
  }
  throw ConfigError("unknown source descriptor '" + std::string(d) + "'");
}

}  // namespace wavecoeff::cli
