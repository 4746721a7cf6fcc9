#pragma once

// Text format for constructions. See docs/config-format.md for the grammar.
//
//   name = two_point
//   [group]
//   free_rank = 0
//   torsion = 2
//   [gamma]
//   a = 2 | 0 1 | (0) (1)
//   [schedule]
//   constant: a

#include "rank1lab/abelian.hpp"
#include "rank1lab/tower.hpp"

#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rank1lab {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, std::string field, std::string message, std::string source = "")
      : std::runtime_error(format(line, field, message, source)),
        line_(line),
        field_(std::move(field)),
        message_(std::move(message)) {}

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }
  const std::string& message() const { return message_; }

 private:
  static std::string format(std::size_t line, const std::string& field, const std::string& message,
                            const std::string& source) {
    std::string out = source.empty() ? std::string("config") : source;
    if (line) out += ":" + std::to_string(line);
    if (!field.empty()) out += " [" + field + "]";
    return out + ": " + message;
  }

  std::size_t line_;
  std::string field_;
  std::string message_;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.')) return false;
  return true;
}

inline BigInt parse_integer(const std::string& s, std::size_t line, const std::string& field) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) throw ConfigError(line, field, "expected an integer, got '" + s + "'");
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j])))
      throw ConfigError(line, field, "expected an integer, got '" + s + "'");
  return BigInt(s[0] == '+' ? s.substr(1) : s);
}

// "(a, b, c) (d, e, f)" -> tuples
inline std::vector<std::vector<BigInt>> parse_tuples(const std::string& s, std::size_t line,
                                                     const std::string& field) {
  std::vector<std::vector<BigInt>> out;
  std::size_t i = 0;
  while (true) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i == s.size()) break;
    if (s[i] != '(') throw ConfigError(line, field, "expected '(' to open a group element");
    const std::size_t close = s.find(')', i);
    if (close == std::string::npos) throw ConfigError(line, field, "unterminated group element");
    std::vector<BigInt> tuple;
    const std::string body = trim(s.substr(i + 1, close - i - 1));
    if (!body.empty()) {
      std::istringstream parts(body);
      for (std::string part; std::getline(parts, part, ',');) tuple.push_back(parse_integer(trim(part), line, field));
    }
    out.push_back(std::move(tuple));
    i = close + 1;
  }
  return out;
}

inline std::string tuple_text(const GroupElement& g) {
  std::string out = "(";
  for (std::size_t i = 0; i < g.size(); ++i) out += (i ? "," : "") + g[i].str();
  return out + ")";
}

}  // namespace detail

inline Construction parse_config(const std::string& text) {
  std::optional<std::string> name;
  std::optional<std::size_t> free_rank;
  std::vector<BigInt> torsion;
  struct RawGamma {
    std::size_t line;
    std::string name;
    std::size_t gamma;
    std::vector<BigInt> spacers;
    std::optional<std::vector<std::vector<BigInt>>> labels;
  };
  std::vector<RawGamma> raw;
  std::optional<Schedule> schedule;
  std::size_t schedule_line = 0;
  std::vector<std::string> schedule_names;
  std::string section;

  std::istringstream in(text);
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(lineno, "", "malformed section header");
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section != "group" && section != "gamma" && section != "schedule")
        throw ConfigError(lineno, section, "unknown section");
      continue;
    }
    if (section == "schedule") {
      const auto colon = line.find(':');
      if (colon == std::string::npos) throw ConfigError(lineno, "schedule", "expected 'constant:', 'periodic:' or 'prefix:'");
      if (schedule) throw ConfigError(lineno, "schedule", "schedule given twice");
      const std::string kind = detail::trim(line.substr(0, colon));
      Schedule s;
      if (kind == "constant") s.kind = ScheduleKind::constant;
      else if (kind == "periodic") s.kind = ScheduleKind::periodic;
      else if (kind == "prefix") s.kind = ScheduleKind::prefix;
      else throw ConfigError(lineno, "schedule", "unknown schedule kind '" + kind + "'");
      schedule_names = detail::split_ws(line.substr(colon + 1));
      if (schedule_names.empty()) throw ConfigError(lineno, "schedule", "empty schedule");
      if (s.kind == ScheduleKind::constant && schedule_names.size() != 1)
        throw ConfigError(lineno, "schedule", "a constant schedule names exactly one recipe");
      schedule = s;
      schedule_line = lineno;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(lineno, section, "expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (section.empty()) {
      if (key != "name") throw ConfigError(lineno, key, "unknown top-level key");
      if (value.empty()) throw ConfigError(lineno, key, "empty name");
      name = value;
    } else if (section == "group") {
      if (key == "free_rank") {
        const BigInt r = detail::parse_integer(value, lineno, key);
        if (r < 0 || r > 64) throw ConfigError(lineno, key, "free rank must be between 0 and 64");
        free_rank = static_cast<std::size_t>(r);
      } else if (key == "torsion") {
        torsion.clear();
        for (const auto& w : detail::split_ws(value)) {
          BigInt d = detail::parse_integer(w, lineno, key);
          if (d < 2) throw ConfigError(lineno, key, "torsion moduli must be at least 2");
          torsion.push_back(d);
        }
      } else {
        throw ConfigError(lineno, key, "unknown group key");
      }
    } else {  // gamma
      if (!detail::valid_name(key)) throw ConfigError(lineno, key, "invalid recipe name");
      for (const auto& r : raw)
        if (r.name == key) throw ConfigError(lineno, key, "recipe defined twice");
      std::vector<std::string> parts;
      std::istringstream ps(value);
      for (std::string p; std::getline(ps, p, '|');) parts.push_back(detail::trim(p));
      if (parts.size() < 2 || parts.size() > 3)
        throw ConfigError(lineno, key, "expected 'gamma | spacers | labels'");
      const BigInt g = detail::parse_integer(parts[0], lineno, key);
      if (g < 2 || g > 1'000'000) throw ConfigError(lineno, key, "gamma must be between 2 and 1000000");
      RawGamma rg{lineno, key, static_cast<std::size_t>(g), {}, std::nullopt};
      for (const auto& w : detail::split_ws(parts[1])) rg.spacers.push_back(detail::parse_integer(w, lineno, key));
      if (rg.spacers.size() != rg.gamma)
        throw ConfigError(lineno, key, "gamma is " + std::to_string(rg.gamma) + " but " +
                                           std::to_string(rg.spacers.size()) + " spacer counts are given");
      for (const auto& s : rg.spacers)
        if (s < 0) throw ConfigError(lineno, key, "negative spacer count");
      if (parts.size() == 3) rg.labels = detail::parse_tuples(parts[2], lineno, key);
      raw.push_back(std::move(rg));
    }
  }

  if (!name) throw ConfigError(0, "name", "missing 'name'");
  if (raw.empty()) throw ConfigError(0, "gamma", "no recipes defined");
  if (!schedule) throw ConfigError(0, "schedule", "missing schedule");
  const GroupSpec group(free_rank.value_or(0), torsion);

  std::vector<NamedGamma> alphabet;
  for (const auto& rg : raw) {
    std::vector<GroupElement> labels;
    if (!rg.labels) {
      if (!group.is_trivial()) throw ConfigError(rg.line, rg.name, "labels are required for a nontrivial group");
      labels.assign(rg.gamma, group.zero());
    } else {
      if (rg.labels->size() != rg.gamma)
        throw ConfigError(rg.line, rg.name, "gamma is " + std::to_string(rg.gamma) + " but " +
                                                std::to_string(rg.labels->size()) + " labels are given");
      for (const auto& t : *rg.labels) {
        if (t.size() != group.dimension())
          throw ConfigError(rg.line, rg.name, "label has " + std::to_string(t.size()) + " coordinates, group " +
                                                  group.to_string() + " needs " + std::to_string(group.dimension()));
        labels.push_back(group.element(t));
      }
    }
    alphabet.push_back({rg.name, GammaElement(rg.spacers, std::move(labels))});
  }
  for (const auto& n : schedule_names) {
    std::size_t idx = alphabet.size();
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i].name == n) idx = i;
    if (idx == alphabet.size()) throw ConfigError(schedule_line, "schedule", "unknown recipe '" + n + "'");
    schedule->sequence.push_back(idx);
  }
  return Construction(*name, group, std::move(alphabet), *schedule);
}

inline Construction load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(e.line(), e.field(), e.message(), path);
  }
}

inline std::string serialize_config(const Construction& c) {
  std::ostringstream out;
  out << "name = " << c.name() << "\n\n[group]\nfree_rank = " << c.group().free_rank() << "\n";
  if (!c.group().torsion().empty()) {
    out << "torsion =";
    for (const auto& d : c.group().torsion()) out << ' ' << d;
    out << "\n";
  }
  out << "\n[gamma]\n";
  for (const auto& ng : c.alphabet()) {
    const GammaElement& e = ng.element;
    out << ng.name << " = " << e.gamma() << " |";
    for (const auto& s : e.spacers()) out << ' ' << s;
    if (!c.group().is_trivial()) {
      out << " |";
      for (const auto& l : e.labels()) out << ' ' << detail::tuple_text(l);
    }
    out << "\n";
  }
  out << "\n[schedule]\n" << to_string(c.schedule().kind) << ":";
  for (auto idx : c.schedule().sequence) out << ' ' << c.alphabet()[idx].name;
  out << "\n";
  return out.str();
}

}  // namespace rank1lab
