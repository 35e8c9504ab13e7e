#include "otk/metric_file.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace otk {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

double to_number(const std::string& s, int line) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw MetricFileError("expected a number, got '" + s + "'", line);
  }
}

std::vector<double> to_list(const std::string& s, int line) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw MetricFileError("expected a list [a, b, ...], got '" + s + "'", line);
  }
  std::vector<double> out;
  std::stringstream in(s.substr(1, s.size() - 2));
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(to_number(trim(item), line));
  return out;
}

bool to_bool(const std::string& s, int line) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw MetricFileError("expected true or false, got '" + s + "'", line);
}

std::string number_text(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

MetricDefinition parse_metric_file(std::string_view text) {
  MetricDefinition def;
  ParseOptions popt;
  std::vector<std::pair<std::string, Expr>> definitions;
  std::map<std::string, std::pair<std::string, int>> metric_src;
  std::array<std::optional<std::pair<std::string, int>>, 2> pullback_src;
  std::optional<std::array<double, 2>> dom1, dom2;

  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;

  auto parse_expr = [&](const std::string& src, int at) {
    try {
      Expr e = parse(src, popt);
      for (auto it = definitions.rbegin(); it != definitions.rend(); ++it) {
        e = substitute_parameter(e, it->first, it->second);
      }
      return e;
    } catch (const ParseError& err) {
      throw MetricFileError(std::string("in '") + src + "': " + err.what(), at);
    }
  };

  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    if (s.front() == '[' && s.back() == ']' && s.find('=') == std::string::npos) {
      section = trim(s.substr(1, s.size() - 2));
      static const char* known[] = {"coordinates", "parameters", "definitions", "metric",
                                    "domain",      "pullback",   "killing-basis", "facts"};
      if (std::find(std::begin(known), std::end(known), section) == std::end(known)) {
        throw MetricFileError("unknown section [" + section + "]", line);
      }
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw MetricFileError("expected key = value", line);
    const std::string key = trim(s.substr(0, eq));
    const std::string value = unquote(trim(s.substr(eq + 1)));
    if (key.empty()) throw MetricFileError("empty key", line);

    if (section.empty()) {
      if (key != "name") throw MetricFileError("unknown top-level key '" + key + "'", line);
      def.name = value;
    } else if (section == "coordinates") {
      if (key != "names") throw MetricFileError("expected 'names = a, b'", line);
      const auto comma = value.find(',');
      if (comma == std::string::npos) throw MetricFileError("expected two coordinate names", line);
      popt.coordinate_names = {trim(value.substr(0, comma)), trim(value.substr(comma + 1))};
      def.coordinate_names = popt.coordinate_names;
    } else if (section == "parameters") {
      def.parameters[key] = to_number(value, line);
    } else if (section == "definitions") {
      definitions.emplace_back(key, parse_expr(value, line));
    } else if (section == "metric") {
      static const char* keys[] = {"g11", "g12", "g22", "h11", "h12", "h22"};
      if (std::find(std::begin(keys), std::end(keys), key) == std::end(keys)) {
        throw MetricFileError("unknown metric coefficient '" + key + "'", line);
      }
      if (metric_src.count(key)) throw MetricFileError("duplicate coefficient '" + key + "'", line);
      metric_src[key] = {value, line};
    } else if (section == "domain") {
      const auto v = to_list(value, line);
      if (v.size() != 2 || !(v[0] < v[1])) {
        throw MetricFileError("expected an interval [min, max] with min < max", line);
      }
      if (key == popt.coordinate_names[0] || key == "t1") {
        dom1 = std::array<double, 2>{v[0], v[1]};
      } else if (key == popt.coordinate_names[1] || key == "t2") {
        dom2 = std::array<double, 2>{v[0], v[1]};
      } else {
        throw MetricFileError("unknown coordinate '" + key + "'", line);
      }
    } else if (section == "pullback") {
      const int k = key == popt.coordinate_names[0] || key == "t1"   ? 0
                    : key == popt.coordinate_names[1] || key == "t2" ? 1
                                                                     : -1;
      if (k < 0) throw MetricFileError("unknown coordinate '" + key + "'", line);
      pullback_src[k] = {value, line};
    } else if (section == "killing-basis") {
      if (key != "a") throw MetricFileError("expected 'a = [a11, a12, a21, a22]'", line);
      const auto v = to_list(value, line);
      if (v.size() != 4) throw MetricFileError("killing basis needs four entries", line);
      if (v[0] * v[3] - v[1] * v[2] == 0.0) {
        throw MetricFileError("killing basis change is singular", line);
      }
      def.killing_basis = BasisChange{v[0], v[1], v[2], v[3]};
    } else if (section == "facts") {
      if (key == "vacuum") {
        def.vacuum = to_bool(value, line);
      } else if (key == "lambda") {
        def.lambda = to_number(value, line);
      } else {
        throw MetricFileError("unknown fact '" + key + "'", line);
      }
    }
  }

  for (const char* k : {"g11", "g22", "h11", "h22"}) {
    if (!metric_src.count(k)) throw MetricFileError(std::string("missing coefficient ") + k, 0);
  }
  auto coeff = [&](const char* k) {
    const auto it = metric_src.find(k);
    return it == metric_src.end() ? Expr() : parse_expr(it->second.first, it->second.second);
  };
  def.g11 = coeff("g11");
  def.g12 = coeff("g12");
  def.g22 = coeff("g22");
  def.h11 = coeff("h11");
  def.h12 = coeff("h12");
  def.h22 = coeff("h22");
  if (pullback_src[0] || pullback_src[1]) {
    std::array<Expr, 2> phi = {Expr::coordinate(0), Expr::coordinate(1)};
    for (int k = 0; k < 2; ++k) {
      if (pullback_src[k]) phi[k] = parse_expr(pullback_src[k]->first, pullback_src[k]->second);
    }
    def.pullback = phi;
  }
  if (dom1 || dom2) {
    if (!dom1 || !dom2) throw MetricFileError("domain needs intervals for both coordinates", 0);
    def.domain = Box{(*dom1)[0], (*dom1)[1], (*dom2)[0], (*dom2)[1]};
  }

  std::set<std::string> used;
  for (const Expr* e : {&def.g11, &def.g12, &def.g22, &def.h11, &def.h12, &def.h22}) {
    const auto p = e->parameters();
    used.insert(p.begin(), p.end());
  }
  if (def.pullback) {
    for (const auto& e : *def.pullback) {
      const auto p = e.parameters();
      used.insert(p.begin(), p.end());
    }
  }
  for (const auto& name : used) {
    if (!def.parameters.count(name)) throw UnboundParameter(name);
  }
  return def;
}

MetricDefinition load_metric_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw MetricFileError("cannot open metric file '" + path + "'", 0);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_metric_file(buf.str());
}

std::string write_metric_file(const MetricDefinition& def) {
  std::string s;
  if (!def.name.empty()) s += "name = " + def.name + "\n";
  if (!def.parameters.empty()) {
    s += "\n[parameters]\n";
    for (const auto& [name, value] : def.parameters) s += name + " = " + number_text(value) + "\n";
  }
  s += "\n[metric]\n";
  const std::pair<const char*, const Expr*> coeffs[] = {{"g11", &def.g11}, {"g12", &def.g12},
                                                        {"g22", &def.g22}, {"h11", &def.h11},
                                                        {"h12", &def.h12}, {"h22", &def.h22}};
  for (const auto& [key, e] : coeffs) s += std::string(key) + " = " + e->to_string() + "\n";
  if (def.domain) {
    s += "\n[domain]\n";
    s += "t1 = [" + number_text(def.domain->t1_min) + ", " + number_text(def.domain->t1_max) +
         "]\n";
    s += "t2 = [" + number_text(def.domain->t2_min) + ", " + number_text(def.domain->t2_max) +
         "]\n";
  }
  if (def.pullback) {
    s += "\n[pullback]\n";
    s += "t1 = " + (*def.pullback)[0].to_string() + "\n";
    s += "t2 = " + (*def.pullback)[1].to_string() + "\n";
  }
  if (def.killing_basis) {
    const auto& a = *def.killing_basis;
    s += "\n[killing-basis]\na = [" + number_text(a[0]) + ", " + number_text(a[1]) + ", " +
         number_text(a[2]) + ", " + number_text(a[3]) + "]\n";
  }
  s += "\n[facts]\n";
  s += std::string("vacuum = ") + (def.vacuum ? "true" : "false") + "\n";
  s += "lambda = " + number_text(def.lambda) + "\n";
  return s;
}

MetricDefinition load_metric(const std::string& name_or_path) {
  if (auto entry = find_entry(name_or_path)) return entry->metric;
  return load_metric_file(name_or_path);
}

}  // namespace otk
