#include "volterra/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace volterra {

namespace {

using nlohmann::json;

std::string trim(const std::string& s)
{
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Strip a trailing comment, respecting double-quoted strings.
std::string strip_comment(const std::string& s)
{
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_str = !in_str;
    if (s[i] == '#' && !in_str) return s.substr(0, i);
  }
  return s;
}

json parse_scalar(const std::string& tok, int line)
{
  if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"')
    return tok.substr(1, tok.size() - 2);
  if (tok == "true") return true;
  if (tok == "false") return false;
  try {
    std::size_t used = 0;
    if (tok.find_first_of(".eE") == std::string::npos) {
      const long long v = std::stoll(tok, &used);
      if (used == tok.size()) return v;
    } else {
      const double d = std::stod(tok, &used);
      if (used == tok.size()) return d;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError("config line " + std::to_string(line) + ": bad value '" + tok + "'");
}

json parse_value(const std::string& raw, int line)
{
  const std::string v = trim(raw);
  if (v.empty()) throw ConfigError("config line " + std::to_string(line) + ": missing value");
  if (v.front() == '[') {
    if (v.back() != ']')
      throw ConfigError("config line " + std::to_string(line) + ": unterminated array");
    json arr = json::array();
    std::string body = v.substr(1, v.size() - 2);
    std::string tok;
    bool in_str = false;
    for (char c : body) {
      if (c == '"') in_str = !in_str;
      if (c == ',' && !in_str) {
        if (!trim(tok).empty()) arr.push_back(parse_scalar(trim(tok), line));
        tok.clear();
      } else {
        tok += c;
      }
    }
    if (!trim(tok).empty()) arr.push_back(parse_scalar(trim(tok), line));
    return arr;
  }
  return parse_scalar(v, line);
}

json* section_at(json& root, const std::string& dotted, int line)
{
  json* cur = &root;
  std::stringstream ss(dotted);
  std::string part;
  while (std::getline(ss, part, '.')) {
    part = trim(part);
    if (part.empty())
      throw ConfigError("config line " + std::to_string(line) + ": empty section name");
    cur = &(*cur)[part];
  }
  return cur;
}

void toml_value(std::ostream& os, const json& v)
{
  if (v.is_string()) {
    os << '"' << v.get<std::string>() << '"';
  } else if (v.is_array()) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ", ";
      toml_value(os, v[i]);
    }
    os << ']';
  } else {
    os << v.dump();
  }
}

}  // namespace

nlohmann::json parse_toml(const std::string& text)
{
  json root = json::object();
  json* section = &root;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::string s = trim(strip_comment(line));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
      const std::string name = trim(s.substr(1, s.size() - 2));
      if (name.empty())
        throw ConfigError("config line " + std::to_string(lineno) + ": empty section name");
      section = section_at(root, name, lineno);
      if (!section->is_object() && !section->is_null())
        throw ConfigError("config line " + std::to_string(lineno) + ": section clashes with key");
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(s.substr(0, eq));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    (*section)[key] = parse_value(s.substr(eq + 1), lineno);
  }
  return root;
}

nlohmann::json load_config_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_toml(ss.str());
}

nlohmann::json default_config()
{
  return json{
      {"grid", {{"depth", 5}, {"T", 1.0}}},
      {"kernel", {{"kind", "fractional"}, {"gamma", 0.25}, {"lambda", 1.0}}},
      {"driver", {{"kind", "sine"}, {"alpha", 1.0}}},
      {"hoelder", {{"alpha", 1.0}, {"gamma", 0.25}, {"etas", {0.25, 0.5, 0.75}}}},
      {"sew", {{"max_level", 8}, {"tol", 1e-10}}},
      {"extend", {{"m", 2}}},
      {"chen", {{"depth_lo", 5}, {"depth_hi", 8}}},
      {"solve",
       {{"field", "sin"}, {"y0", {1.0}}, {"scheme", "rough"}, {"columns", json::array()}}},
      {"convergence", {{"level_lo", 7}, {"level_hi", 10}}},
      {"brownian", {{"seed", 42}, {"n_paths", 100}, {"d", 2}, {"fine_depth", 7}}},
  };
}

nlohmann::json merge_config(nlohmann::json base, const nlohmann::json& over)
{
  if (!over.is_object() || !base.is_object()) return over;
  for (auto it = over.begin(); it != over.end(); ++it)
    base[it.key()] = base.contains(it.key()) ? merge_config(base[it.key()], it.value())
                                             : it.value();
  return base;
}

std::string default_config_toml()
{
  const json cfg = default_config();
  std::ostringstream os;
  for (auto sec = cfg.begin(); sec != cfg.end(); ++sec) {
    os << '[' << sec.key() << "]\n";
    for (auto kv = sec.value().begin(); kv != sec.value().end(); ++kv) {
      os << kv.key() << " = ";
      toml_value(os, kv.value());
      os << '\n';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace volterra
