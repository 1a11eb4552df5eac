#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace psc::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw UsageError("bad value for " + key + ": '" + value + "'");
  return out;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) throw UsageError(std::string("empty entry in ") + what);
    out.push_back(parse_number<double>(what, tok));
  }
  return out;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "command", "matrix", "ell",   "eps",       "samples", "seed",   "resolution", "ktheta",
      "flags",   "z",      "grid",  "angles",    "hermitian", "points", "suite"};
  return keys;
}

std::vector<std::string> ExperimentConfig::to_lines() const {
  std::string eps_text;
  for (std::size_t i = 0; i < eps.size(); ++i) eps_text += (i ? "," : "") + format_double(eps[i]);
  return {"command=" + command,
          "matrix=" + matrix,
          "ell=" + std::to_string(ell),
          "eps=" + eps_text,
          "samples=" + std::to_string(samples),
          "seed=" + std::to_string(seed),
          "resolution=" + std::to_string(resolution),
          "ktheta=" + std::to_string(ktheta),
          "flags=" + flags,
          "z=" + z,
          "grid=" + grid,
          "angles=" + std::to_string(angles),
          "hermitian=" + hermitian,
          "points=" + std::to_string(points),
          "suite=" + suite};
}

ExperimentConfig apply_pairs(ExperimentConfig c, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, raw] : kv) {
    const std::string v = trim(raw);
    if (key == "command") c.command = v;
    else if (key == "matrix") c.matrix = v;
    else if (key == "ell") c.ell = parse_number<int>(key, v);
    else if (key == "eps") c.eps = v.empty() ? std::vector<double>{} : parse_double_list(v, "eps");
    else if (key == "samples") c.samples = parse_number<std::size_t>(key, v);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, v);
    else if (key == "resolution") c.resolution = parse_number<int>(key, v);
    else if (key == "ktheta") c.ktheta = parse_number<int>(key, v);
    else if (key == "flags") c.flags = v;
    else if (key == "z") c.z = v;
    else if (key == "grid") c.grid = v;
    else if (key == "angles") c.angles = parse_number<int>(key, v);
    else if (key == "hermitian") c.hermitian = v;
    else if (key == "points") c.points = parse_number<int>(key, v);
    else if (key == "suite") c.suite = v;
    else throw UsageError("unknown config key '" + key + "'");
  }
  return c;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::map<std::string, std::string> kv;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("config " + path + ": " + e.what());
    }
    if (!j.contains("header") || !j["header"].contains("config"))
      throw UsageError("config " + path + ": JSON without header.config");
    for (const auto& [k, v] : j["header"]["config"].items()) kv[k] = v.get<std::string>();
    return kv;
  }

  const auto& keys = config_keys();
  std::istringstream lines(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(lines, line)) {
    ++number;
    line = trim(line);
    const bool comment = !line.empty() && line[0] == '#';
    if (comment) line = trim(line.substr(line.find_first_not_of('#')));
    const auto eq = line.find('=');
    if (line.empty() || line[0] == '<' || eq == std::string::npos) continue;
    const std::string key = trim(line.substr(0, eq));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      // Comment lines of artifacts may carry other annotations.
      if (comment) continue;
      throw UsageError(path + ": line " + std::to_string(number) + ": unknown key '" + key + "'");
    }
    kv[key] = line.substr(eq + 1);
  }
  return kv;
}

}  // namespace psc::cli
