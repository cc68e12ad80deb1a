#include "smap/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "smap/csv.hpp"
#include "smap/errors.hpp"

namespace smap::config {
namespace {

using evolution::SimConfig;
using Setter = std::function<void(SimConfig&, const std::string&)>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& raw) {
  const std::string text = trim(raw);
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("invalid value for " + key + ": '" + raw + "'");
  }
  return value;
}

Vec3 parse_vec3(const std::string& key, const std::string& raw) {
  Vec3 v;
  std::stringstream ss(raw);
  std::string item;
  int c = 0;
  while (std::getline(ss, item, ',')) {
    if (c >= 3) throw ConfigError("invalid vector for " + key + ": '" + raw + "'");
    v[c++] = parse_number<double>(key, item);
  }
  if (c != 3) throw ConfigError("invalid vector for " + key + ": '" + raw + "'");
  return v;
}

template <class Parse>
auto wrap(const std::string& key, const std::string& raw, Parse&& parse) {
  try {
    return parse(trim(raw));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"grid.dim", [](SimConfig& c, const std::string& v) { c.dim = parse_number<int>("grid.dim", v); }},
      {"grid.n", [](SimConfig& c, const std::string& v) { c.n = parse_number<int>("grid.n", v); }},
      {"grid.length",
       [](SimConfig& c, const std::string& v) { c.length = parse_number<double>("grid.length", v); }},
      {"time.dt", [](SimConfig& c, const std::string& v) { c.dt = parse_number<double>("time.dt", v); }},
      {"time.steps",
       [](SimConfig& c, const std::string& v) { c.steps = parse_number<int>("time.steps", v); }},
      {"time.integrator",
       [](SimConfig& c, const std::string& v) {
         c.integrator = wrap("time.integrator", v, evolution::parse_integrator);
       }},
      {"initial.kind",
       [](SimConfig& c, const std::string& v) {
         c.initial.kind = wrap("initial.kind", v, parse_initial_kind);
       }},
      {"initial.profile",
       [](SimConfig& c, const std::string& v) {
         c.initial.profile = wrap("initial.profile", v, parse_profile);
       }},
      {"initial.amplitude",
       [](SimConfig& c, const std::string& v) {
         c.initial.amplitude = parse_number<double>("initial.amplitude", v);
       }},
      {"initial.width",
       [](SimConfig& c, const std::string& v) {
         c.initial.width = parse_number<double>("initial.width", v);
       }},
      {"initial.mode_cutoff",
       [](SimConfig& c, const std::string& v) {
         c.initial.mode_cutoff = parse_number<int>("initial.mode_cutoff", v);
       }},
      {"initial.seed",
       [](SimConfig& c, const std::string& v) {
         c.initial.seed = parse_number<std::uint64_t>("initial.seed", v);
       }},
      {"initial.base",
       [](SimConfig& c, const std::string& v) { c.initial.base = parse_vec3("initial.base", v); }},
      {"initial.transverse",
       [](SimConfig& c, const std::string& v) {
         c.initial.transverse = parse_vec3("initial.transverse", v);
       }},
      {"output.cadence",
       [](SimConfig& c, const std::string& v) { c.cadence = parse_number<int>("output.cadence", v); }},
      {"output.snapshot_every",
       [](SimConfig& c, const std::string& v) {
         c.snapshot_every = parse_number<int>("output.snapshot_every", v);
       }},
      {"output.dir", [](SimConfig& c, const std::string& v) { c.output_dir = trim(v); }},
  };
  return table;
}

void set(SimConfig& config, const std::string& key, const std::string& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError("unknown configuration key '" + key + "'");
  it->second(config, value);
}

void check(const SimConfig& config) {
  try {
    evolution::validate(config);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::string vec_text(const Vec3& v) {
  return csv::format_number(v.x) + "," + csv::format_number(v.y) + "," + csv::format_number(v.z);
}

}  // namespace

SimConfig parse(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  SimConfig config;
  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) throw ConfigError("key '" + section + "' is outside any section");
    for (const auto& [key, value] : body) set(config, section + "." + key, value.data());
  }
  check(config);
  return config;
}

SimConfig load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void apply_override(SimConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override must look like section.key=value, got '" + assignment + "'");
  }
  set(config, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
  check(config);
}

std::string to_text(const SimConfig& c) {
  std::ostringstream os;
  os << "[grid]\n"
     << "dim = " << c.dim << "\n"
     << "n = " << c.n << "\n"
     << "length = " << csv::format_number(c.length) << "\n\n"
     << "[time]\n"
     << "dt = " << csv::format_number(c.dt) << "\n"
     << "steps = " << c.steps << "\n"
     << "integrator = " << evolution::to_string(c.integrator) << "\n\n"
     << "[initial]\n"
     << "kind = " << to_string(c.initial.kind) << "\n"
     << "profile = " << to_string(c.initial.profile) << "\n"
     << "amplitude = " << csv::format_number(c.initial.amplitude) << "\n"
     << "width = " << csv::format_number(c.initial.width) << "\n"
     << "mode_cutoff = " << c.initial.mode_cutoff << "\n"
     << "seed = " << c.initial.seed << "\n"
     << "base = " << vec_text(c.initial.base) << "\n"
     << "transverse = " << vec_text(c.initial.transverse) << "\n\n"
     << "[output]\n"
     << "cadence = " << c.cadence << "\n"
     << "snapshot_every = " << c.snapshot_every << "\n"
     << "dir = " << c.output_dir.string() << "\n";
  return os.str();
}

}  // namespace smap::config
