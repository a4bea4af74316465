// Copyright 2026 The synthvol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "synthvol/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "synthvol/error.hpp"

namespace synthvol {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    parts.push_back(trim(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return parts;
}

template <typename T>
T parse_number(const std::string& text, const std::string& key) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw ConfigError("config key '" + key + "': cannot parse '" + text + "' as a number");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) throw ConfigError("config key '" + key + "': not finite");
  }
  return value;
}

template <typename T>
std::string format_number(T value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

struct Field {
  std::string section;
  std::string key;
  std::function<void(DistributionConfig&, const std::string&)> parse;
  std::function<std::string(const DistributionConfig&)> format;
  std::function<json(const DistributionConfig&)> to_json;
  std::function<void(DistributionConfig&, const json&)> from_json;

  std::string name() const { return section + "." + key; }
};

template <typename T>
T json_get(const json& j, const std::string& name) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + name + "': wrong value type");
  }
}

Field int_range_field(std::string section, std::string key, IntRange DistributionConfig::*m) {
  const std::string name = section + "." + key;
  return {section, key,
          [m, name](DistributionConfig& c, const std::string& v) {
            const auto parts = split_list(v);
            if (parts.size() != 2) throw ConfigError("config key '" + name + "': expected 'lo, hi'");
            c.*m = {parse_number<int>(parts[0], name), parse_number<int>(parts[1], name)};
          },
          [m](const DistributionConfig& c) {
            return format_number((c.*m).lo) + ", " + format_number((c.*m).hi);
          },
          [m](const DistributionConfig& c) { return json::array({(c.*m).lo, (c.*m).hi}); },
          [m, name](DistributionConfig& c, const json& j) {
            const auto v = json_get<std::array<int, 2>>(j, name);
            c.*m = {v[0], v[1]};
          }};
}

Field real_range_field(std::string section, std::string key, RealRange DistributionConfig::*m) {
  const std::string name = section + "." + key;
  return {section, key,
          [m, name](DistributionConfig& c, const std::string& v) {
            const auto parts = split_list(v);
            if (parts.size() != 2) throw ConfigError("config key '" + name + "': expected 'lo, hi'");
            c.*m = {parse_number<double>(parts[0], name), parse_number<double>(parts[1], name)};
          },
          [m](const DistributionConfig& c) {
            return format_number((c.*m).lo) + ", " + format_number((c.*m).hi);
          },
          [m](const DistributionConfig& c) { return json::array({(c.*m).lo, (c.*m).hi}); },
          [m, name](DistributionConfig& c, const json& j) {
            const auto v = json_get<std::array<double, 2>>(j, name);
            c.*m = {v[0], v[1]};
          }};
}

Field real_field(std::string section, std::string key, double DistributionConfig::*m) {
  const std::string name = section + "." + key;
  return {section, key,
          [m, name](DistributionConfig& c, const std::string& v) {
            c.*m = parse_number<double>(trim(v), name);
          },
          [m](const DistributionConfig& c) { return format_number(c.*m); },
          [m](const DistributionConfig& c) { return json(c.*m); },
          [m, name](DistributionConfig& c, const json& j) { c.*m = json_get<double>(j, name); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> kFields = [] {
    std::vector<Field> f;
    f.push_back(
        {"volume", "hw_choices",
         [](DistributionConfig& c, const std::string& v) {
           c.hw_choices.clear();
           for (const auto& p : split_list(v)) {
             c.hw_choices.push_back(parse_number<int>(p, "volume.hw_choices"));
           }
         },
         [](const DistributionConfig& c) {
           std::string out;
           for (std::size_t i = 0; i < c.hw_choices.size(); ++i) {
             if (i) out += ", ";
             out += format_number(c.hw_choices[i]);
           }
           return out;
         },
         [](const DistributionConfig& c) { return json(c.hw_choices); },
         [](DistributionConfig& c, const json& j) {
           c.hw_choices = json_get<std::vector<int>>(j, "volume.hw_choices");
         }});
    f.push_back(int_range_field("volume", "depth_range", &DistributionConfig::depth_range));
    f.push_back(int_range_field("volume", "k_range", &DistributionConfig::k_range));
    f.push_back(real_field("seedmask", "coherence_sigma", &DistributionConfig::coherence_sigma));
    f.push_back(real_field("seedmask", "background_fraction",
                           &DistributionConfig::background_fraction));
    f.push_back(int_range_field("struct", "g_range", &DistributionConfig::g_range));
    f.push_back(int_range_field("struct", "s_range", &DistributionConfig::s_range));
    f.push_back(real_range_field("struct", "d_star_range", &DistributionConfig::d_star_range));
    f.push_back(real_field("struct", "pi_prob", &DistributionConfig::pi_prob));
    f.push_back(int_range_field("appearance", "n_scales_range",
                                &DistributionConfig::n_scales_range));
    f.push_back(real_range_field("appearance", "weight_range", &DistributionConfig::weight_range));
    f.push_back(real_range_field("appearance", "intensity_range",
                                 &DistributionConfig::intensity_range));
    f.push_back(real_range_field("appearance", "sigma_range", &DistributionConfig::sigma_range));
    f.push_back(real_field("appearance", "bg_mean", &DistributionConfig::bg_mean));
    f.push_back(real_field("appearance", "bg_sd", &DistributionConfig::bg_sd));
    f.push_back(real_field("appearance", "bg_perturb_sd", &DistributionConfig::bg_perturb_sd));
    f.push_back(real_field("appearance", "noise_sd", &DistributionConfig::noise_sd));
    f.push_back({"appearance", "background_mode",
                 [](DistributionConfig& c, const std::string& v) {
                   c.background_mode = background_mode_from_string(trim(v));
                 },
                 [](const DistributionConfig& c) { return to_string(c.background_mode); },
                 [](const DistributionConfig& c) { return json(to_string(c.background_mode)); },
                 [](DistributionConfig& c, const json& j) {
                   c.background_mode = background_mode_from_string(
                       json_get<std::string>(j, "appearance.background_mode"));
                 }});
    return f;
  }();
  return kFields;
}

const Field* find_field(const std::string& section, const std::string& key) {
  for (const auto& f : fields()) {
    if (f.section == section && f.key == key) return &f;
  }
  return nullptr;
}

bool has_section(const std::string& section) {
  for (const auto& f : fields()) {
    if (f.section == section) return true;
  }
  return false;
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError("config key '" + key + "': " + what);
}

}  // namespace

std::string to_string(BackgroundMode mode) {
  return mode == BackgroundMode::kPerSlice ? "per-slice" : "per-pixel";
}

BackgroundMode background_mode_from_string(const std::string& text) {
  if (text == "per-slice") return BackgroundMode::kPerSlice;
  if (text == "per-pixel") return BackgroundMode::kPerPixel;
  throw ConfigError("config key 'appearance.background_mode': expected per-slice or "
                    "per-pixel, got '" + text + "'");
}

void DistributionConfig::validate() const {
  require(!hw_choices.empty(), "volume.hw_choices", "must list at least one size");
  for (int hw : hw_choices) {
    require(hw >= kMinSeedExtent && hw <= 32767, "volume.hw_choices",
            "sizes must lie in [8, 32767]");
  }
  require(depth_range.lo >= 2 && depth_range.lo <= depth_range.hi && depth_range.hi <= 32767,
          "volume.depth_range", "need 2 <= lo <= hi");
  require(k_range.lo >= 1 && k_range.lo <= k_range.hi && k_range.hi <= 65535,
          "volume.k_range", "need 1 <= lo <= hi <= 65535");
  require(coherence_sigma > 0.0, "seedmask.coherence_sigma", "must be positive");
  require(background_fraction >= 0.0 && background_fraction < 1.0,
          "seedmask.background_fraction", "must lie in [0, 1)");
  require(g_range.lo >= 0 && g_range.lo <= g_range.hi, "struct.g_range", "need 0 <= lo <= hi");
  require(s_range.lo >= 0 && s_range.lo <= s_range.hi, "struct.s_range", "need 0 <= lo <= hi");
  require(d_star_range.lo >= 0.0 && d_star_range.lo <= d_star_range.hi &&
              d_star_range.hi <= 1.0,
          "struct.d_star_range", "need 0 <= lo <= hi <= 1");
  require(pi_prob >= 0.0 && pi_prob <= 1.0, "struct.pi_prob", "must lie in [0, 1]");
  require(n_scales_range.lo >= 1 && n_scales_range.lo <= n_scales_range.hi &&
              n_scales_range.hi <= 4,
          "appearance.n_scales_range", "need 1 <= lo <= hi <= 4");
  require(weight_range.lo >= 0.0 && weight_range.lo <= weight_range.hi &&
              weight_range.hi > 0.0,
          "appearance.weight_range", "need 0 <= lo <= hi and hi > 0");
  require(intensity_range.lo >= 0.1 && intensity_range.lo <= intensity_range.hi &&
              intensity_range.hi <= 0.9,
          "appearance.intensity_range", "need 0.1 <= lo <= hi <= 0.9");
  require(sigma_range.lo >= 2.0 && sigma_range.lo <= sigma_range.hi && sigma_range.hi <= 8.0,
          "appearance.sigma_range", "need 2 <= lo <= hi <= 8");
  require(bg_sd >= 0.0, "appearance.bg_sd", "must be non-negative");
  require(bg_perturb_sd >= 0.0, "appearance.bg_perturb_sd", "must be non-negative");
  require(noise_sd >= 0.0, "appearance.noise_sd", "must be non-negative");
}

DistributionConfig parse_config_ini(const std::string& text, const std::string& source) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source + ": line " + std::to_string(e.line()) + ": " + e.message());
  }
  DistributionConfig config;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(source + ": key '" + section + "' must be inside a section");
    }
    if (!has_section(section)) {
      throw ConfigError(source + ": unknown config section '" + section + "'");
    }
    for (const auto& [key, value] : body) {
      const Field* field = find_field(section, key);
      if (!field) {
        throw ConfigError(source + ": unknown config key '" + section + "." + key + "'");
      }
      try {
        field->parse(config, value.data());
      } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
      }
    }
  }
  try {
    config.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return config;
}

DistributionConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (path.extension() == ".json") {
    json j;
    try {
      j = json::parse(buffer.str());
    } catch (const json::exception& e) {
      throw ConfigError(path.string() + ": invalid JSON: " + e.what());
    }
    if (!j.contains("config")) throw ConfigError(path.string() + ": missing 'config' object");
    try {
      return j.at("config").get<DistributionConfig>();
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
  }
  return parse_config_ini(buffer.str(), path.string());
}

std::string to_ini(const DistributionConfig& config) {
  std::string out;
  std::string section;
  for (const auto& f : fields()) {
    if (f.section != section) {
      if (!section.empty()) out += "\n";
      section = f.section;
      out += "[" + section + "]\n";
    }
    out += f.key + " = " + f.format(config) + "\n";
  }
  return out;
}

void to_json(json& j, const DistributionConfig& c) {
  j = json::object();
  for (const auto& f : fields()) j[f.section][f.key] = f.to_json(c);
}

void from_json(const json& j, DistributionConfig& c) {
  c = DistributionConfig{};
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [section, body] : j.items()) {
    if (!has_section(section) || !body.is_object()) {
      throw ConfigError("unknown config section '" + section + "'");
    }
    for (const auto& [key, value] : body.items()) {
      const Field* field = find_field(section, key);
      if (!field) throw ConfigError("unknown config key '" + section + "." + key + "'");
      field->from_json(c, value);
    }
  }
  c.validate();
}

void to_json(json& j, const StructParams& p) {
  j = json::object();
  j["depth"] = p.depth;
  j["per_label"] = json::array();
  for (const auto& l : p.per_label) {
    j["per_label"].push_back(
        {{"g", l.dilations}, {"s", l.erosions}, {"d_star", l.transition}, {"pi", l.evolves ? 1 : 0}});
  }
}

void from_json(const json& j, StructParams& p) {
  p.depth = j.at("depth").get<int>();
  p.per_label.clear();
  for (const auto& l : j.at("per_label")) {
    p.per_label.push_back({l.at("g").get<int>(), l.at("s").get<int>(),
                           l.at("d_star").get<int>(), l.at("pi").get<int>() != 0});
  }
}

void to_json(json& j, const AppearanceParams& p) {
  j = json::object();
  j["per_label"] = json::array();
  for (const auto& l : p.per_label) {
    j["per_label"].push_back({{"n_scales", l.n_scales},
                              {"weights", l.weights},
                              {"intensity", l.intensity},
                              {"blur_sigma", l.blur_sigma}});
  }
  j["bg_mean"] = p.bg_mean;
  j["bg_sd"] = p.bg_sd;
  j["bg_perturb_sd"] = p.bg_perturb_sd;
  j["noise_sd"] = p.noise_sd;
  j["background_mode"] = to_string(p.background_mode);
}

void from_json(const json& j, AppearanceParams& p) {
  p.per_label.clear();
  for (const auto& l : j.at("per_label")) {
    p.per_label.push_back({l.at("n_scales").get<int>(), l.at("weights").get<std::vector<double>>(),
                           l.at("intensity").get<double>(), l.at("blur_sigma").get<double>()});
  }
  p.bg_mean = j.at("bg_mean").get<double>();
  p.bg_sd = j.at("bg_sd").get<double>();
  p.bg_perturb_sd = j.at("bg_perturb_sd").get<double>();
  p.noise_sd = j.at("noise_sd").get<double>();
  p.background_mode = background_mode_from_string(j.at("background_mode").get<std::string>());
}

}  // namespace synthvol
