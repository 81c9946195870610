#pragma once

// JSON and text serialization. Integers are written as decimal strings so
// arbitrarily large values round-trip exactly.

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "urb/analysis.hpp"
#include "urb/construct_t1.hpp"
#include "urb/construct_t2.hpp"
#include "urb/error.hpp"
#include "urb/int_set.hpp"
#include "urb/sidon.hpp"

namespace urb::io {

using json = nlohmann::ordered_json;

inline json to_json(const Integer& x) { return to_decimal(x); }

inline json to_json(const IntSet& s) {
  json arr = json::array();
  for (const Integer& x : s) arr.push_back(to_decimal(x));
  return arr;
}

inline json to_json(const std::vector<Integer>& v) {
  json arr = json::array();
  for (const Integer& x : v) arr.push_back(to_decimal(x));
  return arr;
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? to_json(*v) : json(nullptr);
}

inline Integer integer_from_json(const json& j) {
  if (j.is_string()) return parse_integer(j.get<std::string>());
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
  }
  throw ParseError("expected an integer or a decimal string, got " + std::string(j.type_name()));
}

inline IntSet set_from_array(const json& j) {
  std::vector<Integer> v;
  v.reserve(j.size());
  for (const json& e : j) v.push_back(integer_from_json(e));
  return IntSet(std::move(v));
}

/// Accepts a bare array, an object with "set", or a construction artifact
/// (the last entry of "stages" is used).
inline IntSet set_from_json(const json& j) {
  if (j.is_array()) return set_from_array(j);
  if (j.is_object()) {
    if (j.contains("stages") && j["stages"].is_array() && !j["stages"].empty()) {
      const json& last = j["stages"].back();
      if (last.contains("set")) return set_from_array(last["set"]);
    }
    if (j.contains("set") && j["set"].is_array()) return set_from_array(j["set"]);
  }
  throw ParseError("no integer set found in JSON document");
}

/// Whitespace-separated integers; '#' starts a comment running to end of line.
inline IntSet set_from_text(std::string_view text) {
  std::vector<Integer> v;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string w;
    while (words >> w) {
      if (!w.empty() && w.back() == ',') w.pop_back();
      if (!w.empty()) v.push_back(parse_integer(w));
    }
  }
  return IntSet(std::move(v));
}

/// JSON when the first non-blank character is '[' or '{', text otherwise.
inline IntSet parse_set(std::string_view content) {
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && (content[first] == '[' || content[first] == '{')) {
    json j;
    try {
      j = json::parse(content);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return set_from_json(j);
  }
  return set_from_text(content);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << content;
  if (!out) throw InvalidArgument("write failed for " + path);
}

inline json to_json(const t1::Stage& s) {
  json j;
  j["h"] = s.h;
  j["a_star"] = to_decimal(s.a_star);
  j["size"] = s.set.size();
  if (s.audit) {
    j["m"] = to_decimal(s.audit->m);
    j["b"] = to_decimal(s.audit->b);
    j["b_tilde"] = optional_json(s.audit->b_tilde);
    j["greedy"] = to_json(s.audit->greedy);
  }
  j["set"] = to_json(s.set);
  return j;
}

inline json to_json(const t1::BuildResult& r) {
  json j;
  j["kind"] = "construct_t1";
  j["stages_built"] = r.history.size();
  j["x0"] = optional_json(r.x0);
  j["grid_points"] = r.grid.size();
  j["stages"] = json::array();
  for (const auto& s : r.history) j["stages"].push_back(to_json(s));
  return j;
}

inline json to_json(const t2::Stage& s) {
  json j;
  j["index"] = s.index;
  j["a_star"] = to_decimal(s.a_star);
  j["size"] = s.set.size();
  if (s.repair) {
    j["repair"] = {{"m", to_decimal(s.repair->m)},
                   {"b", to_decimal(s.repair->b)},
                   {"b_tilde", optional_json(s.repair->b_tilde)}};
  } else {
    j["repair"] = nullptr;
  }
  if (s.sidon) {
    j["sidon"] = {{"y", to_decimal(s.sidon->y)},
                  {"q", s.sidon->sidon_q},
                  {"s_size", s.sidon->s_size},
                  {"s_tilde_size", s.sidon->s_tilde_size},
                  {"s_star_size", s.sidon->s_star_size},
                  {"pruned_pairs", s.sidon->pruned_pairs},
                  {"rejected_y", to_json(s.sidon->rejected_y)}};
  } else {
    j["sidon"] = nullptr;
  }
  j["set"] = to_json(s.set);
  return j;
}

inline json to_json(const t2::BuildResult& r) {
  json j;
  j["kind"] = "construct_t2";
  j["epsilon"] = r.epsilon.str();
  j["x_ladder"] = to_json(r.x_ladder);
  j["stages"] = json::array();
  for (const auto& s : r.stages) j["stages"].push_back(to_json(s));
  return j;
}

inline json to_json(const sidon::SidonResult& r) {
  json j;
  j["kind"] = "sidon";
  j["method"] = std::string(sidon::method_name(r.method));
  j["param"] = r.q_or_p;
  j["n_bound"] = r.n_bound;
  j["cardinality"] = r.cardinality;
  j["density_gap"] = r.density_gap;
  j["set"] = to_json(r.set);
  return j;
}

inline json to_json(const analysis::BlockProfile& p, const analysis::InequalityReport& r) {
  json j;
  j["kind"] = "blocks";
  j["n"] = p.n;
  j["N"] = p.N;
  j["M"] = p.M;
  j["zero_present"] = p.zero_present;
  j["short_coverage"] = p.short_coverage;
  j["inequalities"] = json::array();
  for (const auto& c : r.checks) {
    j["inequalities"].push_back(
        {{"name", c.name}, {"lhs", to_decimal(c.lhs)}, {"rhs", to_decimal(c.rhs)}, {"pass", c.pass}});
  }
  j["cauchy_schwarz"] = {
      {"lhs", r.cs_lhs}, {"middle", r.cs_middle}, {"rhs", r.cs_rhs}, {"consistent", r.cs_consistent}};
  j["all_pass"] = r.all_pass();
  return j;
}

inline json to_json(const analysis::GrowthReport& r) {
  json j;
  j["kind"] = "growth";
  j["samples"] = json::array();
  for (const auto& s : r.samples) {
    j["samples"].push_back({{"x", to_decimal(s.x)},
                            {"count", s.count},
                            {"count_over_cbrt_x", s.cube_root_ratio},
                            {"count_over_sqrt_x", s.sqrt_ratio},
                            {"sqrt_8x_slack", s.nathanson_slack},
                            {"beyond_prefix", s.beyond_prefix}});
  }
  j["cA_estimate"] = r.ca_estimate;
  if (r.liminf_probe) {
    j["liminf_probe"] = {{"value", *r.liminf_probe}, {"label", "finite-prefix surrogate"}};
  } else {
    j["liminf_probe"] = nullptr;
  }
  return j;
}

/// Text dump of an IntSet, one integer per line.
inline std::string to_text(const IntSet& s) {
  std::string out;
  for (const Integer& x : s) {
    out += to_decimal(x);
    out += '\n';
  }
  return out;
}

}  // namespace urb::io
