// urb: construct, verify and analyze unique representation bases.
//
// Exit codes: 0 pass, 1 mathematical failure, 2 usage or input error,
// 3 internal invariant violation or module failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "urb/io.hpp"
#include "urb/urb.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { kPass = 0, kMathFail = 1, kUsage = 2, kInternal = 3 };

using urb::io::json;

struct Log {
  int level = 1;  // 0 quiet, 1 info, 2 debug

  Log() {
    if (const char* env = std::getenv("URB_LOG")) {
      const std::string v(env);
      if (v == "quiet") level = 0;
      else if (v == "debug") level = 2;
    }
  }
  void info(const std::string& msg) const {
    if (level >= 1) std::cerr << "[urb] " << msg << '\n';
  }
  void debug(const std::string& msg) const {
    if (level >= 2) std::cerr << "[urb:debug] " << msg << '\n';
  }
  void warn(const std::string& msg) const {
    if (level >= 1) std::cerr << "[urb] warning: " << msg << '\n';
  }
};

const Log& logger() {
  static const Log log;
  return log;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw urb::Error("SHA-256 digest failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Manifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::string input_digest;
  std::vector<std::string> outputs;

  json to_json() const {
    json j;
    j["command"] = command;
    j["parameters"] = json::object();
    for (const auto& [k, v] : parameters) j["parameters"][k] = v;
    j["tool_version"] = kVersion;
    j["input_digest"] = input_digest.empty() ? json(nullptr) : json(input_digest);
    j["outputs"] = outputs;
    return j;
  }
};

/// Writes `payload` (with the manifest embedded) to `path`, and the manifest
/// plus a timestamp to `path`.manifest.json.
void write_artifact(const std::string& path, json payload, Manifest manifest) {
  manifest.outputs.push_back(path);
  payload["manifest"] = manifest.to_json();
  urb::io::write_file(path, payload.dump(1) + "\n");
  json side = manifest.to_json();
  side["timestamp"] = utc_timestamp();
  urb::io::write_file(path + ".manifest.json", side.dump(1) + "\n");
  logger().info("wrote " + path);
}

struct Loaded {
  urb::IntSet set;
  std::string digest;
};

Loaded load_input(const std::string& path) {
  const std::string content = urb::io::read_file(path);
  Loaded l{urb::io::parse_set(content), sha256_hex(content)};
  logger().debug("read " + std::to_string(l.set.size()) + " elements from " + path);
  return l;
}

Loaded load_analysis_input(const std::string& path) {
  Loaded l = load_input(path);
  if (l.set.contains(0)) logger().warn("input contains 0, which lies in no block");
  return l;
}

std::uint64_t parse_u64(const std::string& text, const char* what) {
  const urb::Integer v = urb::parse_integer(text);
  if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) {
    throw urb::InvalidArgument(std::string(what) + " out of range: " + text);
  }
  return v.convert_to<std::uint64_t>();
}

int parse_int(const std::string& text, const char* what, int lo, int hi) {
  const urb::Integer v = urb::parse_integer(text);
  if (v < lo || v > hi) throw urb::InvalidArgument(std::string(what) + " out of range: " + text);
  return v.convert_to<int>();
}

std::string ratio_str(double x) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << x;
  return out.str();
}

// construct --------------------------------------------------------------

int run_construct_t1(const std::string& stages_text, const std::string& grid_text, const std::string& out) {
  const int stages = parse_int(stages_text, "--stages", 1, 1000);
  urb::t1::BuildOptions opts;
  opts.grid_points = parse_u64(grid_text, "--grid-points");
  opts.on_stage = [](const urb::t1::Stage& s) {
    logger().info("stage " + std::to_string(s.h) + ": |A|=" + std::to_string(s.set.size()) +
                  " a*=" + urb::to_decimal(s.a_star));
  };
  const urb::t1::BuildResult r = urb::t1::build(stages, opts);

  std::cout << std::setw(4) << "h" << std::setw(8) << "|A_h|" << std::setw(24) << "a*_h" << std::setw(14)
            << "|A|/|a*|^1/3" << '\n';
  for (const auto& s : r.history) {
    const double ratio = static_cast<double>(s.set.size()) / std::cbrt(urb::to_double(urb::abs_value(s.a_star)));
    std::cout << std::setw(4) << s.h << std::setw(8) << s.set.size() << std::setw(24) << urb::to_decimal(s.a_star)
              << std::setw(14) << ratio_str(ratio) << '\n';
  }
  std::cout << "x0 = " << (r.x0 ? urb::to_decimal(*r.x0) : std::string("none")) << '\n';

  if (!out.empty()) {
    Manifest m{"construct t1", {{"stages", stages_text}, {"grid_points", grid_text}}, "", {}};
    write_artifact(out, urb::io::to_json(r), m);
  }
  return kPass;
}

int run_construct_t2(const std::string& rounds_text, const std::string& eps_text, const std::string& max_q_text,
                     const std::string& out) {
  const int rounds = parse_int(rounds_text, "--rounds", 1, 1000);
  const urb::Rational eps = urb::parse_rational(eps_text);
  if (!urb::t2::epsilon_valid(eps)) throw urb::InvalidArgument("--epsilon must lie in (0, sqrt(2)/2)");
  urb::t2::BuildOptions opts;
  opts.search.max_sidon_q = parse_u64(max_q_text, "--max-q");
  opts.on_stage = [](const urb::t2::Stage& s, const std::vector<urb::Integer>& ladder) {
    logger().info("stage " + std::to_string(s.index) + ": |A|=" + std::to_string(s.set.size()) +
                  " a*=" + urb::to_decimal(s.a_star) + " x=" + urb::to_decimal(ladder.back()));
  };
  const urb::t2::BuildResult r = urb::t2::build(rounds, eps, opts);

  std::cout << std::setw(6) << "index" << std::setw(8) << "|A|" << std::setw(24) << "a*" << std::setw(24) << "x"
            << std::setw(12) << "A(-x,x)/sqrt(x)" << '\n';
  for (const auto& s : r.stages) {
    if (s.index % 2 == 0) continue;
    const urb::Integer& x = r.x_ladder[static_cast<std::size_t>(s.index / 2)];
    const double ratio = static_cast<double>(urb::counting(s.set, -x, x)) / std::sqrt(urb::to_double(x));
    std::cout << std::setw(6) << s.index << std::setw(8) << s.set.size() << std::setw(24) << urb::to_decimal(s.a_star)
              << std::setw(24) << urb::to_decimal(x) << std::setw(12) << ratio_str(ratio) << '\n';
  }

  if (!out.empty()) {
    Manifest m{"construct t2", {{"rounds", rounds_text}, {"epsilon", eps.str()}, {"max_q", max_q_text}}, "", {}};
    write_artifact(out, urb::io::to_json(r), m);
  }
  return kPass;
}

// verify -----------------------------------------------------------------

int run_verify(const std::string& input, const std::string& upto_text, bool sidon_flag) {
  const Loaded in = load_input(input);
  bool ok = true;
  json report;
  report["input"] = input;
  report["size"] = in.set.size();
  if (!upto_text.empty()) {
    const urb::Integer h = urb::parse_integer(upto_text);
    if (h < 0) throw urb::InvalidArgument("--unique-up-to must be nonnegative");
    const urb::BasisReport b = urb::is_unique_basis_prefix(in.set, h);
    json j;
    j["pass"] = b.pass;
    if (!b.pass) {
      ok = false;
      const auto& c = *b.counterexample;
      j["failure"] = b.failure == urb::BasisReport::Failure::repeated_sum ? "repeated_sum" : "missing_sum";
      j["n"] = urb::to_decimal(c.n);
      j["r"] = c.count;
      json w = json::array();
      for (const auto& [x, y] : c.witnesses) w.push_back({urb::to_decimal(x), urb::to_decimal(y)});
      j["witnesses"] = w;
    }
    report["unique_up_to"] = {{"H", upto_text}, {"result", j}};
  }
  if (sidon_flag || upto_text.empty()) {
    const urb::SidonCheck s = urb::is_sidon(in.set);
    json j;
    j["pass"] = s.sidon;
    if (!s.sidon) {
      ok = false;
      const auto& v = *s.violation;
      j["n"] = urb::to_decimal(v[0] + v[1]);
      j["witnesses"] = {{urb::to_decimal(v[0]), urb::to_decimal(v[1])}, {urb::to_decimal(v[2]), urb::to_decimal(v[3])}};
    }
    report["sidon"] = j;
  }
  report["pass"] = ok;
  std::cout << report.dump(1) << '\n';
  return ok ? kPass : kMathFail;
}

// sidon ------------------------------------------------------------------

int run_sidon(const std::string& method, const std::string& param_text, const std::string& target_text,
              const std::string& out) {
  const std::uint64_t param = parse_u64(param_text, "--param");
  urb::sidon::SidonResult r;
  if (method == "bose") {
    if (!urb::is_prime(param)) throw urb::InvalidArgument("--param " + param_text + " is not prime");
    if (param > 65521) throw urb::InvalidArgument("--param too large for bose (limit 65521)");
    r = urb::sidon::bose_chowla(param);
  } else if (method == "erdos-turan") {
    if (!urb::is_prime(param)) throw urb::InvalidArgument("--param " + param_text + " is not prime");
    if (param > 65521) throw urb::InvalidArgument("--param too large for erdos-turan (limit 65521)");
    r = urb::sidon::erdos_turan(param);
  } else if (method == "greedy") {
    if (param > 5000) throw urb::InvalidArgument("--param too large for greedy (limit 5000)");
    r = urb::sidon::mian_chowla(param);
  } else if (method == "interval") {
    if (param > (std::uint64_t{1} << 32)) throw urb::InvalidArgument("--param too large for interval (limit 2^32)");
    const double target = target_text.empty() ? 0.0 : urb::parse_rational(target_text).to_double();
    r = urb::sidon::sidon_in_interval(param, target);
  } else {
    throw urb::InvalidArgument("unknown --method " + method);
  }
  const json j = urb::io::to_json(r);
  logger().info(std::string(urb::sidon::method_name(r.method)) + ": " + std::to_string(r.cardinality) +
                " elements in [0, " + std::to_string(r.n_bound) + ")");
  if (out.empty()) {
    std::cout << j.dump(1) << '\n';
  } else {
    Manifest m{"sidon", {{"method", method}, {"param", param_text}}, "", {}};
    if (!target_text.empty()) m.parameters["target"] = target_text;
    write_artifact(out, j, m);
  }
  return kPass;
}

// analyze ----------------------------------------------------------------

int run_blocks(const std::string& input, const std::string& n_text, const std::string& delta_text,
               const std::string& format, const std::string& out) {
  const Loaded in = load_analysis_input(input);
  const std::uint64_t n = parse_u64(n_text, "--n");
  const urb::analysis::BlockProfile p = urb::analysis::block_counts(in.set, n);
  if (p.short_coverage) logger().warn("input does not reach n^2; outer blocks may be undercounted");
  const urb::analysis::InequalityReport r = urb::analysis::check_block_inequalities(p);
  json j = urb::io::to_json(p, r);
  j["block_differences_distinct"] = urb::analysis::block_differences_distinct(in.set, n);
  j["cross_block_sums_distinct"] = urb::analysis::cross_block_sums_distinct(in.set, n);
  const double delta = urb::parse_rational(delta_text).to_double();
  std::optional<double> probe;
  if (n >= 2) {
    probe = urb::analysis::liminf_probe(in.set, n);
    j["liminf_probe"] = {{"value", *probe},
                         {"constant", urb::analysis::probe_constant()},
                         {"delta", delta_text},
                         {"below", *probe < urb::analysis::probe_constant() + delta},
                         {"label", "finite-prefix surrogate"}};
  }

  if (format == "text") {
    std::cout << std::left << std::setw(14) << "inequality" << std::right << std::setw(16) << "lhs" << std::setw(16)
              << "rhs" << std::setw(6) << "ok" << '\n';
    for (const auto& c : r.checks) {
      std::cout << std::left << std::setw(14) << c.name << std::right << std::setw(16) << urb::to_decimal(c.lhs)
                << std::setw(16) << urb::to_decimal(c.rhs) << std::setw(6) << (c.pass ? "yes" : "NO") << '\n';
    }
    std::cout << "cauchy-schwarz " << ratio_str(r.cs_lhs) << " <= " << ratio_str(r.cs_middle) << " (bound "
              << ratio_str(r.cs_rhs) << ")" << (r.cs_consistent ? "" : " INCONSISTENT") << '\n';
    if (probe) {
      std::cout << "liminf probe (finite-prefix surrogate) " << ratio_str(*probe) << " vs 4*sqrt(7) + " << delta_text
                << " = " << ratio_str(urb::analysis::probe_constant() + delta) << '\n';
    }
  } else {
    std::cout << j.dump(1) << '\n';
  }
  if (!out.empty()) {
    Manifest m{"analyze blocks", {{"n", n_text}, {"delta", delta_text}}, in.digest, {}};
    write_artifact(out, j, m);
  }
  return r.all_pass() ? kPass : kMathFail;
}

std::vector<urb::Integer> parse_grid(const std::string& spec) {
  // log:x0:x1:steps
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4 || parts[0] != "log") throw urb::InvalidArgument("--grid must be log:x0:x1:steps");
  const urb::Integer lo = urb::parse_integer(parts[1]);
  const urb::Integer hi = urb::parse_integer(parts[2]);
  const std::uint64_t steps = parse_u64(parts[3], "grid steps");
  if (steps < 1 || steps > 100000) throw urb::InvalidArgument("grid steps must lie in [1, 100000]");
  return urb::t1::log_grid(lo, hi, steps);
}

int run_growth(const std::string& input, const std::string& grid_text, const std::string& probe_text,
               const std::string& format, const std::string& csv, const std::string& out) {
  const Loaded in = load_analysis_input(input);
  const std::vector<urb::Integer> grid = parse_grid(grid_text);
  std::optional<std::uint64_t> probe_n;
  if (!probe_text.empty()) probe_n = parse_u64(probe_text, "--probe-n");
  const urb::analysis::GrowthReport r = urb::analysis::growth_report(in.set, grid, probe_n);
  std::size_t beyond = 0;
  for (const auto& s : r.samples) beyond += s.beyond_prefix ? 1 : 0;
  if (beyond > 0) logger().warn(std::to_string(beyond) + " grid points lie beyond max |a|");
  const std::optional<urb::Integer> violation = urb::analysis::nathanson_violation(in.set);
  json j = urb::io::to_json(r);
  j["sqrt_8x_violation"] = urb::io::optional_json(violation);

  if (format == "text") {
    std::cout << std::setw(22) << "x" << std::setw(10) << "count" << std::setw(12) << "c/x^1/3" << std::setw(12)
              << "c/x^1/2" << std::setw(12) << "slack" << '\n';
    for (const auto& s : r.samples) {
      std::cout << std::setw(22) << urb::to_decimal(s.x) << std::setw(10) << s.count << std::setw(12)
                << ratio_str(s.cube_root_ratio) << std::setw(12) << ratio_str(s.sqrt_ratio) << std::setw(12)
                << ratio_str(s.nathanson_slack) << '\n';
    }
    std::cout << "cA estimate " << ratio_str(r.ca_estimate) << '\n';
    if (r.liminf_probe) std::cout << "liminf probe (finite-prefix surrogate) " << ratio_str(*r.liminf_probe) << '\n';
  } else {
    std::cout << j.dump(1) << '\n';
  }
  if (!csv.empty()) {
    std::ostringstream c;
    c << "x,count,count_over_cbrt_x,count_over_sqrt_x,sqrt_8x_slack\n";
    c << std::setprecision(10);
    for (const auto& s : r.samples) {
      c << urb::to_decimal(s.x) << ',' << s.count << ',' << s.cube_root_ratio << ',' << s.sqrt_ratio << ','
        << s.nathanson_slack << '\n';
    }
    urb::io::write_file(csv, c.str());
  }
  if (!out.empty()) {
    Manifest m{"analyze growth", {{"grid", grid_text}}, in.digest, {}};
    if (probe_n) m.parameters["probe_n"] = probe_text;
    write_artifact(out, j, m);
  }
  return violation ? kMathFail : kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unique representation bases: construction, verification and analysis"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* construct = app.add_subcommand("construct", "Build a basis prefix");
  construct->require_subcommand(1);
  std::string stages, grid_points = "200", out_t1;
  auto* t1 = construct->add_subcommand("t1", "Cube-root density construction");
  t1->add_option("--stages", stages, "Number of stages H")->required();
  t1->add_option("--grid-points", grid_points, "Log grid size for locating x0");
  t1->add_option("--out", out_t1, "Output JSON file");

  std::string rounds, epsilon, max_q = "4096", out_t2;
  auto* t2 = construct->add_subcommand("t2", "Square-root density construction");
  t2->add_option("--rounds", rounds, "Number of rounds")->required();
  t2->add_option("--epsilon", epsilon, "Density loss P/Q")->required();
  t2->add_option("--max-q", max_q, "Largest Bose-Chowla prime to use");
  t2->add_option("--out", out_t2, "Output JSON file");

  std::string verify_input, upto;
  bool sidon_flag = false;
  auto* verify = app.add_subcommand("verify", "Check a set against the definitions");
  verify->add_option("--input", verify_input, "Set file (JSON or text)")->required();
  verify->add_option("--unique-up-to", upto, "Require r(n) = 1 for |n| <= H and r <= 1 everywhere");
  verify->add_flag("--sidon", sidon_flag, "Require all pair sums distinct");

  std::string method, param, target, sidon_out;
  auto* sidon = app.add_subcommand("sidon", "Generate a Sidon set");
  sidon->add_option("--method", method, "bose | erdos-turan | greedy | interval")
      ->required()
      ->check(CLI::IsMember({"bose", "erdos-turan", "greedy", "interval"}));
  sidon->add_option("--param", param, "Prime q, prime p, term count, or interval length")->required();
  sidon->add_option("--target", target, "Required density for interval, e.g. 0.85");
  sidon->add_option("--out", sidon_out, "Output JSON file");

  auto* analyze = app.add_subcommand("analyze", "Block and growth statistics");
  analyze->require_subcommand(1);
  std::string blocks_input, n_text, delta = "0.42", blocks_format = "json", blocks_out;
  auto* blocks = analyze->add_subcommand("blocks", "Block counts and inequalities");
  blocks->add_option("--input", blocks_input, "Set file")->required();
  blocks->add_option("--n", n_text, "Block size")->required();
  blocks->add_option("--delta", delta, "Probe tolerance added to 4*sqrt(7)");
  blocks->add_option("--format", blocks_format, "json | text")->check(CLI::IsMember({"json", "text"}));
  blocks->add_option("--out", blocks_out, "Output JSON file");

  std::string growth_input, grid, probe_n, growth_format = "json", csv, growth_out;
  auto* growth = analyze->add_subcommand("growth", "Counting-function samples");
  growth->add_option("--input", growth_input, "Set file")->required();
  growth->add_option("--grid", grid, "log:x0:x1:steps")->required();
  growth->add_option("--probe-n", probe_n, "Block size for the liminf probe");
  growth->add_option("--format", growth_format, "json | text")->check(CLI::IsMember({"json", "text"}));
  growth->add_option("--csv", csv, "CSV file of samples");
  growth->add_option("--out", growth_out, "Output JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (t1->parsed()) return run_construct_t1(stages, grid_points, out_t1);
    if (t2->parsed()) return run_construct_t2(rounds, epsilon, max_q, out_t2);
    if (verify->parsed()) return run_verify(verify_input, upto, sidon_flag);
    if (sidon->parsed()) return run_sidon(method, param, target, sidon_out);
    if (blocks->parsed()) return run_blocks(blocks_input, n_text, delta, blocks_format, blocks_out);
    if (growth->parsed()) return run_growth(growth_input, grid, probe_n, growth_format, csv, growth_out);
  } catch (const urb::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const urb::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kInternal;
  } catch (const urb::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
