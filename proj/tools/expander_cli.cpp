// Command-line entry point: graph generation, walk products, Cayley builds,
// spectral reports, code assembly, channel simulation, iteration traces, and
// manifest-driven reproduction. Every artifact-writing run emits a manifest
// at <out>.manifest.json; `repro <manifest>` re-executes the recorded
// parameters into a temp directory and byte-compares the outputs.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "expander/cayley.hpp"
#include "expander/error.hpp"
#include "expander/gldpc.hpp"
#include "expander/iterate.hpp"
#include "expander/linear_code.hpp"
#include "expander/products.hpp"
#include "expander/random_graphs.hpp"
#include "expander/rng.hpp"
#include "expander/rotation_graph.hpp"
#include "expander/serialize.hpp"
#include "expander/simulate.hpp"
#include "expander/spectral.hpp"

namespace {

using expander::AnyGraph;
using expander::BipartiteGraph;
using expander::Errc;
using expander::Error;
using expander::RotationGraph;
using ojson = nlohmann::ordered_json;

constexpr const char* kToolVersion = "0.1.0";

// ---------- small parsers ----------

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string::npos ? pos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::bad_input, "not a number: '" + s + "'");
  }
}

// Accepts plain integers and the shorthand "2^k".
std::uint64_t parse_count(const std::string& s) {
  try {
    if (s.rfind("2^", 0) == 0) {
      const unsigned long k = std::stoul(s.substr(2));
      if (k >= 64) throw std::out_of_range(s);
      return std::uint64_t(1) << k;
    }
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(Errc::bad_input, "not a count: '" + s + "' (use digits or 2^k)");
  }
}

// "start:step:stop" inclusive, or a comma-separated list.
std::vector<double> parse_snr(const std::string& s) {
  if (s.empty()) throw Error(Errc::bad_input, "no SNR points (use --snr a:step:b or a,b,c)");
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw Error(Errc::bad_input, "range form is start:step:stop");
    const double start = parse_double(parts[0]);
    const double step = parse_double(parts[1]);
    const double stop = parse_double(parts[2]);
    if (step <= 0) throw Error(Errc::bad_input, "SNR step must be positive");
    for (double x = start; x <= stop + step * 1e-9; x += step) out.push_back(x);
  } else {
    for (const auto& part : split(s, ',')) out.push_back(parse_double(part));
  }
  if (out.empty()) throw Error(Errc::bad_input, "empty SNR range");
  return out;
}

std::vector<std::uint64_t> parse_hex_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  if (s.empty()) return out;
  for (auto part : split(s, ',')) {
    if (part.rfind("0x", 0) == 0 || part.rfind("0X", 0) == 0) part = part.substr(2);
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(part, &used, 16));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(Errc::bad_input, "not a hex bitstring: '" + part + "'");
    }
  }
  return out;
}

expander::ProductKind parse_product_kind(const std::string& s) {
  if (s == "zigzag" || s == "zz") return expander::ProductKind::zigzag;
  if (s == "replacement" || s == "rep") return expander::ProductKind::replacement;
  if (s == "zb" || s == "zigzag-bipartite") return expander::ProductKind::zigzag_bipartite;
  if (s == "zm" || s == "zigzag-modified") return expander::ProductKind::zigzag_modified;
  throw Error(Errc::bad_input, "unknown product kind '" + s + "' (zigzag|replacement|zb|zm)");
}

expander::CayleyFamily parse_cayley_family(const std::string& s) {
  if (s == "shift") return expander::CayleyFamily::shift;
  if (s == "mobius") return expander::CayleyFamily::mobius;
  throw Error(Errc::bad_input, "unknown family '" + s + "' (shift|mobius)");
}

expander::SpectralMethod parse_method(const std::string& s) {
  if (s == "auto") return expander::SpectralMethod::automatic;
  if (s == "dense") return expander::SpectralMethod::dense;
  if (s == "power") return expander::SpectralMethod::power_iteration;
  throw Error(Errc::bad_input, "unknown method '" + s + "' (auto|dense|power)");
}

expander::IterFamily parse_iter_family(const std::string& s) {
  if (s == "zz") return expander::IterFamily::zigzag_original;
  if (s == "zzm") return expander::IterFamily::zigzag_modified;
  if (s == "rep") return expander::IterFamily::replacement;
  throw Error(Errc::bad_input, "unknown family '" + s + "' (zz|zzm|rep)");
}

std::string ensure_newline(std::string s) {
  if (s.empty() || s.back() != '\n') s.push_back('\n');
  return s;
}

const RotationGraph& as_rotation(const AnyGraph& g, const std::string& path) {
  if (!std::holds_alternative<RotationGraph>(g)) {
    throw Error(Errc::bad_input, "'" + path + "' holds a bipartite graph; a rotation graph is required");
  }
  return std::get<RotationGraph>(g);
}

const BipartiteGraph& as_bipartite(const AnyGraph& g, const std::string& path) {
  if (!std::holds_alternative<BipartiteGraph>(g)) {
    throw Error(Errc::bad_input, "'" + path + "' holds a rotation graph; a bipartite graph is required");
  }
  return std::get<BipartiteGraph>(g);
}

// ---------- config merge ----------

// JSON config mirrors the long flag names (without dashes prefix); values
// given on the command line win over the file.
class CfgMerge {
 public:
  CfgMerge(const CLI::App* cmd, const std::string& config_path) : cmd_(cmd) {
    if (config_path.empty()) return;
    try {
      cfg_ = nlohmann::json::parse(expander::read_text_file(config_path));
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::bad_input, std::string("config parse failure: ") + e.what());
    }
    if (!cfg_.is_object()) throw Error(Errc::bad_input, "config must be a JSON object");
  }

  template <class T>
  void field(const std::string& flag, T& var) const {
    if (!cfg_.is_object() || !cfg_.contains(flag)) return;
    if (cmd_->count("--" + flag) > 0) return;
    try {
      var = cfg_.at(flag).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::bad_input, "config field '" + flag + "': " + e.what());
    }
  }

 private:
  const CLI::App* cmd_;
  nlohmann::json cfg_;
};

// ---------- execution from a resolved parameter set ----------
// Each exec_* consumes the fully resolved parameters and returns the list of
// files it wrote, in a fixed order. `repro` replays the same functions with
// the output prefix redirected, so artifact content must depend on the
// parameter values alone.

RotationGraph cycle_edges(std::uint64_t n, std::uint64_t seed) {
  if (n < 3) throw Error(Errc::bad_input, "cycle needs n >= 3");
  expander::EdgeList el;
  el.kind = expander::EdgeListKind::undirected;
  el.n = n;
  for (std::uint64_t i = 0; i < n; ++i) el.edges.push_back({i, (i + 1) % n});
  el.m = el.edges.size();
  return RotationGraph::from_edge_list(el, seed);
}

RotationGraph complete_edges(std::uint64_t n, std::uint64_t seed) {
  if (n < 2) throw Error(Errc::bad_input, "complete graph needs n >= 2");
  expander::EdgeList el;
  el.kind = expander::EdgeListKind::undirected;
  el.n = n;
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = i + 1; j < n; ++j) el.edges.push_back({i, j});
  el.m = el.edges.size();
  return RotationGraph::from_edge_list(el, seed);
}

std::vector<std::string> exec_graph(const ojson& p) {
  const std::string family = p.at("family");
  const std::string out = p.at("out");
  const std::uint64_t seed = p.at("seed");
  std::vector<std::string> artifacts;
  AnyGraph g = RotationGraph(0, 0, {});
  if (family == "random-regular") {
    g = expander::random_regular(p.at("n"), p.at("d").get<std::uint32_t>(), seed);
  } else if (family == "random-biregular") {
    g = expander::random_biregular(p.at("n"), p.at("m"), p.at("c").get<std::uint32_t>(),
                                   p.at("d").get<std::uint32_t>(), seed);
  } else if (family == "cycle") {
    g = cycle_edges(p.at("n"), seed);
  } else if (family == "complete") {
    g = complete_edges(p.at("n"), seed);
  } else {
    throw Error(Errc::unknown_family,
                "graph family '" + family + "' (random-regular|random-biregular|cycle|complete)");
  }
  std::visit([&](const auto& gr) { expander::write_graph(gr, out); }, g);
  artifacts.push_back(out);
  if (p.at("dot").get<bool>()) {
    const std::string dot_path = out + ".dot";
    std::visit([&](const auto& gr) {
      expander::write_text_file(dot_path, ensure_newline(expander::to_dot(gr)));
    }, g);
    artifacts.push_back(dot_path);
  }
  return artifacts;
}

std::vector<std::string> exec_product(const ojson& p) {
  const auto kind = parse_product_kind(p.at("kind"));
  const std::string g1_path = p.at("g1");
  const std::string g2_path = p.at("g2");
  const std::string out = p.at("out");
  const std::uint64_t seed = p.at("seed");
  const bool certify = p.at("certify");
  const AnyGraph a = expander::read_graph(g1_path);
  const AnyGraph b = expander::read_graph(g2_path);
  std::vector<std::string> artifacts;
  std::string cert_json;
  AnyGraph prod = RotationGraph(0, 0, {});
  if (kind == expander::ProductKind::zigzag || kind == expander::ProductKind::replacement) {
    const auto& g1 = as_rotation(a, g1_path);
    const auto& g2 = as_rotation(b, g2_path);
    const RotationGraph pr =
        kind == expander::ProductKind::zigzag ? expander::zigzag(g1, g2)
                                              : expander::replacement(g1, g2);
    if (certify) cert_json = expander::verify_product(pr, g1, g2, kind, seed).to_json();
    prod = pr;
  } else {
    const auto& g1 = as_bipartite(a, g1_path);
    const auto& g2 = as_bipartite(b, g2_path);
    const BipartiteGraph pr = kind == expander::ProductKind::zigzag_bipartite
                                  ? expander::zigzag_bipartite(g1, g2)
                                  : expander::zigzag_modified(g1, g2);
    if (certify) cert_json = expander::verify_product(pr, g1, g2, kind, seed).to_json();
    prod = pr;
  }
  std::visit([&](const auto& gr) { expander::write_graph(gr, out); }, prod);
  artifacts.push_back(out);
  if (certify) {
    const std::string cert_path = out + ".cert.json";
    expander::write_text_file(cert_path, ensure_newline(cert_json));
    artifacts.push_back(cert_path);
  }
  if (p.at("dot").get<bool>()) {
    const std::string dot_path = out + ".dot";
    std::visit([&](const auto& gr) {
      expander::write_text_file(dot_path, ensure_newline(expander::to_dot(gr)));
    }, prod);
    artifacts.push_back(dot_path);
  }
  return artifacts;
}

std::vector<std::string> exec_cayley(const ojson& p) {
  expander::CayleySpec spec;
  spec.family = parse_cayley_family(p.at("family"));
  spec.p = p.at("p").get<std::uint32_t>();
  spec.k = p.at("k").get<std::uint32_t>();
  spec.product_kind = parse_product_kind(p.at("product"));
  spec.seed = p.at("seed");
  spec.reps = parse_hex_list(p.at("reps"));
  const std::string out = p.at("out");
  const auto build = expander::build_cayley(spec);
  if (build.graph) {
    expander::write_graph(*build.graph, out);
  } else {
    expander::write_graph(*build.cover, out);
  }
  ojson meta;
  meta["family"] = expander::cayley_family_name(spec.family);
  meta["p"] = spec.p;
  meta["k"] = spec.k;
  meta["product"] = expander::product_kind_name(spec.product_kind);
  meta["seed"] = spec.seed;
  std::vector<std::string> reps_hex;
  for (const auto r : build.spec.reps) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%llx", static_cast<unsigned long long>(r));
    reps_hex.emplace_back(buf);
  }
  meta["reps"] = reps_hex;
  meta["group_size"] = build.group_size;
  meta["degree"] = build.degree;
  meta["symmetric"] = build.gens.symmetric;
  meta["symmetrized"] = build.gens.symmetrized;
  meta["two_generates"] = build.two_generates;
  meta["bipartite_cover"] = build.cover.has_value();
  const std::string meta_path = out + ".meta.json";
  expander::write_text_file(meta_path, meta.dump(2) + "\n");
  return {out, meta_path};
}

std::vector<std::string> exec_spectral(const ojson& p) {
  const std::string in = p.at("in");
  const std::string out = p.at("out");
  const auto method = parse_method(p.at("method"));
  const std::uint64_t seed = p.at("seed");
  const AnyGraph g = expander::read_graph(in);
  const auto report = std::visit(
      [&](const auto& gr) { return expander::measure_spectrum(gr, method, seed); }, g);
  expander::write_text_file(out, ensure_newline(report.to_json()));
  std::cout << "spectral: lambda2=" << report.lambda2 << " sigma2=" << report.sigma2
            << " method=" << report.method << "\n";
  return {out};
}

expander::GldpcCode assemble_example_4_3(std::uint64_t seed) {
  const auto g1 = expander::random_biregular(20, 12, 6, 10, expander::Rng::derive(seed, 1));
  const auto g2 = expander::random_biregular(10, 6, 3, 5, expander::Rng::derive(seed, 2));
  const auto zb = expander::zigzag_bipartite(g1, g2);
  return expander::assemble_two_sided(zb, expander::repeated_hamming_code(3, 9),
                                      expander::repeated_hamming_code(4, 25));
}

std::vector<std::string> exec_code(const ojson& p) {
  const std::string example = p.at("example");
  const std::string out = p.at("out");
  const std::uint64_t seed = p.at("seed");
  expander::GldpcCode code;
  if (example == "4.3") {
    code = assemble_example_4_3(seed);
  } else if (!example.empty()) {
    throw Error(Errc::bad_input, "unknown example '" + example + "' (supported: 4.3)");
  } else {
    const std::string graph_path = p.at("graph");
    if (graph_path.empty()) throw Error(Errc::bad_input, "need --graph or --example");
    const std::string sub1 = p.at("subcode");
    const std::string sub2 = p.at("subcode2");
    if (sub1.empty()) throw Error(Errc::bad_input, "need --subcode (library key like 20-15)");
    const AnyGraph g = expander::read_graph(graph_path);
    if (std::holds_alternative<RotationGraph>(g)) {
      const auto& gr = std::get<RotationGraph>(g);
      code = sub2.empty()
                 ? expander::assemble_uniform(gr, expander::subcode_library(sub1))
                 : expander::assemble_alternating(gr, expander::subcode_library(sub1),
                                                  expander::subcode_library(sub2));
    } else {
      const auto& gb = std::get<BipartiteGraph>(g);
      const std::string right = sub2.empty() ? sub1 : sub2;
      code = expander::assemble_two_sided(gb, expander::subcode_library(sub1),
                                          expander::subcode_library(right));
    }
  }
  const std::string code_path = out + ".gldpc.json";
  const std::string alist_path = out + ".alist";
  const std::string meta_path = out + ".meta.json";
  expander::write_gldpc(code, code_path);
  expander::write_alist(code, alist_path);
  ojson meta;
  meta["n_bits"] = code.n_bits;
  meta["num_checks"] = code.num_checks;
  meta["num_vertices"] = code.num_vertices();
  meta["bipartite"] = code.bipartite;
  meta["design_rate"] = code.design_rate();
  meta["design_rate_num"] = code.rate_num;
  meta["design_rate_den"] = code.rate_den;
  if (code.n_bits <= expander::GldpcCode::kDenseBits) {
    meta["true_rate"] = expander::true_rate(code);
  } else {
    meta["true_rate"] = nullptr;
  }
  ojson subs = ojson::array();
  for (const auto& c : code.codes) {
    ojson s;
    s["name"] = c.name;
    s["n"] = c.n;
    s["k"] = c.k;
    subs.push_back(s);
  }
  meta["subcodes"] = subs;
  expander::write_text_file(meta_path, meta.dump(2) + "\n");
  std::cout << "code: " << code.n_bits << " bits, " << code.num_checks
            << " checks, design rate " << code.design_rate() << "\n";
  return {code_path, alist_path, meta_path};
}

std::vector<std::string> exec_sim(const ojson& p) {
  std::string code_path = p.at("code");
  if (!std::filesystem::exists(code_path) &&
      std::filesystem::exists(code_path + ".gldpc.json")) {
    code_path += ".gldpc.json";
  }
  const auto code = expander::read_gldpc(code_path);
  expander::SimConfig cfg;
  cfg.snr_db = p.at("snr").get<std::vector<double>>();
  cfg.max_frames = p.at("max-frames");
  cfg.max_errors = p.at("max-errors");
  cfg.max_iterations = p.at("iters").get<std::uint32_t>();
  cfg.seed = p.at("seed");
  cfg.early_stop = p.at("early-stop");
  cfg.workers = p.at("workers").get<std::uint32_t>();
  const std::string out = p.at("out");
  const auto points = expander::simulate(code, cfg);
  expander::write_ber_csv(out, points);
  for (const auto& pt : points) {
    std::cout << "sim: snr=" << pt.snr_db << " frames=" << pt.frames << " ber=" << pt.ber
              << " fer=" << pt.fer << "\n";
  }
  return {out};
}

std::vector<std::string> exec_iterate(const ojson& p) {
  const auto family = parse_iter_family(p.at("family"));
  const std::uint64_t seed = p.at("seed");
  expander::IterateOptions opt;
  opt.levels = p.at("levels").get<std::uint32_t>();
  opt.vertex_budget = p.at("budget");
  opt.measure = p.at("measure");
  opt.measure_budget = p.at("measure-budget");
  opt.seed = seed;
  const std::string out = p.at("out");
  expander::IterationTrace trace;
  if (family == expander::IterFamily::zigzag_original) {
    const std::uint64_t D = p.at("degree");
    if (D < 2) throw Error(Errc::bad_input, "seed degree must be >= 2");
    const auto h = expander::random_regular(D * D * D * D, std::uint32_t(D),
                                            expander::Rng::derive(seed, 1));
    trace = expander::iterate_zigzag(h, opt);
  } else if (family == expander::IterFamily::zigzag_modified) {
    const std::uint64_t c2 = p.at("c2");
    const std::uint64_t d2 = p.at("d2");
    if (c2 < 2 || d2 < 2) throw Error(Errc::bad_input, "component degrees must be >= 2");
    const std::uint64_t nl = c2 * c2 * c2 * c2 * d2 * d2 * d2 * d2 * d2;
    const std::uint64_t nr = c2 * c2 * c2 * c2 * c2 * d2 * d2 * d2 * d2;
    const auto h = expander::random_biregular(nl, nr, std::uint32_t(c2), std::uint32_t(d2),
                                              expander::Rng::derive(seed, 1));
    trace = expander::iterate_zigzag_modified(h, opt);
  } else {
    const std::uint64_t d = p.at("d");
    const std::uint64_t n1 = p.at("n1");
    if (d < 2) throw Error(Errc::bad_input, "cloud degree must be >= 2");
    const std::uint64_t nh = (d + 1) * (d + 1) * (d + 1) * (d + 1);
    const auto h =
        expander::random_regular(nh, std::uint32_t(d), expander::Rng::derive(seed, 1));
    const auto g1 =
        expander::random_regular(n1, std::uint32_t(d + 1), expander::Rng::derive(seed, 2));
    trace = expander::iterate_replacement(g1, h, opt);
  }
  expander::write_text_file(out, ensure_newline(trace.to_json()));
  const auto& last = trace.levels.back();
  std::cout << "iterate: " << trace.levels.size() << " levels, final bound "
            << last.lambda_bound << ", preconditions "
            << (trace.preconditions_hold ? "hold" : "do not hold") << "\n";
  return {out};
}

std::vector<std::string> dispatch(const std::string& command, const ojson& params) {
  if (command == "graph") return exec_graph(params);
  if (command == "product") return exec_product(params);
  if (command == "cayley") return exec_cayley(params);
  if (command == "spectral") return exec_spectral(params);
  if (command == "code") return exec_code(params);
  if (command == "sim") return exec_sim(params);
  if (command == "iterate") return exec_iterate(params);
  throw Error(Errc::bad_input, "manifest names unknown command '" + command + "'");
}

void write_manifest(const std::string& command, const ojson& params,
                    const std::vector<std::string>& artifacts, double wall_seconds) {
  ojson m;
  m["command"] = command;
  m["params"] = params;
  ojson seeds = ojson::array();
  if (params.contains("seed")) seeds.push_back(params.at("seed"));
  m["seeds"] = seeds;
  m["artifacts"] = artifacts;
  m["tool_version"] = kToolVersion;
  m["wall_clock_seconds"] = wall_seconds;
  const std::string path = params.at("out").get<std::string>() + ".manifest.json";
  expander::write_text_file(path, m.dump(2) + "\n");
  std::cout << "manifest: " << path << "\n";
}

int exec_repro(const std::string& manifest_path) {
  ojson manifest;
  try {
    manifest = ojson::parse(expander::read_text_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::io_error, std::string("manifest parse failure: ") + e.what());
  }
  if (!manifest.contains("command") || !manifest.contains("params") ||
      !manifest.contains("artifacts")) {
    throw Error(Errc::bad_input, "manifest lacks command/params/artifacts");
  }
  const std::string command = manifest.at("command");
  ojson params = manifest.at("params");
  const auto recorded = manifest.at("artifacts").get<std::vector<std::string>>();
  const std::string orig_out = params.at("out");

  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  const auto dir = std::filesystem::temp_directory_path() /
                   ("expander-repro-" + std::to_string(stamp));
  std::filesystem::create_directories(dir);
  params["out"] = (dir / std::filesystem::path(orig_out).filename()).string();

  std::vector<std::string> fresh;
  try {
    fresh = dispatch(command, params);
  } catch (...) {
    std::filesystem::remove_all(dir);
    throw;
  }

  int rc = 0;
  if (fresh.size() != recorded.size()) {
    std::cerr << "repro: artifact count changed (" << recorded.size() << " recorded, "
              << fresh.size() << " reproduced)\n";
    rc = 1;
  } else {
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      const std::string old_bytes = expander::read_text_file(recorded[i]);
      const std::string new_bytes = expander::read_text_file(fresh[i]);
      if (old_bytes == new_bytes) {
        std::cout << "identical: " << recorded[i] << "\n";
      } else {
        std::cerr << "DIFFERS: " << recorded[i] << "\n";
        rc = 1;
      }
    }
  }
  std::filesystem::remove_all(dir);
  if (rc == 0) std::cout << "repro OK: " << recorded.size() << " artifacts byte-identical\n";
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"expander graph product and code workbench"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  // graph
  auto* graph_cmd = app.add_subcommand("graph", "generate a component graph");
  struct {
    std::string family = "random-regular";
    std::uint64_t n = 16, m = 0;
    std::uint32_t d = 4, c = 0;
    std::uint64_t seed = 1;
    std::string out = "graph.json";
    bool dot = false;
    std::string config;
  } G;
  graph_cmd->add_option("--family", G.family, "random-regular|random-biregular|cycle|complete");
  graph_cmd->add_option("--n", G.n, "vertex count (left side for biregular)");
  graph_cmd->add_option("--m", G.m, "right side count (biregular)");
  graph_cmd->add_option("--d", G.d, "degree (right degree for biregular)");
  graph_cmd->add_option("--c", G.c, "left degree (biregular)");
  graph_cmd->add_option("--seed", G.seed, "rng seed");
  graph_cmd->add_option("--out", G.out, "output graph json");
  graph_cmd->add_flag("--dot", G.dot, "also write <out>.dot");
  graph_cmd->add_option("--config", G.config, "JSON config mirroring the flags; flags win");

  // product
  auto* product_cmd = app.add_subcommand("product", "compose two graphs");
  struct {
    std::string kind = "zigzag";
    std::string g1, g2;
    std::uint64_t seed = 1;
    std::string out = "product.json";
    bool certify = false;
    bool dot = false;
    std::string config;
  } P;
  product_cmd->add_option("--kind", P.kind, "zigzag|replacement|zb|zm");
  product_cmd->add_option("--g1", P.g1, "first component graph json");
  product_cmd->add_option("--g2", P.g2, "second component graph json");
  product_cmd->add_option("--seed", P.seed, "seed for certificate measurement");
  product_cmd->add_option("--out", P.out, "output graph json");
  product_cmd->add_flag("--certify", P.certify, "write <out>.cert.json with measured bounds");
  product_cmd->add_flag("--dot", P.dot, "also write <out>.dot");
  product_cmd->add_option("--config", P.config, "JSON config mirroring the flags; flags win");

  // cayley
  auto* cayley_cmd = app.add_subcommand("cayley", "build a Cayley product graph");
  struct {
    std::string family = "shift";
    std::uint32_t p = 5, k = 2;
    std::string product = "zigzag";
    std::uint64_t seed = 1;
    std::string reps;
    std::string out = "cayley.json";
    std::string config;
  } C;
  cayley_cmd->add_option("--family", C.family, "shift|mobius");
  cayley_cmd->add_option("--p", C.p, "prime parameter");
  cayley_cmd->add_option("--k", C.k, "number of coordinate representatives");
  cayley_cmd->add_option("--product", C.product, "zigzag|replacement generating set");
  cayley_cmd->add_option("--seed", C.seed, "rng seed for drawing representatives");
  cayley_cmd->add_option("--reps", C.reps, "comma-separated hex bitmasks overriding the draw");
  cayley_cmd->add_option("--out", C.out, "output graph json (+ <out>.meta.json)");
  cayley_cmd->add_option("--config", C.config, "JSON config mirroring the flags; flags win");

  // spectral
  auto* spectral_cmd = app.add_subcommand("spectral", "measure second eigenvalue");
  struct {
    std::string in;
    std::string method = "auto";
    std::uint64_t seed = 1;
    std::string out = "spectral.json";
    std::string config;
  } S;
  spectral_cmd->add_option("--in", S.in, "input graph json");
  spectral_cmd->add_option("--method", S.method, "auto|dense|power");
  spectral_cmd->add_option("--seed", S.seed, "power iteration start seed");
  spectral_cmd->add_option("--out", S.out, "output report json");
  spectral_cmd->add_option("--config", S.config, "JSON config mirroring the flags; flags win");

  // code
  auto* code_cmd = app.add_subcommand("code", "assemble a generalized LDPC code");
  struct {
    std::string example;
    std::string graph;
    std::string subcode, subcode2;
    std::uint64_t seed = 1;
    std::string out = "code";
    std::string config;
  } K;
  code_cmd->add_option("--example", K.example, "named construction (4.3)");
  code_cmd->add_option("--graph", K.graph, "product graph json carrying the bits on its edges");
  code_cmd->add_option("--subcode", K.subcode, "library key n-k (uniform / left side)");
  code_cmd->add_option("--subcode2", K.subcode2, "second key (alternating / right side)");
  code_cmd->add_option("--seed", K.seed, "seed for example component draws");
  code_cmd->add_option("--out", K.out, "output prefix (.gldpc.json, .alist, .meta.json)");
  code_cmd->add_option("--config", K.config, "JSON config mirroring the flags; flags win");

  // sim
  auto* sim_cmd = app.add_subcommand("sim", "AWGN BPSK sum-product simulation");
  struct {
    std::string code;
    std::string snr;
    std::uint64_t max_frames = 1000, max_errors = 0;
    std::uint32_t iters = 50;
    std::uint64_t seed = 1;
    std::uint32_t workers = 0;
    bool no_early_stop = false;
    std::string out = "results.csv";
    std::string config;
  } M;
  sim_cmd->add_option("--code", M.code, "gldpc json path or code output prefix");
  sim_cmd->add_option("--snr", M.snr, "Eb/N0 dB points: start:step:stop or comma list");
  sim_cmd->add_option("--max-frames", M.max_frames, "frame cap per point");
  sim_cmd->add_option("--max-errors", M.max_errors, "stop a point after this many frame errors");
  sim_cmd->add_option("--iters", M.iters, "decoder iteration cap");
  sim_cmd->add_option("--seed", M.seed, "noise seed");
  sim_cmd->add_option("--workers", M.workers, "worker threads (0 = all cores)");
  sim_cmd->add_flag("--no-early-stop", M.no_early_stop, "run all decoder iterations");
  sim_cmd->add_option("--out", M.out, "output csv");
  sim_cmd->add_option("--config", M.config, "JSON config mirroring the flags; flags win");

  // iterate
  auto* iterate_cmd = app.add_subcommand("iterate", "grow an iterated expander family");
  struct {
    std::string family = "zz";
    std::uint32_t levels = 2;
    std::string budget = "2^20";
    std::string measure_budget = "2^16";
    bool no_measure = false;
    std::uint64_t seed = 1;
    std::uint64_t degree = 4;
    std::uint64_t c2 = 2, d2 = 2;
    std::uint64_t d = 6, n1 = 8;
    std::string out = "trace.json";
    std::string config;
  } I;
  iterate_cmd->add_option("--family", I.family, "zz|zzm|rep");
  iterate_cmd->add_option("--levels", I.levels, "levels to trace");
  iterate_cmd->add_option("--budget", I.budget, "construction vertex budget (digits or 2^k)");
  iterate_cmd->add_option("--measure-budget", I.measure_budget,
                          "spectral measurement vertex cap (digits or 2^k)");
  iterate_cmd->add_flag("--no-measure", I.no_measure, "trace bounds only");
  iterate_cmd->add_option("--seed", I.seed, "seed graph rng");
  iterate_cmd->add_option("--degree", I.degree, "zz: seed graph degree D (graph on D^4)");
  iterate_cmd->add_option("--c2", I.c2, "zzm: left component degree");
  iterate_cmd->add_option("--d2", I.d2, "zzm: right component degree");
  iterate_cmd->add_option("--d", I.d, "rep: cloud degree (component on (d+1)^4)");
  iterate_cmd->add_option("--n1", I.n1, "rep: base graph vertices (degree d+1)");
  iterate_cmd->add_option("--out", I.out, "output trace json");
  iterate_cmd->add_option("--config", I.config, "JSON config mirroring the flags; flags win");

  // repro
  auto* repro_cmd = app.add_subcommand("repro", "re-run a manifest and byte-compare outputs");
  std::string manifest_path;
  repro_cmd->add_option("manifest", manifest_path, "path to a .manifest.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::string command;
    ojson params;
    if (graph_cmd->parsed()) {
      CfgMerge cfg(graph_cmd, G.config);
      cfg.field("family", G.family);
      cfg.field("n", G.n);
      cfg.field("m", G.m);
      cfg.field("d", G.d);
      cfg.field("c", G.c);
      cfg.field("seed", G.seed);
      cfg.field("out", G.out);
      cfg.field("dot", G.dot);
      command = "graph";
      params = {{"family", G.family}, {"n", G.n},     {"m", G.m},   {"d", G.d},
                {"c", G.c},           {"seed", G.seed}, {"out", G.out}, {"dot", G.dot}};
    } else if (product_cmd->parsed()) {
      CfgMerge cfg(product_cmd, P.config);
      cfg.field("kind", P.kind);
      cfg.field("g1", P.g1);
      cfg.field("g2", P.g2);
      cfg.field("seed", P.seed);
      cfg.field("out", P.out);
      cfg.field("certify", P.certify);
      cfg.field("dot", P.dot);
      if (P.g1.empty() || P.g2.empty()) throw Error(Errc::bad_input, "need --g1 and --g2");
      command = "product";
      params = {{"kind", P.kind}, {"g1", P.g1},   {"g2", P.g2},        {"seed", P.seed},
                {"out", P.out},   {"certify", P.certify}, {"dot", P.dot}};
    } else if (cayley_cmd->parsed()) {
      CfgMerge cfg(cayley_cmd, C.config);
      cfg.field("family", C.family);
      cfg.field("p", C.p);
      cfg.field("k", C.k);
      cfg.field("product", C.product);
      cfg.field("seed", C.seed);
      cfg.field("reps", C.reps);
      cfg.field("out", C.out);
      command = "cayley";
      params = {{"family", C.family}, {"p", C.p},     {"k", C.k},   {"product", C.product},
                {"seed", C.seed},     {"reps", C.reps}, {"out", C.out}};
    } else if (spectral_cmd->parsed()) {
      CfgMerge cfg(spectral_cmd, S.config);
      cfg.field("in", S.in);
      cfg.field("method", S.method);
      cfg.field("seed", S.seed);
      cfg.field("out", S.out);
      if (S.in.empty()) throw Error(Errc::bad_input, "need --in");
      command = "spectral";
      params = {{"in", S.in}, {"method", S.method}, {"seed", S.seed}, {"out", S.out}};
    } else if (code_cmd->parsed()) {
      CfgMerge cfg(code_cmd, K.config);
      cfg.field("example", K.example);
      cfg.field("graph", K.graph);
      cfg.field("subcode", K.subcode);
      cfg.field("subcode2", K.subcode2);
      cfg.field("seed", K.seed);
      cfg.field("out", K.out);
      command = "code";
      params = {{"example", K.example}, {"graph", K.graph}, {"subcode", K.subcode},
                {"subcode2", K.subcode2}, {"seed", K.seed},   {"out", K.out}};
    } else if (sim_cmd->parsed()) {
      CfgMerge cfg(sim_cmd, M.config);
      cfg.field("code", M.code);
      cfg.field("snr", M.snr);
      cfg.field("max-frames", M.max_frames);
      cfg.field("max-errors", M.max_errors);
      cfg.field("iters", M.iters);
      cfg.field("seed", M.seed);
      cfg.field("workers", M.workers);
      cfg.field("no-early-stop", M.no_early_stop);
      cfg.field("out", M.out);
      if (M.code.empty()) throw Error(Errc::bad_input, "need --code");
      const std::uint32_t workers =
          M.workers > 0 ? M.workers
                        : std::max(1u, std::thread::hardware_concurrency());
      command = "sim";
      params = {{"code", M.code},
                {"snr", parse_snr(M.snr)},
                {"max-frames", M.max_frames},
                {"max-errors", M.max_errors},
                {"iters", M.iters},
                {"seed", M.seed},
                {"workers", workers},
                {"early-stop", !M.no_early_stop},
                {"out", M.out}};
    } else if (iterate_cmd->parsed()) {
      CfgMerge cfg(iterate_cmd, I.config);
      cfg.field("family", I.family);
      cfg.field("levels", I.levels);
      cfg.field("budget", I.budget);
      cfg.field("measure-budget", I.measure_budget);
      cfg.field("no-measure", I.no_measure);
      cfg.field("seed", I.seed);
      cfg.field("degree", I.degree);
      cfg.field("c2", I.c2);
      cfg.field("d2", I.d2);
      cfg.field("d", I.d);
      cfg.field("n1", I.n1);
      cfg.field("out", I.out);
      command = "iterate";
      params = {{"family", I.family},
                {"levels", I.levels},
                {"budget", parse_count(I.budget)},
                {"measure-budget", parse_count(I.measure_budget)},
                {"measure", !I.no_measure},
                {"seed", I.seed},
                {"degree", I.degree},
                {"c2", I.c2},
                {"d2", I.d2},
                {"d", I.d},
                {"n1", I.n1},
                {"out", I.out}};
    } else if (repro_cmd->parsed()) {
      return exec_repro(manifest_path);
    }

    const auto t0 = std::chrono::steady_clock::now();
    const auto artifacts = dispatch(command, params);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& a : artifacts) std::cout << "wrote: " << a << "\n";
    write_manifest(command, params, artifacts, wall);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
