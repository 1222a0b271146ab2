#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "expander/cayley.hpp"
#include "expander/gldpc.hpp"
#include "expander/serialize.hpp"

using namespace expander;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs the installed binary with stderr folded into stdout.
RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("EXPANDER_BIN");
  REQUIRE(bin != nullptr);
  const std::string cmd = std::string(bin) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path work_dir() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("expander-cli-" + std::to_string(getpid()));
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string wpath(const std::string& name) { return (work_dir() / name).string(); }

std::string slurp(const std::string& path) { return read_text_file(path); }

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("graph --no-such-flag 3").exit_code == 2);
  const auto version = run_cli("--version");
  CHECK(version.exit_code == 0);
  CHECK(version.output.find("0.1.0") != std::string::npos);
}

TEST_CASE("domain errors exit 1") {
  CHECK(run_cli("spectral --in " + wpath("missing.json") + " --out " + wpath("r.json"))
            .exit_code == 1);
  CHECK(run_cli("code --example 9.9 --out " + wpath("bad")).exit_code == 1);
  CHECK(run_cli("graph --family random-regular --n 5 --d 3 --seed 1 --out " +
                wpath("odd.json"))
            .exit_code == 1);  // odd dart count
}

TEST_CASE("graph generation writes graph, manifest, and dot") {
  const auto out = wpath("g16.json");
  const auto r = run_cli("graph --family random-regular --n 16 --d 4 --seed 7 --out " + out +
                         " --dot");
  REQUIRE(r.exit_code == 0);
  const auto g = read_graph(out);
  REQUIRE(std::holds_alternative<RotationGraph>(g));
  const auto& gr = std::get<RotationGraph>(g);
  CHECK(gr.num_vertices() == 16);
  CHECK(gr.degree() == 4);
  CHECK(std::filesystem::exists(out + ".dot"));
  const auto manifest = nlohmann::json::parse(slurp(out + ".manifest.json"));
  CHECK(manifest.at("command") == "graph");
  CHECK(manifest.at("params").at("seed") == 7);
  CHECK(manifest.at("artifacts").size() == 2);
  CHECK(manifest.at("tool_version") == "0.1.0");
  CHECK(manifest.contains("seeds"));
  CHECK(manifest.contains("wall_clock_seconds"));

  // identical rerun: byte-stable primary output
  const auto first = slurp(out);
  REQUIRE(run_cli("graph --family random-regular --n 16 --d 4 --seed 7 --out " + out +
                  " --dot")
              .exit_code == 0);
  CHECK(slurp(out) == first);
}

TEST_CASE("config file mirrors flags and flags override") {
  const auto cfg = wpath("graph.cfg.json");
  write_text_file(cfg, "{\"n\": 10, \"d\": 4, \"seed\": 3}\n");
  const auto out = wpath("gcfg.json");
  // --d on the command line beats the config's 4; n comes from the config.
  const auto r = run_cli("graph --family random-regular --config " + cfg + " --d 2 --out " + out);
  REQUIRE(r.exit_code == 0);
  const auto gv = read_graph(out);
  const auto& gr = std::get<RotationGraph>(gv);
  CHECK(gr.num_vertices() == 10);
  CHECK(gr.degree() == 2);
  const auto manifest = nlohmann::json::parse(slurp(out + ".manifest.json"));
  CHECK(manifest.at("params").at("n") == 10);
  CHECK(manifest.at("params").at("d") == 2);
  CHECK(manifest.at("params").at("seed") == 3);
}

TEST_CASE("product with certificate") {
  const auto g1 = wpath("pg1.json");
  const auto g2 = wpath("pg2.json");
  REQUIRE(run_cli("graph --family random-regular --n 16 --d 4 --seed 5 --out " + g1)
              .exit_code == 0);
  REQUIRE(run_cli("graph --family cycle --n 4 --seed 6 --out " + g2).exit_code == 0);
  const auto out = wpath("zz.json");
  const auto r = run_cli("product --kind zigzag --g1 " + g1 + " --g2 " + g2 +
                         " --certify --out " + out);
  REQUIRE(r.exit_code == 0);
  const auto pv = read_graph(out);
  const auto& prod = std::get<RotationGraph>(pv);
  CHECK(prod.num_vertices() == 64);
  CHECK(prod.degree() == 4);
  const auto cert = nlohmann::json::parse(slurp(out + ".cert.json"));
  CHECK(cert.at("product_kind") == "zigzag");
  CHECK(cert.at("measured_lambda").get<double>() <= cert.at("bound").get<double>() + 1e-6);

  // mismatched input representation is a domain error
  CHECK(run_cli("product --kind zb --g1 " + g1 + " --g2 " + g2 + " --out " +
                wpath("zbad.json"))
            .exit_code == 1);
}

TEST_CASE("cayley build with explicit reps matches library fixture") {
  const auto reps = fixture_reps(CayleyFamily::shift, 5, 5, ProductKind::zigzag);
  std::string hex;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(reps[i]));
    hex += (i ? "," : "") + std::string(buf);
  }
  const auto out = wpath("cay.json");
  const auto r = run_cli("cayley --family shift --p 5 --k 5 --product zigzag --reps " + hex +
                         " --out " + out);
  REQUIRE(r.exit_code == 0);
  const auto meta = nlohmann::json::parse(slurp(out + ".meta.json"));
  CHECK(meta.at("group_size") == 160);
  CHECK(meta.at("degree") == 20);
  CHECK(meta.at("two_generates") == true);
  const auto gv = read_graph(out);
  const auto& gr = std::get<RotationGraph>(gv);
  CHECK(gr.num_vertices() == 160);
  CHECK(gr.degree() == 20);

  const auto spec_out = wpath("cay.spec.json");
  REQUIRE(run_cli("spectral --in " + out + " --out " + spec_out).exit_code == 0);
  const auto report = nlohmann::json::parse(slurp(spec_out));
  CHECK(report.at("lambda2").get<double>() < 1.0);
  CHECK(report.at("method") == "dense");
}

TEST_CASE("code example 4.3 metadata") {
  const auto out = wpath("ex43");
  const auto r = run_cli("code --example 4.3 --seed 5 --out " + out);
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("1800 bits") != std::string::npos);
  const auto meta = nlohmann::json::parse(slurp(out + ".meta.json"));
  CHECK(meta.at("n_bits") == 1800);
  CHECK(meta.at("design_rate").get<double>() == doctest::Approx(0.50667).epsilon(1e-4));
  const auto code = read_gldpc(out + ".gldpc.json");
  CHECK(code.n_bits == 1800);
  CHECK(code.num_checks == 888);
  std::ifstream alist(out + ".alist");
  std::uint64_t n = 0, m = 0;
  alist >> n >> m;
  CHECK(n == 1800);
  CHECK(m == 888);
}

TEST_CASE("end-to-end pipeline: cayley to code to sim, repro validates") {
  const auto cay = wpath("pipe_cay.json");
  const auto reps = fixture_reps(CayleyFamily::shift, 5, 5, ProductKind::zigzag);
  std::string hex;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(reps[i]));
    hex += (i ? "," : "") + std::string(buf);
  }
  REQUIRE(run_cli("cayley --family shift --p 5 --k 5 --product zigzag --reps " + hex +
                  " --out " + cay)
              .exit_code == 0);
  const auto code_prefix = wpath("pipe_code");
  REQUIRE(run_cli("code --graph " + cay + " --subcode 20-15 --out " + code_prefix)
              .exit_code == 0);
  const auto meta = nlohmann::json::parse(slurp(code_prefix + ".meta.json"));
  CHECK(meta.at("n_bits") == 1600);
  CHECK(meta.at("design_rate").get<double>() >= 0.5);

  const auto csv = wpath("pipe_ber.csv");
  REQUIRE(run_cli("sim --code " + code_prefix + " --snr 4 --max-frames 48 --seed 3 "
                  "--workers 2 --out " + csv)
              .exit_code == 0);
  const auto text = slurp(csv);
  CHECK(text.rfind("snr_db,frames,bit_errors,frame_errors,ber,fer,avg_iterations\n", 0) == 0);

  const auto repro = run_cli("repro " + csv + ".manifest.json");
  CHECK(repro.exit_code == 0);
  CHECK(repro.output.find("repro OK") != std::string::npos);
}

TEST_CASE("sim output is worker-count independent through the CLI") {
  const auto prefix = wpath("wc_code");
  REQUIRE(run_cli("code --example 4.3 --seed 9 --out " + prefix).exit_code == 0);
  const auto csv1 = wpath("wc1.csv");
  const auto csv4 = wpath("wc4.csv");
  REQUIRE(run_cli("sim --code " + prefix + " --snr 3 --max-frames 24 --seed 17 --workers 1 "
                  "--out " + csv1)
              .exit_code == 0);
  REQUIRE(run_cli("sim --code " + prefix + " --snr 3 --max-frames 24 --seed 17 --workers 4 "
                  "--out " + csv4)
              .exit_code == 0);
  CHECK(slurp(csv1) == slurp(csv4));
}

TEST_CASE("repro detects a tampered artifact") {
  const auto out = wpath("tamper.json");
  REQUIRE(run_cli("graph --family cycle --n 8 --seed 2 --out " + out).exit_code == 0);
  REQUIRE(run_cli("repro " + out + ".manifest.json").exit_code == 0);
  auto bytes = slurp(out);
  bytes[bytes.find("\"rot\"") + 1] = 'R';
  write_text_file(out, bytes);
  const auto r = run_cli("repro " + out + ".manifest.json");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("DIFFERS") != std::string::npos);
}

TEST_CASE("iterate trace via CLI with analytic tail") {
  const auto out = wpath("trace.json");
  const auto r = run_cli("iterate --family zz --levels 2 --degree 4 --budget 2^12 "
                         "--measure-budget 2^9 --seed 4 --out " + out);
  REQUIRE(r.exit_code == 0);
  const auto trace = nlohmann::json::parse(slurp(out));
  CHECK(trace.at("family") == "zigzag_original");
  REQUIRE(trace.at("levels").size() == 2);
  CHECK(trace.at("levels")[0].at("n_left") == 256);
  CHECK(trace.at("levels")[0].at("constructed") == true);
  CHECK(trace.at("levels")[1].at("n_left") == 65536);
  CHECK(trace.at("levels")[1].at("constructed") == false);
  CHECK(run_cli("repro " + out + ".manifest.json").exit_code == 0);
}
