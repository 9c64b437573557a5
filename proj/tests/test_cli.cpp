// End-to-end tests for the command-line tool. The binary path comes in via
// the TFGM_BIN environment variable; each test runs it against a private
// temp directory and inspects exit codes and emitted files.

#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "tfgm/io.hpp"
#include "tfgm/reconstruct.hpp"
#include "tfgm/signal.hpp"
#include "tfgm/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("tfgm-cli-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp_or_empty(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("TFGM_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "TFGM_BIN must point at the binary");
  TempDir scratch;
  const std::string out_file = scratch.file("stdout");
  const std::string err_file = scratch.file("stderr");
  const std::string cmd = std::string(bin) + " " + args + " > " + out_file +
                          " 2> " + err_file;
  const int status = std::system(cmd.c_str());
  RunResult r;
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  r.out = slurp_or_empty(out_file);
  r.err = slurp_or_empty(err_file);
  return r;
}

std::vector<std::string> dir_entries(const fs::path& dir) {
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    names.push_back(entry.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("synth writes a cosine tone with sidecar metadata") {
  TempDir dir;
  const std::string prefix = dir.file("sig");
  const RunResult r =
      run_cli("synth --tone f=0.1 --n 64 --out " + prefix);
  REQUIRE(r.exit_code == 0);

  const tfgm::Signal x = tfgm::read_signal_csv(prefix + ".csv");
  REQUIRE(x.size() == 64);
  for (std::size_t n = 0; n < x.size(); ++n) {
    CHECK(x.samples[n] ==
          doctest::Approx(std::cos(2.0 * M_PI * 0.1 * double(n)))
              .epsilon(1e-12));
  }

  CHECK(fs::exists(prefix + ".wav"));
  const tfgm::Signal w = tfgm::read_signal_wav(prefix + ".wav");
  CHECK(w.size() == x.size());

  const json meta = json::parse(tfgm::read_file(prefix + ".json"));
  CHECK(meta.at("n").get<std::size_t>() == 64);
  CHECK(meta.at("snr_db").get<std::string>() == "inf");
  for (const auto& [path, crc] : meta.at("files").items()) {
    CHECK(tfgm::file_crc32(path) == crc.get<std::string>());
  }
}

TEST_CASE("synth scenario output is seed deterministic") {
  TempDir dir;
  const std::string base =
      "synth --scenario hermite-chirp --snr 20 ";
  REQUIRE(run_cli(base + "--seed 7 --out " + dir.file("a")).exit_code == 0);
  REQUIRE(run_cli(base + "--seed 7 --out " + dir.file("b")).exit_code == 0);
  REQUIRE(run_cli(base + "--seed 8 --out " + dir.file("c")).exit_code == 0);

  const std::string a = tfgm::read_file(dir.file("a.csv"));
  const std::string b = tfgm::read_file(dir.file("b.csv"));
  const std::string c = tfgm::read_file(dir.file("c.csv"));
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("synth --component isolates one part of the mixture") {
  TempDir dir;
  const std::string prefix = dir.file("h");
  const RunResult r = run_cli(
      "synth --scenario hermite-chirp --component 1 --out " + prefix);
  REQUIRE(r.exit_code == 0);

  const tfgm::Signal got = tfgm::read_signal_csv(prefix + ".csv");
  const tfgm::Signal want =
      tfgm::normalize_energy(tfgm::gen_hermite(20, 512.0, 24.0, 1024));
  REQUIRE(got.size() == want.size());
  for (std::size_t n = 0; n < got.size(); ++n) {
    CHECK(got.samples[n] == want.samples[n]);
  }
}

TEST_CASE("extract separates a clean tone into one component") {
  TempDir dir;
  tfgm::Signal x = tfgm::gen_linear_chirp(1024, 0.1, 0.1);
  x.name = "tone";
  const std::string input = dir.file("tone.csv");
  tfgm::write_signal_csv(input, x);

  const std::string out = dir.file("run");
  const RunResult r =
      run_cli("extract " + input + " --method A --out " + out);
  REQUIRE(r.exit_code == 0);

  int component_files = 0;
  for (const std::string& name : dir_entries(out)) {
    if (name.rfind("component-", 0) == 0 && name.size() >= 4 &&
        name.substr(name.size() - 4) == ".csv" &&
        name.find("mask") == std::string::npos) {
      ++component_files;
    }
  }
  CHECK(component_files == 1);

  const tfgm::Signal est =
      tfgm::read_signal_csv((fs::path(out) / "component-00.csv").string());
  CHECK(tfgm::rel_error(x, est) < 0.01);

  CHECK(fs::exists(fs::path(out) / "component-00.wav"));
  CHECK(fs::exists(fs::path(out) / "component-00-mask.pbm"));
  CHECK(fs::exists(fs::path(out) / "component-00-mask.csv"));
  CHECK(fs::exists(fs::path(out) / "representation.pgm"));
  CHECK(fs::exists(fs::path(out) / "representation.csv"));
  CHECK(fs::exists(fs::path(out) / "components.csv"));

  const json diag =
      json::parse(tfgm::read_file((fs::path(out) / "diagnostics.json").string()));
  CHECK(diag.at("criterion").get<std::string>() == "product");
  CHECK(diag.at("target").get<std::string>() == "stft-modulus");
  CHECK(diag.at("components_selected").get<int>() == 1);

  // The manifest names every artifact in the directory (except itself)
  // with a checksum that matches the file on disk.
  const json manifest =
      json::parse(tfgm::read_file((fs::path(out) / "manifest.json").string()));
  CHECK(manifest.at("method").get<std::string>() == "A");
  std::vector<std::string> listed;
  for (const json& entry : manifest.at("artifacts")) {
    const std::string name = entry.at("path").get<std::string>();
    listed.push_back(name);
    CHECK(tfgm::file_crc32((fs::path(out) / name).string()) ==
          entry.at("crc32").get<std::string>());
  }
  std::sort(listed.begin(), listed.end());
  listed.push_back("manifest.json");
  std::sort(listed.begin(), listed.end());
  CHECK(listed == dir_entries(out));
}

TEST_CASE("extract reruns reproduce the manifest byte for byte") {
  TempDir dir;
  tfgm::Signal x = tfgm::gen_linear_chirp(512, 0.2, 0.3);
  const std::string input = dir.file("chirp.csv");
  tfgm::write_signal_csv(input, x);
  const std::string out = dir.file("run");

  REQUIRE(run_cli("extract " + input + " --method B --out " + out)
              .exit_code == 0);
  const std::string first =
      tfgm::read_file((fs::path(out) / "manifest.json").string());
  REQUIRE(run_cli("extract " + input + " --method B --out " + out)
              .exit_code == 0);
  const std::string second =
      tfgm::read_file((fs::path(out) / "manifest.json").string());
  CHECK(first == second);
}

TEST_CASE("bad inputs exit with code 2") {
  TempDir dir;

  SUBCASE("empty input file") {
    const std::string input = dir.file("empty.csv");
    std::ofstream(input).close();
    CHECK(run_cli("extract " + input + " --out " + dir.file("o")).exit_code ==
          2);
  }
  SUBCASE("missing input file") {
    CHECK(run_cli("extract " + dir.file("absent.csv") + " --out " +
                  dir.file("o"))
              .exit_code == 2);
  }
  SUBCASE("unknown scenario name") {
    CHECK(run_cli("synth --scenario warble --out " + dir.file("s"))
              .exit_code == 2);
  }
  SUBCASE("generator parameter is not a number") {
    CHECK(run_cli("synth --tone f=abc --out " + dir.file("s")).exit_code ==
          2);
  }
  SUBCASE("no generator and no scenario") {
    CHECK(run_cli("synth --out " + dir.file("s")).exit_code == 2);
  }
  SUBCASE("unknown flag") {
    CHECK(run_cli("extract --frobnicate").exit_code == 2);
  }
}

TEST_CASE("bad configurations exit with code 3") {
  TempDir dir;
  tfgm::Signal x = tfgm::gen_linear_chirp(256, 0.1, 0.1);
  const std::string input = dir.file("in.csv");
  tfgm::write_signal_csv(input, x);

  SUBCASE("malformed config JSON") {
    tfgm::atomic_write(dir.file("bad.json"), "{not json");
    CHECK(run_cli("extract " + input + " --config " + dir.file("bad.json") +
                  " --out " + dir.file("o"))
              .exit_code == 3);
  }
  SUBCASE("unknown method letter") {
    CHECK(run_cli("extract " + input + " --method Z --out " + dir.file("o"))
              .exit_code == 3);
  }
  SUBCASE("custom method without a config") {
    CHECK(
        run_cli("extract " + input + " --method custom --out " + dir.file("o"))
            .exit_code == 3);
  }
  SUBCASE("unknown letter in bench --methods") {
    CHECK(run_cli("bench --scenario hermite-chirp --methods A,Q --out " +
                  dir.file("o"))
              .exit_code == 3);
  }
  SUBCASE("threshold target contradicts the representation") {
    // Start from a valid dumped config, then point the threshold at the
    // wrong representation's modulus.
    const RunResult dumped = run_cli("extract --method D --dump-config");
    REQUIRE(dumped.exit_code == 0);
    json cfg = json::parse(dumped.out);
    cfg["name"] = "custom";
    cfg["representation"] = "stft";
    tfgm::atomic_write(dir.file("mismatch.json"), cfg.dump());
    CHECK(run_cli("extract " + input + " --config " +
                  dir.file("mismatch.json") + " --out " + dir.file("o"))
              .exit_code == 3);
  }
}

TEST_CASE("bench emits a full grid and is seed reproducible") {
  TempDir dir;
  const std::string base =
      "bench --scenario hermite-chirp --snr inf,20 --realizations 2 "
      "--seed 3 ";

  REQUIRE(run_cli(base + "--methods A --out " + dir.file("d1")).exit_code ==
          0);
  const std::string results =
      tfgm::read_file(dir.file("d1") + "/results.csv");
  // header + methods(1) x snr(2) x realizations(2) x components(2)
  CHECK(std::count(results.begin(), results.end(), '\n') == 1 + 8);
  CHECK(results.rfind("scenario,method,snr_db,realization,component,"
                      "rel_error,component_count\n",
                      0) == 0);
  CHECK(fs::exists(dir.file("d1") + "/summary.csv"));
  CHECK(!fs::exists(dir.file("d1") + "/timings.csv"));

  REQUIRE(run_cli(base + "--methods A --out " + dir.file("d2")).exit_code ==
          0);
  CHECK(tfgm::read_file(dir.file("d2") + "/results.csv") == results);

  REQUIRE(run_cli(base + "--methods A,B --out " + dir.file("d3")).exit_code ==
          0);
  const std::string both = tfgm::read_file(dir.file("d3") + "/results.csv");
  CHECK(std::count(both.begin(), both.end(), '\n') == 1 + 16);

  REQUIRE(run_cli(base + "--methods A --timings --out " + dir.file("d4"))
              .exit_code == 0);
  CHECK(fs::exists(dir.file("d4") + "/timings.csv"));
}

TEST_CASE("dump-config prints machine-readable defaults") {
  const RunResult extract_dump = run_cli("extract --dump-config");
  REQUIRE(extract_dump.exit_code == 0);
  const json cfg = json::parse(extract_dump.out);
  CHECK(cfg.at("name").get<std::string>() == "A");

  const RunResult synth_dump = run_cli("synth --dump-config");
  REQUIRE(synth_dump.exit_code == 0);
  const json catalog = json::parse(synth_dump.out);
  CHECK(catalog.at("scenarios").size() == 3);

  const RunResult bench_dump = run_cli("bench --dump-config");
  REQUIRE(bench_dump.exit_code == 0);
  CHECK(json::parse(bench_dump.out) == catalog);
}

TEST_CASE("version and help exit cleanly") {
  CHECK(run_cli("--version").exit_code == 0);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("synth --help").exit_code == 0);
}

}  // TEST_SUITE
