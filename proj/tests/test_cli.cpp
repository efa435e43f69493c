#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "qcorr_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const fs::path out = scratch_dir() / ("out" + std::to_string(counter));
  const fs::path err = scratch_dir() / ("err" + std::to_string(counter));
  ++counter;
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += std::string(QCORR_CLI_PATH) + " " + args + " > " + out.string() +
         " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) fields.push_back(item);
  return fields;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("measure subcommand") {
  SECTION("spot values in JSON") {
    const RunResult r = run_cli("measure --c 1,-0.6,0.6");
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("\"D\": 0.27807190511263769") != std::string::npos);
    REQUIRE(r.out.find("\"Trace1\": 0.59999999999999998") != std::string::npos);
    REQUIRE(r.out.find("\"Fidelity\": 0.19999999999999996") !=
            std::string::npos);
    REQUIRE(r.out.find("\"physical\": true") != std::string::npos);
  }
  SECTION("maximally mixed state gives all zeros") {
    const RunResult r = run_cli("measure --c 0,0,0 --format csv");
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines[0] == "measure,value,identity_group,via_identity");
    REQUIRE(lines.size() == 10);
    for (std::size_t i = 1; i < lines.size(); ++i)
      REQUIRE(csv_fields(lines[i])[1] == "0");
  }
  SECTION("unphysical input exits 2 naming the eigenvalue") {
    const RunResult r = run_cli("measure --c 0.9,0.9,0");
    REQUIRE(r.code == 2);
    REQUIRE(r.err.find("lambda_11") != std::string::npos);
  }
  SECTION("malformed input exits 2") {
    REQUIRE(run_cli("measure --c 1,2").code == 2);
    REQUIRE(run_cli("measure --c a,b,c").code == 2);
    REQUIRE(run_cli("measure").code == 2);
  }
}

TEST_CASE("evolve subcommand") {
  SECTION("freezing run: frozen then exponential trace-distance discord") {
    const RunResult r =
        run_cli("evolve --freezing 3,0.6,1 --gamma 1 --t 0:1:0.01 "
                "--measures Trace1");
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines[0].rfind("# qcorr evolve", 0) == 0);
    REQUIRE(lines[1].find("tstar=0.25541281188299536") != std::string::npos);
    REQUIRE(lines[2] == "t,c1,c2,c3,Trace1,pred_Trace1");
    // t = 0.1 is row index 13 (two comments + header + 10 samples)
    const auto frozen = csv_fields(lines[13]);
    REQUIRE(std::stod(frozen[4]) == 0.6);
    // t = 0.5 -> e^{-1}
    const auto decayed = csv_fields(lines[53]);
    REQUIRE(std::stod(decayed[4]) == Catch::Approx(std::exp(-1.0)).margin(1e-15));
  }
  SECTION("detected threshold for gamma = 0.5") {
    const RunResult r =
        run_cli("evolve --freezing 1,0.3,2 --gamma 0.5 --t 0:3:0.1 "
                "--measures D1");
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("tstar=1.2039728043259361") != std::string::npos);
  }
  SECTION("maximally mixed input stays zero") {
    const RunResult r =
        run_cli("evolve --c 0,0,0 --k 3 --gamma 1 --t 0:1:0.5 --measures D");
    REQUIRE(r.code == 0);
    for (const auto& line : lines_of(r.out)) {
      if (line.empty() || line[0] == '#' || line[0] == 't') continue;
      REQUIRE(csv_fields(line)[4] == "0");
    }
  }
  SECTION("kernel file input") {
    const fs::path kernel = scratch_dir() / "kernel.csv";
    std::ofstream(kernel) << "t,Lambda\n0,0\n1,1\n2,0.2\n3,1.2\n";
    const RunResult r =
        run_cli("evolve --freezing 3,0.6,1 --kernel " + kernel.string() +
                " --t 0:3:0.5 --measures Trace1");
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("tstar=0.51082562376599072;1.6114679702925114;"
                       "2.3108256237659908") != std::string::npos);
  }
  SECTION("malformed kernel exits 2") {
    const fs::path bad = scratch_dir() / "bad_kernel.csv";
    std::ofstream(bad) << "t,Lambda\n0,0.5\n1,1\n";  // Lambda(0) != 0
    REQUIRE(run_cli("evolve --freezing 3,0.6,1 --kernel " + bad.string() +
                    " --t 0:1:0.5").code == 2);
    const fs::path garbled = scratch_dir() / "garbled.csv";
    std::ofstream(garbled) << "t,Lambda\n0,0\nnot-a-number,1\n";
    REQUIRE(run_cli("evolve --freezing 3,0.6,1 --kernel " + garbled.string() +
                    " --t 0:1:0.5").code == 2);
  }
  SECTION("time grid outside the kernel range exits 2") {
    const fs::path kernel = scratch_dir() / "short_kernel.csv";
    std::ofstream(kernel) << "t,Lambda\n0,0\n1,1\n";
    REQUIRE(run_cli("evolve --freezing 3,0.6,1 --kernel " + kernel.string() +
                    " --t 0:2:0.5").code == 2);
  }
  SECTION("--c without --k exits 2") {
    REQUIRE(run_cli("evolve --c 0,0,0 --gamma 1 --t 0:1:0.5").code == 2);
  }
  SECTION("byte-identical reruns") {
    const fs::path a = scratch_dir() / "run_a.csv";
    const fs::path b = scratch_dir() / "run_b.csv";
    REQUIRE(run_cli("evolve --freezing 3,0.6,1 --gamma 1 --t 0:1:0.01 --out " +
                    a.string()).code == 0);
    REQUIRE(run_cli("evolve --freezing 3,0.6,1 --gamma 1 --t 0:1:0.01 --out " +
                    b.string()).code == 0);
    REQUIRE(slurp(a) == slurp(b));
    REQUIRE(!slurp(a).empty());
  }
}

TEST_CASE("contour subcommand") {
  const std::string prefix = (scratch_dir() / "slice").string();
  SECTION("grid files with the NA mask and exact sub-square values") {
    const RunResult r = run_cli("contour --k 3 --ck 0.25 --n 21 --measure D1 "
                                "--out " + prefix);
    REQUIRE(r.code == 0);
    const std::string grid = slurp(prefix + ".Trace1.csv");
    REQUIRE(!grid.empty());
    const auto lines = lines_of(grid);
    REQUIRE(lines.size() == 22);
    REQUIRE(lines[0].rfind("c2\\c1", 0) == 0);
    REQUIRE(grid.find("NA") != std::string::npos);  // corners are unphysical
    // centre row: c2 = 0 at index 10; the cell at c1 = coords[11] inside the
    // sub-square must equal max(|c1|, |c2|) = c1 exactly
    const auto header = csv_fields(lines[0]);
    const auto row = csv_fields(lines[11]);
    REQUIRE(row[0] == "0");
    REQUIRE(row[12] == header[12]);
  }
  SECTION("overlay file for the slice channel") {
    const RunResult r = run_cli(
        "contour --k 3 --ck 0.25 --n 21 --measure AdjGeo --overlay --out " +
        prefix);
    REQUIRE(r.code == 0);
    const auto lines = lines_of(slurp(prefix + ".overlay.csv"));
    REQUIRE(lines[0] == "variant,t,c1,c2");
    REQUIRE(lines.size() == 1 + 4 * 301);
    // variant 1 starts at (1, -0.25)
    const auto first = csv_fields(lines[1]);
    REQUIRE(first[0] == "1");
    REQUIRE(std::stod(first[2]) == 1.0);
    REQUIRE(std::stod(first[3]) == -0.25);
  }
  SECTION("invalid slice exits 2") {
    REQUIRE(run_cli("contour --k 3 --ck 1.1 --n 21 --out " + prefix).code == 2);
    REQUIRE(run_cli("contour --k 3 --ck 0.25 --n 4 --out " + prefix).code == 2);
  }
}

TEST_CASE("verify subcommand") {
  SECTION("identity suite passes") {
    const RunResult r = run_cli("verify --suite identities --samples 5");
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("[PASS] identity D=Deficit=RelEnt") != std::string::npos);
    REQUIRE(r.out.find("ALL CHECKS PASSED") != std::string::npos);
    REQUIRE(r.out.find("[FAIL]") == std::string::npos);
  }
  SECTION("theorem3 suite reports the two clusters") {
    const RunResult r = run_cli("verify --suite theorem3 --c 0.6");
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("theorem3 freezing-line scan") != std::string::npos);
  }
  SECTION("spot suite passes") {
    REQUIRE(run_cli("verify --suite spot").code == 0);
  }
  SECTION("DF_SEED overrides --seed") {
    const RunResult r =
        run_cli("verify --suite identities --samples 3 --seed 1", "DF_SEED=9");
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("seed=9") != std::string::npos);
  }
  SECTION("unknown suite exits 2") {
    REQUIRE(run_cli("verify --suite nope").code == 2);
  }
}

TEST_CASE("unknown flags and subcommands exit 2") {
  REQUIRE(run_cli("measure --c 0,0,0 --bogus").code == 2);
  REQUIRE(run_cli("frobnicate").code == 2);
}
