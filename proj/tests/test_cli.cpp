#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(FLOWLAT_CLI) + " " + args + " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace

TEST_CASE("vertices output format") {
  const auto r = run_cli("vertices --tree builtin:tripod --group Z2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("# rows=6 cols=4 order=edge-major\n", 0) == 0);
  int lines = 0;
  for (char c : r.output) lines += c == '\n';
  CHECK(lines == 5);

  // Byte-identical on repetition.
  CHECK(run_cli("vertices --tree builtin:tripod --group Z2").output == r.output);
}

TEST_CASE("count subcommand") {
  const auto r =
      run_cli("count --tree builtin:snowflake --group Z3 --dilation 2 --kind ehrhart "
              "--method fiber");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"count\": \"21627\"") != std::string::npos);
  CHECK(r.output.find("\"version\"") != std::string::npos);
  CHECK(r.output.find("\"invocation\"") != std::string::npos);

  const auto modded =
      run_cli("count --tree builtin:tripod --group Z3 --dilation 2 --kind hilbert "
              "--method direct --mod 7");
  CHECK(modded.exit_code == 0);
  CHECK(modded.output.find("\"count_mod\"") != std::string::npos);
}

TEST_CASE("error exit codes") {
  // Negative dilation: input error.
  CHECK(run_cli("count --tree builtin:tripod --group Z2 --dilation -1").exit_code == 2);
  // Unknown subcommand and missing flags: parse errors.
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("count --tree builtin:tripod").exit_code == 2);
  // Malformed tree and group specs.
  CHECK(run_cli("vertices --tree '(1);' --group Z2").exit_code == 2);
  CHECK(run_cli("vertices --tree builtin:tripod --group Q8").exit_code == 2);
  // Direct-method guard refusal is distinct.
  CHECK(run_cli("count --tree builtin:snowflake --group Z3 --dilation 2 --kind ehrhart "
                "--method direct")
            .exit_code == 3);
}

TEST_CASE("thread cap does not change results") {
  const auto one =
      run_cli("count --tree builtin:snowflake --group Z2xZ2 --dilation 2 --threads 1");
  const auto four =
      run_cli("count --tree builtin:snowflake --group Z2xZ2 --dilation 2 --threads 4");
  CHECK(one.exit_code == 0);
  CHECK(four.exit_code == 0);
  CHECK(one.output.find("\"count\": \"396928\"") != std::string::npos);
  CHECK(four.output.find("\"count\": \"396928\"") != std::string::npos);
}

TEST_CASE("memory guard refusals use the guard exit code") {
  CHECK(run_cli("vertices --tree builtin:claw30 --group Z2").exit_code == 3);
}

TEST_CASE("normality and very-ample subcommands") {
  const auto normal = run_cli("normality --tree builtin:tripod --group Z2 --max-n 3");
  CHECK(normal.exit_code == 0);
  CHECK(normal.output.find("normal-up-to-3") != std::string::npos);

  const auto ample = run_cli("very-ample --tree builtin:tripod --group Z2 --max-deg 2");
  CHECK(ample.exit_code == 0);
  CHECK(ample.output.find("inconclusive-up-to-2") != std::string::npos);
}

TEST_CASE("intersect and conjecture subcommands") {
  const auto r = run_cli("intersect --claw 4 --group Z2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"equals_claw\": true") != std::string::npos);

  const auto jc = run_cli("conjecture jc-quadrics --claw 4");
  CHECK(jc.exit_code == 0);
  CHECK(jc.output.find("\"all_covered\": true") != std::string::npos);
  CHECK(jc.output.find("\"three_splits_sufficient\": true") != std::string::npos);
}

TEST_CASE("binomial file subcommands") {
  const std::string path = "cli_test_binomial.txt";
  {
    std::ofstream out(path);
    out << "degree 2 leaves 4 group Z2\n"
        << "1 0\n1 0\n0 1\n0 1\n"
        << "1 0\n0 1\n1 0\n0 1\n";
  }
  const auto verify = run_cli("verify-binomial --file " + path);
  CHECK(verify.exit_code == 0);
  CHECK(verify.output.find("\"valid\": true") != std::string::npos);

  const auto subdivide = run_cli("subdivide --file " + path);
  CHECK(subdivide.exit_code == 0);
  CHECK(subdivide.output.find("\"found\": true") != std::string::npos);
  CHECK(subdivide.output.find("[\n    1,\n    4\n  ]") != std::string::npos);

  CHECK(run_cli("verify-binomial --file does_not_exist.txt").exit_code == 2);
  std::remove(path.c_str());
}

TEST_CASE("output file writing") {
  const std::string path = "cli_test_out.json";
  const auto r = run_cli("count --tree builtin:tripod --group Z2 --dilation 1 --kind ehrhart "
                         "--method direct --out " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.output.empty());
  std::ifstream in(path);
  std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(contents.find("\"count\": \"4\"") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("tree files are accepted") {
  const std::string path = "cli_test_tree.nwk";
  {
    std::ofstream out(path);
    out << "((1,2),(3,4));\n";
  }
  const auto r = run_cli("vertices --tree " + path + " --group Z2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("# rows=10 cols=8 order=edge-major\n", 0) == 0);
  std::remove(path.c_str());
}
