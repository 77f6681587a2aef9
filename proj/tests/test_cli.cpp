#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "pcmri");
  std::ostringstream out, err;
  const int code = pcmri::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

std::size_t lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("range parsing") {
  using pcmri::cli::parse_range;
  CHECK(parse_range("5") == std::vector<int>{5});
  CHECK(parse_range("1-3") == std::vector<int>{1, 2, 3});
  CHECK(parse_range("2,4-5") == std::vector<int>{2, 4, 5});
  CHECK(parse_range("").empty());
  CHECK_THROWS_AS(parse_range("3-1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("1-"), std::invalid_argument);
}

TEST_CASE("enumerate prints one row per class") {
  auto r = run({"enumerate", "--n", "5", "--m", "3", "--probability-samples", "10000"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 1 + 4);
  CHECK(r.out.rfind("n,m,graph_id,canonical_code,degree_sequence,spectral_radius,probability\n", 0) == 0);
  CHECK(lines(run({"enumerate", "--n", "4", "--m", "1"}).out) == 1 + 1);
  CHECK(lines(run({"enumerate", "--n", "6", "--m", "6", "--probability-samples", "1000"}).out) ==
        1 + 20);
  CHECK(run({"enumerate", "--n", "11", "--m", "1"}).code == 1);
  CHECK(run({"enumerate", "--n", "5"}).code == 1);
}

TEST_CASE("check reports the verdict through the exit code") {
  const auto example = write_temp("pcmri_example.txt",
                                  "4\n1 2 * 5\n1/2 1 4 *\n* 1/4 1 2\n1/5 * 1/2 1\n");
  auto r = run({"check", example.string()});
  CHECK(r.code == 2);
  CHECK(r.out.find("verdict: UNACCEPTABLE") != std::string::npos);
  CHECK(r.out.find("ci: 0.028385") != std::string::npos);
  CHECK(r.out.find("ri: 0.264567") != std::string::npos);
  CHECK(r.out.find("cr: 0.107288") != std::string::npos);
  CHECK(r.out.find("canonical_code: 1e") != std::string::npos);

  const auto consistent = write_temp("pcmri_consistent.txt", "3\n1 2 4\n1/2 1 2\n1/4 1/2 1\n");
  r = run({"check", consistent.string(), "--samples", "1000"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ci: 0.000000") != std::string::npos);
  CHECK(r.out.find("verdict: ACCEPTABLE") != std::string::npos);

  const auto split = write_temp("pcmri_split.txt",
                                "4\n1 2 * *\n1/2 1 * *\n* * 1 3\n* * 1/3 1\n");
  r = run({"check", split.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("no unique completion") != std::string::npos);

  const auto broken = write_temp("pcmri_broken.txt", "3\n1 2\n");
  CHECK(run({"check", broken.string()}).code == 1);
  CHECK(run({"check", "/nonexistent/file"}).code == 1);
  for (const auto& p : {example, consistent, split, broken}) std::filesystem::remove(p);
}

TEST_CASE("table writes identical files for identical invocations") {
  const auto a = std::filesystem::temp_directory_path() / "pcmri_cli_a.csv";
  const auto b = std::filesystem::temp_directory_path() / "pcmri_cli_b.csv";
  const std::vector<std::string> base{"table", "--n", "5", "--m", "1-2", "--samples", "300",
                                      "--probability-samples", "1000", "--output"};
  auto args = base;
  args.push_back(a.string());
  CHECK(run(args).code == 0);
  args.back() = b.string();
  CHECK(run(args).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(lines(slurp(a)) == 1 + 3);

  auto empty = run({"table", "--n", "", "--m", "1-3"});
  CHECK(empty.code == 0);
  CHECK(lines(empty.out) == 1);
  CHECK(run({"table", "--n", "5", "--m", "1", "--method", "method3"}).code == 1);
  CHECK(run({"table", "--figure", "fig9"}).code == 1);
  CHECK(run({"table", "--n", "5", "--m", "1", "--samples", "0"}).code == 1);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("ri for a single class") {
  auto r = run({"ri", "--n", "5", "--m", "5", "--code", "0dc", "--samples", "500"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 2);
  CHECK(r.out.find("5,5,4,0dc,\"[2,2,2,2,2]\",2.0000000,") != std::string::npos);
  auto exact = run({"ri", "--n", "3", "--m", "1", "--exact"});
  CHECK(exact.out.find(",289,EXACT,") != std::string::npos);
  CHECK(run({"ri", "--n", "5", "--m", "5", "--graph-id", "99"}).code == 1);
}

TEST_CASE("help and unknown commands") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
}

}
