#include "robin/robin.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr is discarded.
Run run(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + " '" ROBIN_CLI_PATH "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Cli, CheckExitCodes) {
  EXPECT_EQ(run("check '2^4*3^2*5*7'").code, 2);
  EXPECT_EQ(run("check '71^2'").code, 0);
  EXPECT_EQ(run("check '4^2'").code, 1);
  EXPECT_EQ(run("check '2^0'").code, 1);
  EXPECT_EQ(run("check").code, 1);
  EXPECT_EQ(run("check --n 5040").code, 2);
  EXPECT_EQ(run("check --n 5041").code, 0);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, CheckExitCodesMatchLibrary) {
  const auto violators = robin::scan(3, 5040).violators;
  for (std::uint64_t n = 3; n < 53; ++n) {
    const bool negative = std::binary_search(violators.begin(), violators.end(), n);
    EXPECT_EQ(run("check --n " + std::to_string(n)).code, negative ? 2 : 0) << n;
  }
}

TEST(Cli, CheckCsvRow) {
  const auto r = run("check '2^4*3^2*5*7'");
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "# precision_bits=132");
  EXPECT_EQ(lines[1], robin::kRobinCsvHeader);
  const auto fields = robin::split_csv_line(lines[2]);
  EXPECT_EQ(fields[0], "2^4*3^2*5*7");
  EXPECT_EQ(fields[1], "4");
  EXPECT_EQ(fields[8], "-1");
  EXPECT_EQ(fields[6].substr(0, 8), "-2.12179");
}

TEST(Cli, CheckJson) {
  const auto r = run("--emit json check '71^2'");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["factorization"], "71^2");
  EXPECT_EQ(j[0]["d_sign"], 1);
}

TEST(Cli, EnvironmentAndConfigPrecedence) {
  const auto dir = std::filesystem::temp_directory_path() / "robin_cli_test";
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "robin.ini";
  std::ofstream(cfg) << "emit=json\n";

  EXPECT_NO_THROW(nlohmann::json::parse(run("check '71^2'", "ROBIN_EMIT=json").out));
  EXPECT_NO_THROW(nlohmann::json::parse(run("--config '" + cfg.string() + "' check '71^2'").out));
  // flag beats config, config beats environment
  EXPECT_EQ(run("--config '" + cfg.string() + "' --emit csv check '71^2'").out.substr(0, 1), "#");
  std::ofstream(cfg) << "emit=csv\n";
  EXPECT_EQ(run("--config '" + cfg.string() + "' check '71^2'", "ROBIN_EMIT=json").out.substr(0, 1), "#");
  // An environment value that fails validation is ignored, not an error.
  EXPECT_EQ(run("check '71^2'", "ROBIN_EMIT=yaml").out.substr(0, 1), "#");
  EXPECT_EQ(run("--emit yaml check '71^2'").code, 1);
  std::filesystem::remove_all(dir);
}

TEST(Cli, Scan) {
  const auto r = run("scan 3 5040");
  EXPECT_EQ(r.code, 0);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 28u);
  EXPECT_EQ(robin::split_csv_line(lines[2])[0], "3");
  EXPECT_EQ(robin::split_csv_line(lines.back())[0], "2^4*3^2*5*7");

  const auto empty = run("--threads 2 scan 5041 100000");
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(lines_of(empty.out).size(), 2u);

  const auto j = nlohmann::json::parse(run("--emit json scan 3 100").out);
  EXPECT_EQ(j["violators"].size(), 18u);
  EXPECT_TRUE(j["indeterminate"].empty());

  EXPECT_EQ(run("scan 2 10").code, 1);
}

TEST(Cli, Canon) {
  const auto r = run("canon '3^2*7'");
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(robin::split_csv_line(lines[2])[0], "3^2*7");
  EXPECT_EQ(robin::split_csv_line(lines[3])[0], "2^2*3");
  const auto j = nlohmann::json::parse(run("--emit json canon '3^2*7'").out);
  EXPECT_EQ(j["dominance_certified"], true);
}

TEST(Cli, Epsilon) {
  const auto r = run("epsilon --trace '2^6*3^2*5'");
  EXPECT_EQ(r.code, 0);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[1], "s,epsilon_lo,epsilon_hi");
  EXPECT_EQ(robin::split_csv_line(lines[2])[0], "1");
  EXPECT_EQ(robin::split_csv_line(lines[2])[1].substr(0, 6), "5.0000");

  const auto primorial = lines_of(run("epsilon '2*3*5*7*11'").out);
  ASSERT_EQ(primorial.size(), 3u);
  EXPECT_EQ(robin::split_csv_line(primorial[2])[1], "0.0000000000000000000e+00");

  EXPECT_EQ(run("epsilon '3*5'").code, 1);
  EXPECT_EQ(run("epsilon --shift 2 '2^3*3^2*5'").code, 0);
}

TEST(Cli, BoundsSuites) {
  const auto dusart = run("bounds --suite dusart --kmax 2000");
  EXPECT_EQ(dusart.code, 0);
  const auto lines = lines_of(dusart.out);
  ASSERT_GE(lines.size(), 3u);
  EXPECT_EQ(lines[1], robin::kBoundCsvHeader);
  for (std::size_t i = 2; i < lines.size(); ++i) EXPECT_EQ(robin::split_csv_line(lines[i]).back(), "true");

  EXPECT_EQ(run("bounds --suite rosser --rs-lo 59 --rs-hi 100000").code, 0);
  EXPECT_EQ(run("bounds --suite rosser --rs-lo 58 --rs-hi 100").code, 1);
  EXPECT_EQ(run("bounds --suite mertens --x 100000").code, 0);
  EXPECT_EQ(run("--mertens-envelope 1e-9 bounds --suite mertens --x 100000").code, 2);
  EXPECT_EQ(run("bounds --suite nonsense").code, 1);
}

TEST(Cli, Generate) {
  const auto ca = lines_of(run("generate --family ca --count 9").out);
  ASSERT_EQ(ca.size(), 11u);
  EXPECT_EQ(robin::split_csv_line(ca[2])[0], "2");
  EXPECT_EQ(robin::split_csv_line(ca[9])[0], "2^4*3^2*5*7");
  EXPECT_EQ(robin::split_csv_line(ca[10])[8], "1");

  const auto desc = lines_of(run("generate --family descending --exponents 2,1 --count 3").out);
  ASSERT_EQ(desc.size(), 5u);
  EXPECT_EQ(robin::split_csv_line(desc[4])[0], "2^4*3^3");

  EXPECT_EQ(run("generate --family descending --exponents 1,2").code, 1);
  EXPECT_EQ(run("generate --family unknown").code, 1);
  EXPECT_EQ(lines_of(run("generate --family factorial --count 20").out).size(), 14u);
}
