#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string("\"") + DOF_ANALYZER_PATH + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::path(DOF_TEST_TMP) / name;
  std::ofstream(path) << text;
  return path.string();
}

const std::string kSym =
    R"({"cells":[{"bs_antennas":5,"users":[{"antennas":3},{"antennas":3}]},)"
    R"({"bs_antennas":5,"users":[{"antennas":3},{"antennas":3}]}]})";

int count_lines(const std::string& s) {
  int n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

}  // namespace

TEST_CASE("maxdof report") {
  const auto cfg = write_temp("sym.json", kSym);
  const auto r = run("maxdof " + cfg + " --mode linear");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "maxdof");
  CHECK(j["result"]["value"] == "3/2");
  CHECK(j["result"]["proper"] == "8/5");
  CHECK(j["agreement"] == true);
  CHECK(run("maxdof " + cfg + " --mode linear").out == r.out);
  CHECK(run("maxdof " + cfg + " --mode linear --jobs 3").out == r.out);
}

TEST_CASE("analyze report") {
  const auto cfg = write_temp("sym.json", kSym);
  auto r = run("analyze " + cfg + " --streams \"1,1;1,1\"");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["classification"] == "passes-both");
  r = run("analyze " + cfg + " --streams \"2,2;2,2\"");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["classification"] == "improper");
}

TEST_CASE("region and closed form") {
  const auto cfg = write_temp("sym.json", kSym);
  auto r = run("region " + cfg);
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["result"]["region"].is_object());
  r = run("closedform " + cfg);
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["result"]["d_info"] == "3/2");
}

TEST_CASE("verify") {
  const auto cfg = write_temp("sym.json", kSym);
  const auto r = run("verify " + cfg + " --streams \"1,1;1,1\" --method jacobian --seed 4");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["verdict"]["status"] == "feasible");
}

TEST_CASE("input errors exit 2") {
  const auto cfg = write_temp("sym.json", kSym);
  const auto g3 = write_temp("g3.json",
                             R"({"cells":[{"bs_antennas":2,"users":[{"antennas":1}]},)"
                             R"({"bs_antennas":2,"users":[{"antennas":1}]},)"
                             R"({"bs_antennas":2,"users":[{"antennas":1}]}]})");
  CHECK(run("closedform " + g3).code == 2);
  CHECK(run("maxdof " + write_temp("bad.json", "{\"cells\": [")).code == 2);
  CHECK(run("maxdof " + write_temp("neg.json", R"({"cells":[{"bs_antennas":0,"users":[]}]})")).code == 2);
  CHECK(run("maxdof /nonexistent/config.json").code == 2);
  CHECK(run("maxdof " + cfg + " --mode sideways").code == 2);
  CHECK(run("analyze " + cfg + " --streams \"1,1\"").code == 2);
  CHECK(run("nosuchcommand").code == 2);
  CHECK(run("sweep " + cfg + " --vary M_2 --from 0 --to 3").code == 2);
  CHECK(run("maxdof " + write_temp("big.json",
                                   R"({"cells":[{"bs_antennas":9,"users":[{"antennas":2},{"antennas":2},{"antennas":2}]},)"
                                   R"({"bs_antennas":9,"users":[{"antennas":2},{"antennas":2},{"antennas":2}]}]})") +
            " --guard 4")
            .code == 2);
}

TEST_CASE("sweep") {
  const auto cfg = write_temp("sym.json", kSym);
  auto r = run("sweep " + cfg + " --vary M_2 --from 3 --to 12");
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 11);
  CHECK(r.out.rfind("M_2,ratio_2_over_1,ratio_1_over_2,region_1_2,region_2_1,d_info,d_linear\n", 0) == 0);
  CHECK(r.out.find("\n5,5/3,5/3,II,II,3/2,3/2\n") != std::string::npos);

  const auto chain = run("sweep " + cfg + " --vary M_2 --from 3 --to 6 --engine chain");
  CHECK(chain.code == 0);
  CHECK(chain.out == run("sweep " + cfg + " --vary M_2 --from 3 --to 6").out);

  r = run("sweep " + cfg + " --vary M_2 --from 5 --to 3");
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 1);

  const auto out = (std::filesystem::path(DOF_TEST_TMP) / "sweep.csv").string();
  std::filesystem::remove(out);
  r = run("sweep " + cfg + " --vary N_1 --from 1 --to 4 --out " + out);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(count_lines(ss.str()) == 5);
  CHECK_FALSE(std::filesystem::exists(out + ".tmp"));
}
