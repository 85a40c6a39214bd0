#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "addbasis/cli.hpp"
#include "json.hpp"
#include "test_support.hpp"

using namespace addbasis;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / (std::to_string(std::random_device{}()) + "-" + name);
    std::ofstream(path) << body;
    return path;
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run({"search", "-k", "10", "-n", "44"}).code == cli::kExitOk);
    CHECK(run({"search", "-k", "10", "-n", "46"}).code == cli::kExitNotFound);
    CHECK(run({"search", "-k", "10", "-n", "45"}).code == cli::kExitUsage);
    CHECK(run({"search", "-k", "10", "-n", "44", "--pivot", "9"}).code == cli::kExitUsage);
    CHECK(run({"search", "-k", "2", "-n", "4"}).code == cli::kExitUsage);
    CHECK(run({"oracle", "-k", "12"}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"search", "-k", "x", "-n", "4"}).code == cli::kExitUsage);
    CHECK(run({"--help"}).code == cli::kExitOk);
    CHECK(run({"enumerate", "-k", "0"}).code == cli::kExitUsage);
}

TEST_CASE("search output") {
    const auto r = run({"search", "-k", "10", "-n", "44"});
    CHECK(r.out.find("# count=8") != std::string::npos);
    CHECK(r.out.find("0 1 2 5 8 11 14 17 20 21 22\n") != std::string::npos);
    const auto j = run({"--format", "json", "search", "-k", "10", "-n", "44"});
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["count"] == 8);
    CHECK(doc["n"] == 44);
    CHECK(doc["bases"].size() == 8);
}

TEST_CASE("output does not depend on the thread count") {
    const auto one = run({"--threads", "1", "search", "-k", "14", "-n", "80"});
    const auto four = run({"--threads", "4", "search", "-k", "14", "-n", "80"});
    CHECK(one.code == 0);
    CHECK(one.out == four.out);
    const auto e1 = run({"--threads", "1", "enumerate", "-k", "9", "--min-range", "34"});
    const auto e3 = run({"--threads", "3", "enumerate", "-k", "9", "--min-range", "34"});
    CHECK(e1.out == e3.out);
    CHECK(e1.out.find("# count=") != std::string::npos);
}

TEST_CASE("extremal and table report the catalog comparison") {
    const auto r = run({"extremal", "-k", "9"});
    CHECK(r.code == 0);
    CHECK(r.out.find("# n2*=40") != std::string::npos);
    CHECK(r.out.find("# MATCH") != std::string::npos);
    const auto t = run({"table", "--from", "3", "--to", "6"});
    CHECK(t.code == 0);
    CHECK(t.out.find("MISMATCH") == std::string::npos);
    CHECK(t.out.find("6 20 S 0 1 2 5 8 9 10\n") != std::string::npos);
}

TEST_CASE("verify") {
    const auto table = run({"verify", test_support::data_path("k10_extremal.txt").string()});
    CHECK(table.code == 0);
    CHECK(table.out.find("0 1 2 3 7 11 15 17 20 21 22 : range 44, admissible, restricted, asymmetric\n") !=
          std::string::npos);
    CHECK(table.out.find("0 1 2 3 7 11 15 19 21 22 24 : range 46, admissible, not restricted, asymmetric\n") !=
          std::string::npos);

    const auto small = temp_file("small.txt", "0 2\n");
    const auto s = run({"verify", small.string()});
    CHECK(s.code == 0);
    CHECK(s.out == "0 2 : range 0, not admissible, not restricted, symmetric\n");

    const auto bad = temp_file("bad.txt", "0 1\n# note\n0 3 1\n");
    const auto b = run({"verify", bad.string()});
    CHECK(b.code == cli::kExitNotFound);
    CHECK(b.err.find(":line 3:") != std::string::npos);

    CHECK(run({"verify", "/nonexistent/file.txt"}).code != 0);
    std::filesystem::remove(small);
    std::filesystem::remove(bad);
}

TEST_CASE("oracle command") {
    const auto r = run({"oracle", "-k", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("# admissible=17") != std::string::npos);
    CHECK(r.out.find("# n2=12") != std::string::npos);
    CHECK(r.out.find("# n2*=12") != std::string::npos);
}

TEST_CASE("--out writes the result file") {
    const auto path = std::filesystem::temp_directory_path() / (std::to_string(std::random_device{}()) + "-out.txt");
    const auto r = run({"--out", path.string(), "search", "-k", "10", "-n", "44"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream body;
    body << in.rdbuf();
    CHECK(body.str() == run({"search", "-k", "10", "-n", "44"}).out);
    std::filesystem::remove(path);
}
