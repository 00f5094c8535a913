#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gamow/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("gamow_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
    return lines;
}

int run_capture(const std::vector<std::string>& args, std::string* out = nullptr) {
    std::ostringstream captured;
    auto* old = std::cout.rdbuf(captured.rdbuf());
    const int code = gamow::run_cli(args);
    std::cout.rdbuf(old);
    if (out) *out = captured.str();
    return code;
}

}  // namespace

TEST_CASE("front subcommand writes on-surface samples") {
    TempDir tmp;
    write(tmp.file("front.json"),
          R"({"masses":[1.0,1.0],"dispersion":"nonrelativistic",)"
          R"("energy":{"re":1.0,"im":0.0},"tau_R":1.0,"count":16})");
    const std::string out = tmp.file("front.csv");
    CHECK(run_capture({"front", "--config", tmp.file("front.json"), "--out", out}) == 0);

    const auto lines = split_lines(slurp(out));
    REQUIRE(lines.size() == 17);
    CHECK(lines[0] == "sample_id,r_1,r_2,tau,residual");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        double r1, r2, tau, resid;
        int id;
        REQUIRE(std::sscanf(lines[i].c_str(), "%d,%lf,%lf,%lf,%lf", &id, &r1, &r2, &tau,
                            &resid) == 5);
        CHECK(id == static_cast<int>(i - 1));
        CHECK(std::abs(r1 * r1 + r2 * r2 - 2.0) <= 1e-10);
        CHECK(resid <= 1e-10);
    }
}

TEST_CASE("front output is byte-identical across runs") {
    TempDir tmp;
    write(tmp.file("front.json"),
          R"({"masses":[0.5,2.0,1.0],"dispersion":"relativistic",)"
          R"("energy":{"re":5.0,"im":0.0},"tau_R":2.0,"count":25})");
    const std::string out1 = tmp.file("a.csv"), out2 = tmp.file("b.csv");
    CHECK(run_capture({"front", "--config", tmp.file("front.json"), "--out", out1}) == 0);
    CHECK(run_capture({"front", "--config", tmp.file("front.json"), "--out", out2}) == 0);
    CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("poles subcommand emits the requested branch table") {
    TempDir tmp;
    const std::string out = tmp.file("poles.csv");
    CHECK(run_capture({"poles", "--g", "20", "--a", "1", "--m", "1", "--branches", "1:3",
                       "--out", out}) == 0);
    const auto lines = split_lines(slurp(out));
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "branch,k_re,k_im,E0,Gamma,residual");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        int branch;
        double kre, kim, e0, gamma, resid;
        REQUIRE(std::sscanf(lines[i].c_str(), "%d,%lf,%lf,%lf,%lf,%lf", &branch, &kre, &kim,
                            &e0, &gamma, &resid) == 6);
        CHECK(branch == static_cast<int>(i));
        CHECK(kim < 0.0);
        CHECK(gamma > 0.0);
        CHECK(resid <= 1e-12);
    }
}

TEST_CASE("norm subcommand scans a shell state") {
    TempDir tmp;
    write(tmp.file("norm.json"),
          R"({"masses":[1.0],"dispersion":"nonrelativistic","tau_grid":[2.0,2.5,3.0],)"
          R"("state":{"kind":"delta_shell","g":20.0,"a":1.0,"m":1.0,"branch":1}})");
    const std::string out = tmp.file("norm.csv");
    CHECK(run_capture({"norm", "--config", tmp.file("norm.json"), "--out", out}) == 0);
    const auto lines = split_lines(slurp(out));
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "tau_R,vol_re,vol_im,surf_re,surf_im,norm_re,norm_im");
    // the shell state is already asymptotic here, so the norm column is flat
    double tr, vr, vi, sr, si, nr0, ni0, nr, ni;
    REQUIRE(std::sscanf(lines[1].c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf", &tr, &vr, &vi, &sr,
                        &si, &nr0, &ni0) == 7);
    for (std::size_t i = 2; i < lines.size(); ++i) {
        REQUIRE(std::sscanf(lines[i].c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf", &tr, &vr, &vi,
                            &sr, &si, &nr, &ni) == 7);
        CHECK(std::abs(nr - nr0) <= 1e-6 * std::abs(nr0));
        CHECK(std::abs(ni - ni0) <= 1e-6 * std::abs(nr0));
    }
}

TEST_CASE("tau subcommand prints a JSON record") {
    TempDir tmp;
    write(tmp.file("tau.json"),
          R"({"masses":[1.0,1.0],"dispersion":"nonrelativistic",)"
          R"("energy":{"re":1.0,"im":0.0},"r":[1.0,1.0]})");
    std::string printed;
    CHECK(run_capture({"tau", "--config", tmp.file("tau.json")}, &printed) == 0);
    const auto at = printed.find("\"tau\":{\"re\":");
    REQUIRE(at != std::string::npos);
    CHECK(std::stod(printed.substr(at + 13)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(printed.find("\"p_s\"") != std::string::npos);
    CHECK(printed.find("\"S\"") != std::string::npos);
    CHECK(printed.find("\"T\"") != std::string::npos);
    CHECK(printed.find("\"weight\"") != std::string::npos);
}

TEST_CASE("config errors exit with code 2") {
    TempDir tmp;
    // missing file
    CHECK(run_capture({"front", "--config", tmp.file("nope.json"), "--out",
                       tmp.file("x.csv")}) == 2);
    // unknown key
    write(tmp.file("bad1.json"),
          R"({"masses":[1.0],"dispersion":"nonrelativistic",)"
          R"("energy":{"re":1.0,"im":0.0},"tau_R":1.0,"count":4,"extra":1})");
    CHECK(run_capture({"front", "--config", tmp.file("bad1.json"), "--out",
                       tmp.file("x.csv")}) == 2);
    // malformed dispersion
    write(tmp.file("bad2.json"),
          R"({"masses":[1.0],"dispersion":"galilean",)"
          R"("energy":{"re":1.0,"im":0.0},"tau_R":1.0,"count":4})");
    CHECK(run_capture({"front", "--config", tmp.file("bad2.json"), "--out",
                       tmp.file("x.csv")}) == 2);
    // below-threshold relativistic front
    write(tmp.file("bad3.json"),
          R"({"masses":[1.0,1.0],"dispersion":"relativistic",)"
          R"("energy":{"re":1.5,"im":0.0},"tau_R":1.0,"count":4})");
    CHECK(run_capture({"front", "--config", tmp.file("bad3.json"), "--out",
                       tmp.file("x.csv")}) == 2);
    // growing (nonphysical) width
    write(tmp.file("bad4.json"),
          R"({"masses":[1.0,1.0],"dispersion":"nonrelativistic",)"
          R"("energy":{"re":1.0,"im":0.5},"r":[1.0,1.0]})");
    CHECK(run_capture({"tau", "--config", tmp.file("bad4.json")}) == 2);
    // missing subcommand / bad flag
    CHECK(run_capture({"fronts"}) == 2);
    CHECK(run_capture({}) == 2);
}

TEST_CASE("validate subcommand passes on a healthy build") {
    std::string printed;
    CHECK(run_capture({"validate", "--suite", "fast"}, &printed) == 0);
    CHECK(printed.find("[PASS]") != std::string::npos);
    CHECK(printed.find("[FAIL]") == std::string::npos);
}
