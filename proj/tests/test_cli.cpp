// End-to-end checks of the command-line tool.  The binary path comes from the
// KMOTION_CLI environment variable (set by ctest); scratch files go under
// KMOTION_TMP.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "kmotion/io.hpp"

namespace {

std::string cli() {
    const char* p = std::getenv("KMOTION_CLI");
    REQUIRE(p != nullptr);
    return p;
}

std::string tmp_dir() {
    const char* p = std::getenv("KMOTION_TMP");
    return p ? p : std::filesystem::temp_directory_path().string();
}

int run(const std::string& args) {
    const std::string cmd = cli() + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(bool(in));
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("identical runs produce byte-identical trajectory files") {
    const auto a = tmp_dir() + "/det_a.csv";
    const auto b = tmp_dir() + "/det_b.csv";
    const std::string spec =
        "simulate --k 3 --eta 0.2 --mode exact --tau-end 0.5 --dtau 1e-3 --nmax 128 --out ";
    CHECK(run(spec + a) == 0);
    CHECK(run(spec + b) == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("tau-end 0 writes the single initial sample") {
    const auto out = tmp_dir() + "/single.csv";
    CHECK(run("simulate --k 2 --eta 0.3 --tau-end 0 --nmax 32 --out " + out) == 0);
    const auto traj = kmotion::io::read_trajectory_csv(out);
    REQUIRE(traj.samples.size() == 1);
    CHECK(traj.samples[0].tau == 0.0);
    CHECK(traj.samples[0].norm == 1.0);
}

TEST_CASE("lamb-dicke k = 3 run exits with the truncation-breach code") {
    const auto out = tmp_dir() + "/breach.csv";
    CHECK(run("simulate --k 3 --eta 0.2 --mode lamb-dicke --nmax 256 --tau-end 3 --out " +
              out) == 3);
    const auto text = slurp(out);
    CHECK(text.find("# truncation_breach = 1\n") != std::string::npos);
    CHECK(text.find("# breach_tau = ") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("simulate --k 0 --out /tmp/never.csv") == 2);
    CHECK(run("simulate") == 2);
    CHECK(run("nonsense") == 2);
    CHECK(run("simulate --k 2 --eta 9.5 --tau-end 1 --out /tmp/never.csv") == 2);
    CHECK(run("simulate --k 2 --eta 0.3 --initial bogus:1 --tau-end 1 --out /tmp/never.csv") ==
          2);
}

TEST_CASE("unwritable output path exits with the I/O code") {
    CHECK(run("simulate --k 2 --eta 0.3 --tau-end 0 --nmax 16 --out /nonexistent-dir/x.csv") ==
          4);
}

TEST_CASE("bounds subcommand reports the divergence block") {
    const auto out = tmp_dir() + "/bounds3.csv";
    CHECK(run("bounds --k 3 --eta 0.2 --out " + out) == 0);
    const auto text = slurp(out);
    CHECK(text.find("# blow_up = 1\n") != std::string::npos);
    CHECK(text.find("# dtau_inf_upper = ") != std::string::npos);
    CHECK(text.find("# C_k = 25370.325970974") != std::string::npos);
    CHECK(text.find("tau,N_lb,N_ub\n") != std::string::npos);

    const auto out2 = tmp_dir() + "/bounds2.csv";
    CHECK(run("bounds --k 2 --eta 0.2 --tau-end 4 --out " + out2) == 0);
    const auto text2 = slurp(out2);
    CHECK(text2.find("# dtau_inf_upper = inf\n") != std::string::npos);
    CHECK(text2.find("# dtau_inf_quadrature = inf\n") != std::string::npos);
}

TEST_CASE("qfunction writes one grid per snapshot plus optional images") {
    const auto prefix = tmp_dir() + "/q";
    CHECK(run("qfunction --k 3 --eta 0.2 --nmax 64 --snapshots 0,0.4 "
              "--grid=-3,3,-3,3,31,31 --pgm --out " +
              prefix) == 0);
    for (const char* name : {"/q_snap00.csv", "/q_snap01.csv", "/q_snap00.pgm",
                             "/q_snap01.pgm"})
        CHECK(std::filesystem::exists(tmp_dir() + name));
    const auto text = slurp(prefix + "_snap00.csv");
    CHECK(text.find("re_alpha,im_alpha,q\n") != std::string::npos);
    CHECK(text.find("# tau = 0\n") != std::string::npos);
}

TEST_CASE("config file provides defaults that flags override") {
    const auto cfg_path = tmp_dir() + "/kmotion.cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "k = 2\neta = 0.3\ntau-end = 0\nnmax = 32\nout = " << tmp_dir()
            << "/cfg_default.csv\n";
    }
    CHECK(run("simulate --config " + cfg_path) == 0);
    const auto text = slurp(tmp_dir() + "/cfg_default.csv");
    CHECK(text.find("# k = 2\n") != std::string::npos);

    CHECK(run("simulate --config " + cfg_path + " --k 4 --out " + tmp_dir() +
              "/cfg_override.csv") == 0);
    const auto text2 = slurp(tmp_dir() + "/cfg_override.csv");
    CHECK(text2.find("# k = 4\n") != std::string::npos);
}
