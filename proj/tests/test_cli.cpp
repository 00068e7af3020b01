// SPDX-License-Identifier: Apache-2.0
//
// iqbeam - least-squares channel estimation and energy beamforming
// under transceiver IQ imbalance
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct CmdResult {
    int exit_code = -1;
    std::string output;
};

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "iqbeam_cli_test";
    fs::create_directories(dir);
    return dir;
}

CmdResult run_tool(const std::string& args) {
    const fs::path log = scratch_dir() / "cmd.log";
    const std::string cmd =
        std::string(IQBEAM_TOOL_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    CmdResult res;
    res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    res.output = ss.str();
    return res;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("version and help") {
    CHECK(run_tool("--version").exit_code == 0);
    const CmdResult help = run_tool("--help");
    CHECK(help.exit_code == 0);
    CHECK(help.output.find("sweep-snr") != std::string::npos);
    CHECK(help.output.find("validate") != std::string::npos);
}

TEST_CASE("missing subcommand fails") {
    CHECK(run_tool("").exit_code != 0);
    CHECK(run_tool("sweep-warp").exit_code != 0);
}

TEST_CASE("sweep-snr writes the result files with the expected schema") {
    const fs::path out = scratch_dir() / "snr_a";
    fs::remove_all(out);
    const CmdResult r = run_tool("sweep-snr --trials 30 --seed 3 --snr-db 20:10:30 --out " +
                                 out.string() + " --threads 2");
    REQUIRE(r.exit_code == 0);
    REQUIRE(fs::exists(out / "sweep_snr.csv"));
    REQUIRE(fs::exists(out / "sweep_snr.json"));
    const std::string csv = slurp(out / "sweep_snr.csv");
    CHECK(csv.rfind("sweep_axis,sweep_value,scheme,metric,mean,std_err,trials,"
                    "singular_trials,seed\n",
                    0) == 0);
    CHECK(csv.find("snr,20,") != std::string::npos);
    CHECK(csv.find("snr,30,") != std::string::npos);
    CHECK(csv.find(",joint,power_dbm,") != std::string::npos);
    const std::string js = slurp(out / "sweep_snr.json");
    CHECK(js.find("\"manifest\"") != std::string::npos);
    CHECK(js.find("\"seed\": 3") != std::string::npos);
}

TEST_CASE("same seed reproduces byte-identical results") {
    const fs::path out1 = scratch_dir() / "rep1";
    const fs::path out2 = scratch_dir() / "rep2";
    fs::remove_all(out1);
    fs::remove_all(out2);
    const std::string common = "sweep-iqi --trials 25 --seed 11 ";
    REQUIRE(run_tool(common + "--threads 1 --out " + out1.string()).exit_code == 0);
    REQUIRE(run_tool(common + "--threads 3 --out " + out2.string()).exit_code == 0);
    CHECK(slurp(out1 / "sweep_iqi.csv") == slurp(out2 / "sweep_iqi.csv"));

    const fs::path out3 = scratch_dir() / "rep3";
    fs::remove_all(out3);
    REQUIRE(run_tool("sweep-iqi --trials 25 --seed 12 --out " + out3.string()).exit_code == 0);
    CHECK(slurp(out1 / "sweep_iqi.csv") != slurp(out3 / "sweep_iqi.csv"));
}

TEST_CASE("verify flag re-runs a sweep point") {
    const fs::path out = scratch_dir() / "verify";
    fs::remove_all(out);
    const CmdResult r =
        run_tool("sweep-antennas --trials 20 --seed 2 --verify --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("reproduced exactly") != std::string::npos);
}

TEST_CASE("config file drives the run and flags override it") {
    const fs::path dir = scratch_dir();
    const fs::path cfg = dir / "cfg.json";
    {
        std::ofstream out(cfg);
        out << R"({"trials": 15, "seed": 21, "antennas": 6, "sweep_values": [10.0, 20.0]})";
    }
    const fs::path out1 = dir / "cfgrun";
    fs::remove_all(out1);
    const CmdResult r = run_tool("sweep-snr --config " + cfg.string() + " --trials 10 --out " +
                                 out1.string());
    REQUIRE(r.exit_code == 0);
    const std::string csv = slurp(out1 / "sweep_snr.csv");
    CHECK(csv.find(",10,0,21") != std::string::npos);  // 10 trials (flag), seed 21 (file)
    CHECK(csv.find("snr,10,") != std::string::npos);
    CHECK(csv.find("snr,20,") != std::string::npos);
}

TEST_CASE("bad input exits nonzero with a diagnostic") {
    const fs::path dir = scratch_dir();
    const fs::path cfg = dir / "bad.json";
    {
        std::ofstream out(cfg);
        out << R"({"antenas": 4})";
    }
    const CmdResult r = run_tool("sweep-snr --config " + cfg.string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("error:") != std::string::npos);
    CHECK(r.output.find("antenas") != std::string::npos);

    const CmdResult r2 = run_tool("sweep-snr --trials 0 --out " + (dir / "x").string());
    CHECK(r2.exit_code == 2);
    CHECK(r2.output.find("trials") != std::string::npos);
}

TEST_CASE("validate passes at the default and at zero mismatch") {
    const CmdResult r = run_tool("validate --seed 4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("FAIL") == std::string::npos);
    CHECK(r.output.find("PASS") != std::string::npos);
    CHECK(r.output.find("validation OK") != std::string::npos);

    const CmdResult r0 = run_tool("validate --seed 4 --delta 0.0");
    CHECK(r0.exit_code == 0);
}
