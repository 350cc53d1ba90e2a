// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "losnet/harness.hpp"
#include "losnet/io_util.hpp"

using namespace losnet;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("losnet_harness_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("unknown experiment ids and parameters are rejected") {
    ExperimentSpec spec;
    spec.id = "does-not-exist";
    spec.out_dir = scratch_dir("bad_id");
    CHECK_THROWS_AS(run_experiment(spec), InvalidParameter);

    spec.id = "regime-map";
    spec.params = {{"n_list", "100"}, {"a0_pow_list", "1.5"}, {"zzz", "1"}};
    CHECK_THROWS_AS(run_experiment(spec), InvalidParameter);
    fs::remove_all(spec.out_dir);
}

TEST_CASE("regime map reproduces the canonical regimes") {
    ExperimentSpec spec;
    spec.id = "regime-map";
    spec.params = {{"n_list", "10000"}, {"a0_pow_list", "1.0,1.5,2.0,2.25"}};
    spec.seed = 5;
    spec.out_dir = scratch_dir("regime");
    const auto manifest = run_experiment(spec);
    REQUIRE(manifest.files.size() == 1);
    const auto body = read_file(spec.out_dir / "regime_map.csv");
    CHECK(body.find(",R1,") != std::string::npos);
    CHECK(body.find(",R3b,") != std::string::npos);
    CHECK(body.find(",R3a,") != std::string::npos);
    CHECK(body.find(",R2,") != std::string::npos);
    fs::remove_all(spec.out_dir);
}

TEST_CASE("identical spec and seed produce byte-identical CSVs") {
    ExperimentSpec spec;
    spec.id = "s-estimate";
    spec.params = {{"ac_list", "1000,10000"},
                   {"ratio_list", "5,10"},
                   {"samples", "20000"}};
    spec.seed = 99;
    spec.workers = 4;
    const auto dir1 = scratch_dir("det1");
    const auto dir2 = scratch_dir("det2");
    spec.out_dir = dir1;
    const auto m1 = run_experiment(spec);
    spec.out_dir = dir2;
    const auto m2 = run_experiment(spec);
    CHECK(m1.combined_hash == m2.combined_hash);
    CHECK(read_file(dir1 / "s_sweep.csv") == read_file(dir2 / "s_sweep.csv"));
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("s-estimate sweep values fall as the ratio grows") {
    ExperimentSpec spec;
    spec.id = "s-estimate";
    spec.params = {{"ac_list", "10000"},
                   {"ratio_list", "10,100"},
                   {"samples", "100000"}};
    spec.seed = 7;
    spec.out_dir = scratch_dir("mono");
    run_experiment(spec);
    std::ifstream in(spec.out_dir / "s_sweep.csv");
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> values;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string field;
        for (int i = 0; i < 5; ++i) std::getline(ss, field, ',');
        values.push_back(std::stod(field));
    }
    REQUIRE(values.size() == 2);
    CHECK(values[1] < values[0]);
    fs::remove_all(spec.out_dir);
}

TEST_CASE("manifest hash covers every emitted file") {
    ExperimentSpec spec;
    spec.id = "concentration";
    spec.params = {{"m_list", "4,8"},
                   {"a_c", "10000"},
                   {"d", "200"},
                   {"trials", "50"}};
    spec.seed = 12;
    spec.workers = 2;
    spec.out_dir = scratch_dir("manifest");
    const auto manifest = run_experiment(spec);
    REQUIRE(manifest.files.size() == 3);  // two per-m CSVs plus the summary
    for (const auto& [name, hash] : manifest.files)
        CHECK(hash_file(spec.out_dir / name) == hash);
    const auto body = read_file(spec.out_dir / "manifest.txt");
    CHECK(body.find("combined_hash = " +
                    std::to_string(manifest.combined_hash)) !=
          std::string::npos);
    CHECK(body.find("wall_seconds") != std::string::npos);
    fs::remove_all(spec.out_dir);
}

TEST_CASE("s-estimate can run the S0 quadrature route") {
    ExperimentSpec spec;
    spec.id = "s-estimate";
    spec.params = {{"ac_list", "10000"}, {"ratio_list", "10,100"},
                   {"method", "s0"}};
    spec.seed = 2;
    spec.out_dir = scratch_dir("s0");
    run_experiment(spec);
    const auto body = read_file(spec.out_dir / "s_sweep.csv");
    CHECK(body.find("s0-approx") != std::string::npos);
    CHECK(body.find("quadrature") != std::string::npos);  // full3d at ratio 10
    fs::remove_all(spec.out_dir);
}

TEST_CASE("dof-scan emits the capacity sweep and spectrum dumps") {
    ExperimentSpec spec;
    spec.id = "dof-scan";
    spec.params = {{"m_list", "8,16"}, {"density", "2e-5"},
                   {"d_rule", "sqrt_ac"}, {"placements", "3"},
                   {"dump_spectra", "1"}};
    spec.seed = 44;
    spec.out_dir = scratch_dir("dof");
    const auto manifest = run_experiment(spec);
    CHECK(manifest.files.size() == 3);
    std::ifstream in(spec.out_dir / "dof_scan.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line ==
          "m,a_c,d,capacity_bits,eff_dof,pz_bound,seed,constants_version,"
          "experiment");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream ss(line);
        std::string field;
        for (int i = 0; i < 4; ++i) std::getline(ss, field, ',');
        CHECK(std::stod(field) > 0.0);  // capacity
    }
    CHECK(rows == 2);
    // spectrum dump: one eigenvalue row per antenna
    std::ifstream sp(spec.out_dir / "spectrum_m8.csv");
    std::getline(sp, line);
    rows = 0;
    while (std::getline(sp, line)) ++rows;
    CHECK(rows == 8);
    fs::remove_all(spec.out_dir);
}

TEST_CASE("lemma-verify sweep emits only passing rows") {
    ExperimentSpec spec;
    spec.id = "lemma-verify";
    spec.params = {{"per_family", "8"}, {"tol", "1e-8"}};
    spec.seed = 3;
    spec.out_dir = scratch_dir("lemma");
    run_experiment(spec);
    std::ifstream in(spec.out_dir / "lemma_sweep.csv");
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.find(",1," + std::to_string(spec.seed)) != std::string::npos);
    }
    CHECK(rows == 24);
    fs::remove_all(spec.out_dir);
}

TEST_CASE("scheme-sim writes sweep rows and plan dumps") {
    ExperimentSpec spec;
    spec.id = "scheme-sim";
    spec.params = {{"mode", "hier"}, {"n_list", "32,64"}, {"a0_pow", "3"},
                   {"h", "1"}};
    spec.seed = 8;
    spec.workers = 2;
    spec.out_dir = scratch_dir("scheme");
    const auto manifest = run_experiment(spec);
    CHECK(manifest.files.size() == 3);
    CHECK(fs::exists(spec.out_dir / "plan_n32.txt"));
    CHECK(fs::exists(spec.out_dir / "plan_n64.txt"));
    const auto body = read_file(spec.out_dir / "scheme_sweep.csv");
    CHECK(body.find("exponent_fit") != std::string::npos);
    fs::remove_all(spec.out_dir);
}

TEST_CASE("constants file: load, versioning, missing keys") {
    const auto path = fs::path(LOSNET_SOURCE_DIR) / "data/constants_v1.txt";
    const auto constants = FittedConstants::load(path);
    CHECK(constants.version == 1);
    CHECK(constants.get("K7") > 0.0);
    CHECK(constants.get("K10") > 0.0);
    CHECK(!constants.provenance.empty());
    CHECK_THROWS_AS(constants.get("K99"), InvalidParameter);

    ExperimentSpec spec;
    spec.id = "regime-map";
    spec.params = {{"n_list", "100"}, {"a0_pow_list", "1.5"}};
    spec.constants_path = path;
    spec.out_dir = scratch_dir("constver");
    run_experiment(spec);
    const auto body = read_file(spec.out_dir / "regime_map.csv");
    CHECK(body.find(",1,regime-map") != std::string::npos);
    fs::remove_all(spec.out_dir);
}

TEST_CASE("CLI: exit codes for success, spec errors") {
    const std::string bin = LOSNET_CLI_PATH;
    const auto dir = scratch_dir("cli");
    fs::create_directories(dir);
    const auto cfg = dir / "exp.conf";
    {
        std::ofstream out(cfg);
        out << "n_list = 100,200\na0_pow_list = 1.5\n";
    }
    const std::string base = bin + " regime-map --config " + cfg.string() +
                             " --seed 4 --out " + (dir / "out").string();
    CHECK(std::system((base + " > /dev/null 2>&1").c_str()) == 0);
    CHECK(fs::exists(dir / "out" / "regime_map.csv"));

    const int bad_id = std::system(
        (bin + " nope --config " + cfg.string() + " --seed 1 --out " +
         (dir / "o2").string() + " > /dev/null 2>&1")
            .c_str());
    CHECK(WEXITSTATUS(bad_id) == 2);

    {
        std::ofstream out(cfg);
        out << "unknown_key = 1\n";
    }
    const int bad_key = std::system((base + " > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(bad_key) == 2);

    // unreachable quadrature tolerance surfaces as a precision failure
    const auto lemma_cfg = dir / "lemma.conf";
    {
        std::ofstream out(lemma_cfg);
        out << "per_family = 1\ntol = 1e-30\n";
    }
    const int precision = std::system(
        (bin + " lemma-verify --config " + lemma_cfg.string() +
         " --seed 1 --out " + (dir / "o3").string() + " > /dev/null 2>&1")
            .c_str());
    CHECK(WEXITSTATUS(precision) == 3);
    fs::remove_all(dir);
}

}  // TEST_SUITE
