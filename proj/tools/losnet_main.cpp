// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <CLI11.hpp>
#include <cstdio>

#include "losnet/harness.hpp"
#include "losnet/io_util.hpp"
#include "losnet/kernels.hpp"

int main(int argc, char** argv) {
    CLI::App app{"losnet - LOS network capacity scaling experiments"};

    std::string experiment;
    std::string config_path;
    std::string out_dir;
    std::string constants_path;
    std::uint64_t seed = 0;
    int workers = 1;

    std::string ids;
    for (const auto& id : losnet::known_experiments()) ids += id + " ";
    app.add_option("experiment", experiment, "one of: " + ids)->required();
    app.add_option("--config", config_path, "key=value parameter file")
        ->required();
    app.add_option("--seed", seed, "experiment seed")->required();
    app.add_option("--out", out_dir, "output directory")->required();
    app.add_option("--workers", workers, "worker threads for grid points");
    app.add_option("--constants", constants_path,
                   "fitted constants file (versioned key=value)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        losnet::ExperimentSpec spec;
        spec.id = experiment;
        spec.params = losnet::read_key_values(config_path);
        spec.seed = seed;
        spec.out_dir = out_dir;
        if (!constants_path.empty()) spec.constants_path = constants_path;
        spec.workers = workers;

        const auto manifest = losnet::run_experiment(spec);
        std::printf("experiment %s done: %zu files, hash %llu, %.2fs (%s kernels)\n",
                    experiment.c_str(), manifest.files.size(),
                    static_cast<unsigned long long>(manifest.combined_hash),
                    manifest.wall_seconds,
                    losnet::kernels::backend_name(
                        losnet::kernels::active_backend())
                        .c_str());
        return 0;
    } catch (const losnet::PrecisionError& e) {
        std::fprintf(stderr, "numeric precision failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
