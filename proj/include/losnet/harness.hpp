// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "losnet/common.hpp"
#include "losnet/constants.hpp"

namespace losnet {

struct ExperimentSpec {
    std::string id;  // dof-scan | s-estimate | lemma-verify | scheme-sim |
                     // regime-map | concentration
    std::map<std::string, std::string> params;
    std::uint64_t seed = 0;
    std::filesystem::path out_dir;
    std::filesystem::path constants_path;  // optional
    int workers = 1;
};

struct ArtifactManifest {
    std::vector<std::pair<std::string, std::uint64_t>> files;  // name, fnv1a64
    std::uint64_t combined_hash = 0;
    double wall_seconds = 0.0;
    std::filesystem::path manifest_path;
};

const std::vector<std::string>& known_experiments();

// Runs one experiment: one CSV per sweep plus manifest.txt. CSV outputs are
// byte-identical for identical (spec, seed); the manifest additionally
// records wall time.
ArtifactManifest run_experiment(const ExperimentSpec& spec);

}  // namespace losnet
