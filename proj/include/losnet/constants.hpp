// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace losnet {

// Versioned key-value store for fit-then-freeze constants (K7..K10 and
// friends): each constant is fitted once on a calibration sweep, frozen
// here with its provenance, and asserted on disjoint validation sweeps.
struct FittedConstants {
    int version = 0;
    std::string provenance;
    std::map<std::string, double> values;

    double get(const std::string& key) const;
    bool has(const std::string& key) const { return values.count(key) > 0; }

    static FittedConstants load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;
};

}  // namespace losnet
