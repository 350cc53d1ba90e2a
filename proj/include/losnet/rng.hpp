// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <string_view>

namespace losnet {

// Seeded, splittable generator (xoshiro256++ core, splitmix64 seeding).
// Every experiment owns one root Rng; modules derive disjoint sub-streams
// by (seed, purpose-label) so no two consumers ever share stream state.
// All draws are defined in terms of explicit 64-bit arithmetic, so a given
// (seed, label chain) reproduces bit-identical sequences on any platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    // Derive an independent sub-stream keyed by a purpose label or an index.
    Rng substream(std::string_view label) const;
    Rng substream(std::uint64_t index) const;

    std::uint64_t next_u64();

    // Uniform on [0,1) with 53-bit resolution.
    double next_double();

    double uniform(double lo, double hi);

    // Uniform integer in [0, n); n must be nonzero.
    std::uint64_t bounded(std::uint64_t n);

    std::uint64_t stream_key() const { return key_; }

  private:
    Rng(std::uint64_t key, bool derived);

    std::uint64_t key_;
    std::uint64_t state_[4];
};

// 64-bit FNV-1a, used for label hashing and manifest checksums.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace losnet
