// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "losnet/rng.hpp"

#include "losnet/common.hpp"

namespace losnet {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

inline std::uint64_t splitmix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

Rng::Rng(std::uint64_t seed) : Rng(seed, true) {}

Rng::Rng(std::uint64_t key, bool) : key_(key) {
    std::uint64_t s = key;
    for (auto& word : state_) word = splitmix64(s);
}

Rng Rng::substream(std::string_view label) const {
    std::uint64_t mix = key_ ^ rotl(fnv1a64(label), 17);
    std::uint64_t s = mix;
    return Rng(splitmix64(s), true);
}

Rng Rng::substream(std::uint64_t index) const {
    std::uint64_t mix = key_ ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    std::uint64_t s = mix;
    return Rng(splitmix64(s), true);
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
}

std::uint64_t Rng::bounded(std::uint64_t n) {
    if (n == 0) throw InvalidParameter("Rng::bounded: n must be nonzero");
    // Rejection sampling on the top bits keeps the draw unbiased.
    const std::uint64_t threshold = (~n + 1) % n;
    for (;;) {
        std::uint64_t r = next_u64();
        if (r >= threshold) return r % n;
    }
}

}  // namespace losnet
