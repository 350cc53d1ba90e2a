// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace losnet {

// Static round-robin partition of [begin, end) over `workers` threads.
// Tasks must write only to per-index slots; results are therefore identical
// for any worker count.
inline void parallel_for(std::size_t begin, std::size_t end, int workers,
                         const std::function<void(std::size_t)>& fn) {
    const std::size_t count = end > begin ? end - begin : 0;
    if (count == 0) return;
    const int w = std::max(
        1, std::min<int>(workers, static_cast<int>(count)));
    if (w == 1) {
        for (std::size_t i = begin; i < end; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int t = 0; t < w; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = begin + t; i < end; i += w) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace losnet
