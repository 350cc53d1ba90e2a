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

namespace losnet {

// Flat key = value text files (comments with '#').
std::map<std::string, std::string> read_key_values(
    const std::filesystem::path& path);

std::vector<double> parse_double_list(const std::string& csv);

// Locale-independent numeric formatting, 17 significant digits for doubles.
std::string fmt_double(double v);

// CSV sink with atomic publish (write to <path>.tmp, then rename).
class CsvWriter {
  public:
    explicit CsvWriter(std::filesystem::path path);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void header(const std::string& line);
    void raw_row(const std::string& line);
    void close();  // publishes the file

  private:
    std::filesystem::path path_;
    std::filesystem::path tmp_;
    std::FILE* file_ = nullptr;
};

std::uint64_t hash_file(const std::filesystem::path& path);

}  // namespace losnet
