// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "losnet/io_util.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "losnet/common.hpp"
#include "losnet/constants.hpp"
#include "losnet/rng.hpp"

namespace losnet {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::string> read_key_values(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open file: " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) continue;
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::istringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string t = trim(item);
        if (!t.empty()) out.push_back(std::stod(t));
    }
    return out;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::filesystem::path path) : path_(std::move(path)) {
    tmp_ = path_;
    tmp_ += ".tmp";
    file_ = std::fopen(tmp_.string().c_str(), "wb");
    if (!file_) throw InvalidParameter("cannot open for write: " + tmp_.string());
}

CsvWriter::~CsvWriter() {
    if (file_) {
        std::fclose(file_);
        std::remove(tmp_.string().c_str());
    }
}

void CsvWriter::header(const std::string& line) { raw_row(line); }

void CsvWriter::raw_row(const std::string& line) {
    if (!file_) throw InvalidParameter("CsvWriter: file already closed");
    std::fputs(line.c_str(), file_);
    std::fputc('\n', file_);
}

void CsvWriter::close() {
    if (!file_) return;
    std::fclose(file_);
    file_ = nullptr;
    std::filesystem::rename(tmp_, path_);
}

std::uint64_t hash_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidParameter("cannot hash missing file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a64(ss.str());
}

double FittedConstants::get(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end())
        throw InvalidParameter("constants file is missing key: " + key);
    return it->second;
}

FittedConstants FittedConstants::load(const std::filesystem::path& path) {
    FittedConstants c;
    for (const auto& [key, value] : read_key_values(path)) {
        if (key == "version")
            c.version = std::stoi(value);
        else if (key == "provenance")
            c.provenance = value;
        else
            c.values[key] = std::stod(value);
    }
    if (c.version <= 0)
        throw InvalidParameter("constants file must declare a positive version");
    return c;
}

void FittedConstants::save(const std::filesystem::path& path) const {
    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    if (!f) throw InvalidParameter("cannot open for write: " + path.string());
    std::fprintf(f, "version = %d\n", version);
    std::fprintf(f, "provenance = %s\n", provenance.c_str());
    for (const auto& [key, value] : values)
        std::fprintf(f, "%s = %s\n", key.c_str(), fmt_double(value).c_str());
    std::fclose(f);
}

}  // namespace losnet
