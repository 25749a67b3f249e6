// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ESPIRA_IO_HPP
#define ESPIRA_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "espira/model.hpp"

namespace espira::io
{

// {"terms":[{"gamma":[re,im],"z":[re,im]},...]}
nlohmann::json to_json(const ExponentialSum &sum);
ExponentialSum sum_from_json(const nlohmann::json &doc);

// Header "k,re,im", one row per sample.
std::string to_csv(const SampleVector &samples);
SampleVector samples_from_csv(const std::string &text);

std::string read_file(const std::filesystem::path &path);

/// Writes through a temporary file in the same directory and renames it into place, so a
/// failed run never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path &path, const std::string &contents);

}  // namespace espira::io

#endif  // ESPIRA_IO_HPP
