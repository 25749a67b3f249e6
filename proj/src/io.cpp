// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "espira/io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

namespace espira::io
{

namespace
{

nlohmann::json pair(Complex c)
{
  return nlohmann::json::array({c.real(), c.imag()});
}

Complex unpair(const nlohmann::json &j)
{
  if (j.is_number())
  {
    return {j.get<double>(), 0.0};
  }
  require(j.is_array() && j.size() == 2, ErrorCode::Io, "expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

nlohmann::json to_json(const ExponentialSum &sum)
{
  nlohmann::json terms = nlohmann::json::array();
  for (const auto &t : sum.terms())
  {
    terms.push_back({{"gamma", pair(t.gamma)}, {"z", pair(t.z)}});
  }
  return {{"M", sum.order()}, {"terms", terms}};
}

ExponentialSum sum_from_json(const nlohmann::json &doc)
{
  require(doc.contains("terms") && doc["terms"].is_array(), ErrorCode::Io,
          "parameter JSON needs a \"terms\" array");
  std::vector<Term> terms;
  for (const auto &t : doc["terms"])
  {
    terms.push_back({unpair(t.at("gamma")), unpair(t.at("z"))});
  }
  return ExponentialSum(std::move(terms));
}

std::string to_csv(const SampleVector &samples)
{
  std::ostringstream os;
  os << std::setprecision(17) << "k,re,im\n";
  for (Index k = 0; k < samples.size(); ++k)
  {
    os << k << ',' << samples[k].real() << ',' << samples[k].imag() << '\n';
  }
  return os.str();
}

SampleVector samples_from_csv(const std::string &text)
{
  std::istringstream is(text);
  std::string line;
  std::vector<Complex> values;
  bool first = true;
  while (std::getline(is, line))
  {
    if (!line.empty() && line.back() == '\r')
    {
      line.pop_back();
    }
    if (line.empty())
    {
      continue;
    }
    if (first && line.rfind("k,", 0) == 0)
    {
      first = false;
      continue;
    }
    first = false;
    std::istringstream row(line);
    std::string k, re, im;
    require(static_cast<bool>(std::getline(row, k, ',')) &&
                static_cast<bool>(std::getline(row, re, ',')),
            ErrorCode::Io, "malformed sample row");
    std::getline(row, im, ',');
    try
    {
      require(std::stoll(k) == static_cast<long long>(values.size()), ErrorCode::Io,
              "sample rows must be numbered 0, 1, 2, ...");
      values.emplace_back(std::stod(re), im.empty() ? 0.0 : std::stod(im));
    }
    catch (const std::logic_error &)
    {
      throw Error(ErrorCode::Io, "malformed sample row: " + line);
    }
  }
  CVector v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
  {
    v[i] = values[i];
  }
  return SampleVector(std::move(v));
}

std::string read_file(const std::filesystem::path &path)
{
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::Io, ("cannot open " + path.string()).c_str());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_atomic(const std::filesystem::path &path, const std::string &contents)
{
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  std::random_device rd;
  const auto tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorCode::Io, ("cannot write " + tmp.string()).c_str());
    out << contents;
    out.flush();
    if (!out)
    {
      std::filesystem::remove(tmp);
      throw Error(ErrorCode::Io, "short write to " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
  {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::Io, "cannot rename into " + path.string() + ": " + ec.message());
  }
}

}  // namespace espira::io
