// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "espira/cli.hpp"

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "espira/bench.hpp"
#include "espira/io.hpp"

namespace espira
{

namespace
{

// Raised for bad flag values discovered after parsing; carries the offending flag.
struct UsageError : std::runtime_error
{
  UsageError(const std::string &flag, const std::string &what)
    : std::runtime_error(flag + ": " + what)
  {
  }
};

struct RecoveryFlags
{
  double tol = 1e-13;
  double eps = 1e-10;
  Index L = 0;
  Index M = 0;
  Index support = 0;
  std::string coeff = "vandermonde";
};

void add_recovery_flags(CLI::App *cmd, RecoveryFlags &flags)
{
  cmd->add_option("--tol", flags.tol, "ESPIRA tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--eps", flags.eps, "MPM/ESPRIT rank threshold")->check(CLI::PositiveNumber);
  cmd->add_option("--L", flags.L, "MPM/ESPRIT window (default N)")->check(CLI::PositiveNumber);
  cmd->add_option("--M", flags.M, "known order")->check(CLI::PositiveNumber);
  cmd->add_option("--support", flags.support, "ESPIRA-II greedy steps with a known order")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--coeff", flags.coeff, "coefficient system")
      ->check(CLI::IsMember({"vandermonde", "cauchy"}));
}

CoefficientMode coefficient_mode(const std::string &name)
{
  return name == "cauchy" ? CoefficientMode::Cauchy : CoefficientMode::Vandermonde;
}

void apply(const RecoveryFlags &flags, bench::ExperimentSpec &spec)
{
  spec.tol = flags.tol;
  spec.eps = flags.eps;
  spec.L = flags.L;
  if (flags.M > 0)
  {
    spec.known_order = flags.M;
  }
  if (flags.support > 0)
  {
    spec.support = flags.support;
  }
  spec.coefficients = coefficient_mode(flags.coeff);
}

std::vector<Method> parse_methods(const std::string &flag, const std::string &text)
{
  if (text == "all")
  {
    return {Method::Espira1, Method::Espira2, Method::Mpm, Method::Esprit};
  }
  std::vector<Method> methods;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
  {
    try
    {
      methods.push_back(parse_method(item));
    }
    catch (const Error &e)
    {
      throw UsageError(flag, e.what());
    }
  }
  if (methods.empty())
  {
    throw UsageError(flag, "no method given");
  }
  return methods;
}

template <class F>
auto with_flag(const std::string &flag, F &&f) -> decltype(f())
{
  try
  {
    return f();
  }
  catch (const Error &e)
  {
    throw UsageError(flag, e.what());
  }
  catch (const nlohmann::json::exception &e)
  {
    throw UsageError(flag, e.what());
  }
}

SampleVector read_samples(const std::string &path)
{
  return with_flag("--in", [&] { return io::samples_from_csv(io::read_file(path)); });
}

ExponentialSum read_truth(const std::string &truth_path, const std::string &preset)
{
  if (!truth_path.empty())
  {
    return with_flag("--truth", [&] {
      return io::sum_from_json(nlohmann::json::parse(io::read_file(truth_path)));
    });
  }
  return with_flag("--preset", [&] { return bench::preset_sum(preset); });
}

std::string format_double(double x)
{
  std::ostringstream os;
  os << std::setprecision(6) << std::scientific << x;
  return os.str();
}

std::string params_csv(const ExponentialSum &sum)
{
  std::ostringstream os;
  os << std::setprecision(17);
  os << "j,gamma_re,gamma_im,z_re,z_im\n";
  for (std::size_t j = 0; j < sum.terms().size(); ++j)
  {
    const Term &t = sum.terms()[j];
    os << j << ',' << t.gamma.real() << ',' << t.gamma.imag() << ',' << t.z.real() << ','
       << t.z.imag() << '\n';
  }
  return os.str();
}

nlohmann::json errors_json(const ErrorReport &e)
{
  return {{"e_f", e.e_f},         {"e_z", e.e_z},         {"e_phi", e.e_phi},
          {"e_gamma", e.e_gamma}, {"e_re_z", e.e_re_z}, {"e_im_z", e.e_im_z}};
}

void print_errors(std::ostream &out, const ErrorReport &e)
{
  out << "e_f=" << format_double(e.e_f) << " e_z=" << format_double(e.e_z)
      << " e_phi=" << format_double(e.e_phi) << " e_gamma=" << format_double(e.e_gamma) << '\n';
}

struct ApproxPreset
{
  bench::NamedFunction function;
  Index n_half;
  Index order;
  Index L;
  CoefficientMode coefficients;
};

ApproxPreset approx_preset(const std::string &name)
{
  if (name == "example6.1")
  {
    return {bench::NamedFunction::Inv1p, 60, 5, 10, CoefficientMode::Vandermonde};
  }
  if (name == "example6.2")
  {
    return {bench::NamedFunction::BesselJ0_100pi, 515, 28, 250, CoefficientMode::Vandermonde};
  }
  if (name == "example6.3")
  {
    return {bench::NamedFunction::Dirichlet50, 1000, 44, 1000, CoefficientMode::Cauchy};
  }
  throw UsageError("--preset", "unknown approximation preset '" + name + "'");
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Parameter recovery for exponential sums", "espira"};
  app.require_subcommand(1);

  // synth
  std::string preset, in_path, out_path, truth_path, format = "csv", noise = "none";
  Index n_half = 0;
  std::uint64_t seed = 1;
  std::uint64_t trial = 0;
  auto *synth = app.add_subcommand("synth", "sample an exponential sum");
  synth->add_option("--preset", preset, "named parameter set (example5.1 ... example5.5)");
  synth->add_option("--in", in_path, "parameter JSON")->check(CLI::ExistingFile);
  synth->add_option("--n", n_half, "N (2N samples)")->check(CLI::PositiveNumber);
  synth->add_option("--noise", noise, "none, uniform:A or gauss:F");
  synth->add_option("--seed", seed, "noise seed");
  synth->add_option("--trial", trial, "noise stream within the seed");
  synth->add_option("--out", out_path, "sample CSV")->required();

  // recover
  RecoveryFlags rflags;
  std::string method = "espira2";
  auto *recover = app.add_subcommand("recover", "recover parameters from samples");
  recover->add_option("--in", in_path, "sample CSV")->required()->check(CLI::ExistingFile);
  recover->add_option("--out", out_path, "parameter file");
  recover->add_option("--method", method, "espira1, espira2, mpm or esprit")
      ->check(CLI::IsMember({"espira1", "espira2", "mpm", "esprit"}));
  recover->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  recover->add_option("--truth", truth_path, "true parameters for error report")
      ->check(CLI::ExistingFile);
  recover->add_option("--preset", preset, "true parameters by preset name");
  add_recovery_flags(recover, rflags);

  // compare
  std::string methods = "all";
  auto *compare = app.add_subcommand("compare", "run several methods against known truth");
  compare->add_option("--in", in_path, "sample CSV")->required()->check(CLI::ExistingFile);
  compare->add_option("--out", out_path, "table file");
  compare->add_option("--methods,--method", methods, "comma list or all");
  compare->add_option("--truth", truth_path, "true parameters")->check(CLI::ExistingFile);
  compare->add_option("--preset", preset, "true parameters by preset name");
  compare->add_option("--format", format, "csv or json")->check(CLI::IsMember({"json", "csv"}));
  add_recovery_flags(compare, rflags);

  // bench
  std::string manifest_path;
  int trials = 0;
  auto *benchmark = app.add_subcommand("bench", "seeded multi-trial experiment");
  benchmark->add_option("--preset", preset, "example5.1 ... example5.5")->required();
  benchmark->add_option("--n", n_half, "N (2N samples)")->check(CLI::PositiveNumber);
  benchmark->add_option("--methods,--method", methods, "comma list or all");
  benchmark->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
  benchmark->add_option("--seed", seed, "noise seed");
  benchmark->add_option("--noise", noise, "none, uniform:A or gauss:F");
  benchmark->add_option("--out", out_path, "table file");
  benchmark->add_option("--manifest", manifest_path, "run manifest JSON");
  benchmark->add_option("--format", format, "csv or json")->check(CLI::IsMember({"json", "csv"}));
  add_recovery_flags(benchmark, rflags);

  // approx
  std::string function;
  auto *approx = app.add_subcommand("approx", "approximate a function by an exponential sum");
  approx->add_option("--preset", preset, "example6.1, example6.2 or example6.3");
  approx->add_option("--function", function, "inv1p, besselJ0_100pi or dirichlet50");
  approx->add_option("--n", n_half, "N (2N samples)")->check(CLI::PositiveNumber);
  approx->add_option("--method", method, "espira1, espira2, mpm or esprit")
      ->check(CLI::IsMember({"espira1", "espira2", "mpm", "esprit"}));
  approx->add_option("--out", out_path, "fitted parameters JSON");
  add_recovery_flags(approx, rflags);

  std::vector<std::string> argv_store{"espira"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char *> argv;
  for (auto &a : argv_store)
  {
    argv.push_back(a.data());
  }

  try
  {
    app.parse(static_cast<int>(argv.size()), argv.data());
  }
  catch (const CLI::CallForHelp &)
  {
    out << app.help();
    return kExitOk;
  }
  catch (const CLI::CallForAllHelp &)
  {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  }
  catch (const CLI::ParseError &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  // Flags that were given explicitly on the command line.
  auto given = [](CLI::App *cmd, const char *name) { return cmd->count(name) > 0; };

  try
  {
    if (synth->parsed())
    {
      if (preset.empty() == in_path.empty())
      {
        throw UsageError("--preset", "give exactly one of --preset and --in");
      }
      ExponentialSum sum;
      if (!preset.empty())
      {
        sum = with_flag("--preset", [&] { return bench::preset_sum(preset); });
        if (!given(synth, "--n"))
        {
          n_half = bench::preset_experiment(preset).n_half;
        }
      }
      else
      {
        sum = with_flag("--in", [&] {
          return io::sum_from_json(nlohmann::json::parse(io::read_file(in_path)));
        });
        if (!given(synth, "--n"))
        {
          throw UsageError("--n", "required with --in");
        }
      }
      const bench::NoiseSpec spec = with_flag("--noise", [&] { return bench::parse_noise(noise); });
      SampleVector f = sample(sum, n_half);
      if (spec.kind != bench::NoiseKind::None)
      {
        const RVector e = bench::make_noise(spec, f, seed, trial);
        const auto report = bench::snr_metrics(f, e);
        f = SampleVector(f.values() + e.cast<Complex>());
        out << "snr_db=" << report.snr_db << " psnr_db=" << report.psnr_db << '\n';
      }
      io::write_file_atomic(out_path, io::to_csv(f));
      out << "wrote " << f.size() << " samples to " << out_path << '\n';
      return kExitOk;
    }

    if (recover->parsed())
    {
      const SampleVector f = read_samples(in_path);
      std::optional<ExponentialSum> truth;
      if (!truth_path.empty() || !preset.empty())
      {
        truth = read_truth(truth_path, preset);
      }
      bench::ExperimentSpec spec;
      spec.n_half = f.n_half();
      apply(rflags, spec);
      RecoveryResult result;
      try
      {
        result = bench::recover_with(parse_method(method), f, spec);
      }
      catch (const std::exception &e)
      {
        err << "recovery failed: " << e.what() << '\n';
        return kExitRecovery;
      }
      out << "method=" << method << " M=" << result.estimate.order() << '\n';
      if (truth)
      {
        try
        {
          print_errors(out, match_and_errors(*truth, result.estimate, f.n_half()));
        }
        catch (const Error &e)
        {
          out << "errors unavailable: " << e.what() << '\n';
        }
      }
      if (!out_path.empty())
      {
        // Without --format the extension decides; parameters default to JSON.
        const bool csv = given(recover, "--format")
                             ? format == "csv"
                             : std::filesystem::path(out_path).extension() == ".csv";
        io::write_file_atomic(out_path, csv ? params_csv(result.estimate)
                                            : io::to_json(result.estimate).dump(2));
      }
      return kExitOk;
    }

    if (compare->parsed())
    {
      if (truth_path.empty() && preset.empty())
      {
        throw UsageError("--truth", "compare needs --truth or --preset");
      }
      const SampleVector f = read_samples(in_path);
      const ExponentialSum truth = read_truth(truth_path, preset);
      bench::ExperimentSpec spec;
      spec.n_half = f.n_half();
      apply(rflags, spec);
      const auto list = parse_methods("--methods", methods);

      std::ostringstream csv;
      csv << "method,M,e_f,e_z,e_phi,e_gamma,e_re_z,e_im_z,seconds,status\n";
      nlohmann::json rows = nlohmann::json::array();
      bool any_failed = false;
      for (Method m : list)
      {
        const auto start = std::chrono::steady_clock::now();
        std::string status = "ok";
        ErrorReport e;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        e = {nan, nan, nan, nan, nan, nan};
        Index order = 0;
        try
        {
          const RecoveryResult r = bench::recover_with(m, f, spec);
          order = r.estimate.order();
          e = match_and_errors(truth, r.estimate, f.n_half());
        }
        catch (const std::exception &ex)
        {
          status = ex.what();
          any_failed = true;
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        csv << to_string(m) << ',' << order << ',' << format_double(e.e_f) << ','
            << format_double(e.e_z) << ',' << format_double(e.e_phi) << ','
            << format_double(e.e_gamma) << ',' << format_double(e.e_re_z) << ','
            << format_double(e.e_im_z) << ',' << format_double(seconds) << ",\"" << status
            << "\"\n";
        nlohmann::json row = errors_json(e);
        row["method"] = to_string(m);
        row["M"] = order;
        row["seconds"] = seconds;
        row["status"] = status;
        rows.push_back(row);
      }
      const std::string text = format == "json" ? rows.dump(2) : csv.str();
      if (out_path.empty())
      {
        out << text;
      }
      else
      {
        io::write_file_atomic(out_path, text);
        out << "wrote " << list.size() << " rows to " << out_path << '\n';
      }
      return any_failed ? kExitRecovery : kExitOk;
    }

    if (benchmark->parsed())
    {
      bench::ExperimentSpec spec = with_flag("--preset", [&] {
        return bench::preset_experiment(
            preset, given(benchmark, "--n") ? std::optional<Index>(n_half) : std::nullopt);
      });
      if (given(benchmark, "--methods"))
      {
        spec.methods = parse_methods("--methods", methods);
      }
      if (given(benchmark, "--trials"))
      {
        spec.trials = trials;
      }
      if (given(benchmark, "--noise"))
      {
        spec.noise = with_flag("--noise", [&] { return bench::parse_noise(noise); });
      }
      spec.seed = seed;
      // Only explicit flags override the preset's recovery settings.
      if (given(benchmark, "--tol")) spec.tol = rflags.tol;
      if (given(benchmark, "--eps")) spec.eps = rflags.eps;
      if (given(benchmark, "--L")) spec.L = rflags.L;
      if (given(benchmark, "--M")) spec.known_order = rflags.M;
      if (given(benchmark, "--support")) spec.support = rflags.support;
      if (given(benchmark, "--coeff")) spec.coefficients = coefficient_mode(rflags.coeff);

      const bench::ExperimentTable table = bench::run_experiment(spec);
      nlohmann::json manifest = bench::manifest(table);
      std::string text;
      if (format == "json")
      {
        nlohmann::json doc = manifest;
        for (const auto &s : table.methods)
        {
          for (const auto &[key, stat] : s.stats)
          {
            doc["results"][to_string(s.method)][key] = {
                {"min", stat.min}, {"max", stat.max}, {"average", stat.average}};
          }
        }
        text = doc.dump(2);
      }
      else
      {
        text = bench::table_csv(table);
      }
      if (out_path.empty())
      {
        out << text;
      }
      else
      {
        io::write_file_atomic(out_path, text);
        out << "wrote " << out_path << '\n';
      }
      if (!table.noise.empty())
      {
        out << "snr_db_avg=" << table.mean_noise().average
            << " psnr_db_avg=" << table.mean_psnr().average << '\n';
      }
      if (!manifest_path.empty())
      {
        io::write_file_atomic(manifest_path, manifest.dump(2));
      }
      return kExitOk;
    }

    if (approx->parsed())
    {
      if (preset.empty() == function.empty())
      {
        throw UsageError("--preset", "give exactly one of --preset and --function");
      }
      bench::ApproxOptions options;
      options.method = parse_method(method);
      bench::NamedFunction fn{};
      Index order = rflags.M;
      if (!preset.empty())
      {
        const ApproxPreset p = approx_preset(preset);
        fn = p.function;
        if (!given(approx, "--n")) n_half = p.n_half;
        if (!given(approx, "--M")) order = p.order;
        options.L = p.L;
        options.coefficients = p.coefficients;
      }
      else
      {
        fn = with_flag("--function", [&] { return bench::parse_function(function); });
        if (!given(approx, "--n")) throw UsageError("--n", "required with --function");
        if (!given(approx, "--M")) throw UsageError("--M", "required with --function");
      }
      if (given(approx, "--L")) options.L = rflags.L;
      if (given(approx, "--coeff")) options.coefficients = coefficient_mode(rflags.coeff);
      if (given(approx, "--support")) options.support = rflags.support;
      options.tol = rflags.tol;
      if (given(approx, "--eps")) options.eps = rflags.eps;

      bench::ApproxResult fit;
      try
      {
        fit = bench::approx_function(fn, n_half, order, options);
      }
      catch (const std::exception &e)
      {
        err << "approximation failed: " << e.what() << '\n';
        return kExitRecovery;
      }
      out << "function=" << bench::to_string(fn) << " N=" << n_half << " M=" << order
          << " method=" << method << " max_error=" << format_double(fit.max_error)
          << " vandermonde_condition=" << format_double(fit.vandermonde_condition) << '\n';
      if (!out_path.empty())
      {
        nlohmann::json doc;
        doc["function"] = bench::to_string(fn);
        doc["N"] = n_half;
        doc["M"] = order;
        doc["method"] = method;
        doc["max_error"] = fit.max_error;
        doc["terms"] = nlohmann::json::array();
        for (std::size_t j = 0; j < fit.gamma.size(); ++j)
        {
          doc["terms"].push_back({{"gamma", {fit.gamma[j].real(), fit.gamma[j].imag()}},
                                  {"phi", {fit.phi[j].real(), fit.phi[j].imag()}}});
        }
        io::write_file_atomic(out_path, doc.dump(2));
      }
      return kExitOk;
    }
  }
  catch (const UsageError &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  catch (const Error &e)
  {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::Io || e.code() == ErrorCode::InvalidArgument ? kExitUsage
                                                                               : kExitRecovery;
  }
  return kExitUsage;
}

}  // namespace espira
