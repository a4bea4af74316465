// Copyright 2026 The synthvol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "synthvol/config.hpp"
#include "synthvol/error.hpp"
#include "synthvol/logging.hpp"
#include "synthvol/preview.hpp"
#include "synthvol/sampler.hpp"
#include "synthvol/validate.hpp"
#include "synthvol/volio.hpp"

namespace synthvol::cli {
namespace fs = std::filesystem;

namespace {

struct GenerateArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;  // default: run.json seed, else 0
  std::uint64_t count = 1;
  std::uint64_t start_index = 0;
  int jobs = 1;
  std::string format = "nifti";
};

struct PreviewArgs {
  std::string sample;
  std::string slices = "first,mid,last";
  std::string out;
};

struct ValidateArgs {
  std::string manifest;
};

int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err) {
  DistributionConfig config;
  std::uint64_t seed = args.seed.value_or(0);
  try {
    if (!args.config.empty()) {
      config = load_config(args.config);
      if (!args.seed && fs::path(args.config).extension() == ".json") {
        std::ifstream in(args.config);
        const auto run = nlohmann::json::parse(in, nullptr, false);
        if (run.is_object() && run.contains("master_seed")) {
          seed = run.at("master_seed").get<std::uint64_t>();
        }
      }
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  RunOptions options;
  options.out_dir = args.out;
  options.master_seed = seed;
  options.count = args.count;
  options.start_index = args.start_index;
  options.jobs = args.jobs;
  options.format = output_format_from_string(args.format);

  const DatasetResult result = generate_dataset(config, options);
  out << "wrote " << (result.records.size() - result.failures) << " of "
      << result.records.size() << " samples to " << options.out_dir.string() << "\n";
  out << "manifest: " << result.manifest_path.string() << "\n";
  if (result.failures > 0) {
    err << "error: " << result.failures << " sample(s) failed:\n";
    for (const auto& r : result.records) {
      if (!r.ok) err << "  sample " << r.sample_index << ": " << r.error << "\n";
    }
    return kExitFailures;
  }
  return kExitOk;
}

int cmd_preview(const PreviewArgs& args, std::ostream& out, std::ostream& err) {
  std::pair<fs::path, fs::path> files;
  try {
    files = find_sample_files(args.sample);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const LoadedVolume image = read_volume(files.first);
  const LoadedVolume labels = read_volume(files.second);
  std::vector<int> slices;
  try {
    slices = parse_slice_spec(args.slices, image.image().depth());
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const fs::path prefix = args.out.empty() ? fs::path(args.sample + "_preview") : fs::path(args.out);
  for (const auto& p : write_preview(image.image(), labels.labels(), prefix, slices)) {
    out << p.string() << "\n";
  }
  return kExitOk;
}

int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err) {
  const ManifestCheck check = validate_manifest(args.manifest);
  out << check.stats.to_text();
  out << "checked " << check.checked << " sample(s), " << check.failures.size()
      << " problem(s)\n";
  if (!check.ok()) {
    for (const auto& [index, problem] : check.failures) {
      err << "sample " << index << ": " << problem << "\n";
    }
    return kExitFailures;
  }
  return kExitOk;
}

}  // namespace

std::vector<int> parse_slice_spec(const std::string& spec, int depth) {
  if (depth < 1) throw ParameterError("volume has no slices");
  std::vector<int> slices;
  auto add = [&](int d) {
    if (d < 1 || d > depth) {
      throw ParameterError("slice " + std::to_string(d) + " outside [1, " +
                           std::to_string(depth) + "]");
    }
    if (std::find(slices.begin(), slices.end(), d) == slices.end()) slices.push_back(d);
  };
  if (spec == "all") {
    for (int d = 1; d <= depth; ++d) add(d);
    return slices;
  }
  std::stringstream stream(spec);
  std::string token;
  while (std::getline(stream, token, ',')) {
    token.erase(0, token.find_first_not_of(' '));
    token.erase(token.find_last_not_of(' ') + 1);
    if (token == "first") {
      add(1);
    } else if (token == "mid") {
      add((depth + 1) / 2);
    } else if (token == "last") {
      add(depth);
    } else {
      int d = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), d);
      if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParameterError("bad slice selection '" + spec + "'");
      }
      add(d);
    }
  }
  if (slices.empty()) throw ParameterError("bad slice selection '" + spec + "'");
  return slices;
}

std::pair<fs::path, fs::path> find_sample_files(const fs::path& prefix) {
  auto locate = [&](const std::string& role) {
    for (const char* ext : {".nii", ".raw"}) {
      fs::path p = prefix;
      p += "_" + role + ext;
      if (fs::exists(p)) return p;
    }
    throw IoError("no " + role + " volume found for sample prefix " + prefix.string());
  };
  return {locate("image"), locate("label")};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"synthvol: paired synthetic 3D image and label volumes"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a batch of samples");
  generate->add_option("--config", gen.config, "Run config (INI, or a previous run.json)");
  generate->add_option("--out", gen.out, "Output directory")->required();
  generate->add_option("--seed", gen.seed, "Master seed (default: the seed of a run.json config, else 0)");
  generate->add_option("--count", gen.count, "Number of samples")->check(CLI::PositiveNumber);
  generate->add_option("--start-index", gen.start_index, "Index of the first sample");
  generate->add_option("--jobs", gen.jobs, "Worker threads")->check(CLI::PositiveNumber);
  generate->add_option("--format", gen.format, "Output format")
      ->check(CLI::IsMember({"nifti", "raw", "both"}));

  PreviewArgs prev;
  auto* preview = app.add_subcommand("preview", "Render PNG previews of one sample");
  preview->add_option("--sample", prev.sample, "Sample path prefix, e.g. out/sample_000000")
      ->required();
  preview->add_option("--slices", prev.slices, "all | first,mid,last | 1-based indices");
  preview->add_option("--out", prev.out, "Output prefix (default <sample>_preview)");

  ValidateArgs val;
  auto* validate = app.add_subcommand("validate", "Check every sample of a manifest");
  validate->add_option("--manifest", val.manifest, "manifest.jsonl")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    } else {
      err << app.help();
    }
    return kExitUsage;
  }

  init_logging();
  try {
    if (generate->parsed()) return cmd_generate(gen, out, err);
    if (preview->parsed()) return cmd_preview(prev, out, err);
    if (validate->parsed()) return cmd_validate(val, out, err);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailures;
  }
  return kExitUsage;
}

}  // namespace synthvol::cli
