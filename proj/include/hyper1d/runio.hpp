#pragma once

#include "hyper1d/channels.hpp"

#include <json.hpp>

#include <filesystem>
#include <memory>
#include <string>

namespace hyper1d {

using ordered_json = nlohmann::ordered_json;

struct RunOptions {
  std::filesystem::path out_dir = "out";
  int threads = 0;  // <= 0 uses hardware concurrency
  bool use_cache = true;
};

// Parse and schema-check a config file. Any violation (bad JSON included)
// throws std::invalid_argument with the reason; nothing is written.
ordered_json load_config(const std::filesystem::path& path);
void validate_config(const ordered_json& cfg);

// Content key over the canonical (sorted, compact) config and tool version.
std::string config_key(const ordered_json& cfg);

std::string tool_version();

// Channel model plus recorded two-body constants, assembled from the config's
// masses / symmetry / interaction blocks. Numeric tables are built for
// identical masses; the contact interaction additionally has the closed-form
// identical-boson model.
struct BuiltModel {
  std::shared_ptr<const ChannelModel> model;
  ordered_json derived;
};
BuiltModel build_channel_model(const ordered_json& cfg);

// Execute the configured task and return the artifact directory
// (out_dir/<task>-<key>). Numerical failures surface as std::runtime_error
// annotated with the offending grid point.
std::filesystem::path run_task(const ordered_json& cfg, const RunOptions& opt);

} // namespace hyper1d
