#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "g2cb/kummer.hpp"
#include "g2cb/steiner.hpp"

namespace g2cb {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "g2cb";
inline constexpr const char* kToolVersion = "0.1.0";

struct VerifyConfig {
  std::string curve_path;
  std::optional<std::string> field_override;  // "rationals" or "prime:<p>"
  std::uint64_t seed = 42;
  int samples = 50;                  // >= 45 when the Kummer check is enabled
  std::vector<std::string> checks;   // empty = all
  int workers = 1;
  std::string cache_dir;             // empty = cache disabled
};

// Report JSON: {tool, config, checks: [{name, claim, status, values,
// witnesses}], overall, meta}. Everything outside "meta" is a pure function
// of (curve, field, seed, version); meta holds timings and cache info.
struct Report {
  Json json;
  bool passed = false;
};

FieldContext parse_field_spec(const std::string& spec);
HyperellipticCurve curve_from_json(const Json& j, const std::optional<std::string>& field_override);
HyperellipticCurve load_curve_file(const std::string& path, const std::optional<std::string>& field_override);

Report run_verify(const VerifyConfig& config);

// The determinism contract covers the report minus "meta".
Json report_without_meta(const Json& report);

// Content-addressed JSON blobs under dir/<key>.json with an embedded payload
// hash; corrupted entries read as missing. I/O failures degrade to miss/noop.
class ArtifactCache {
 public:
  explicit ArtifactCache(std::string dir) : dir_(std::move(dir)) {}
  static std::string key_for(const FieldContext& ctx, const std::array<Scalar, 7>& f);
  std::optional<Json> get(const std::string& key) const;
  void put(const std::string& key, const Json& payload) const;
  bool enabled() const { return !dir_.empty(); }

 private:
  std::string dir_;
};

// exit codes: 0 pass, 1 certification failure, 2 input error
int exit_code_for(Errc code);

}  // namespace g2cb
