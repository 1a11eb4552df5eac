#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace psc::cli {

/// Bad flag values, unknown keys, malformed config files.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Everything a run depends on. `to_lines()` and `from_pairs()` round-trip,
/// which is what makes an emitted header re-runnable.
struct ExperimentConfig {
  std::string command;
  std::string matrix;
  int ell = 2;
  std::vector<double> eps;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  int resolution = 64;
  int ktheta = 512;
  std::string flags;        ///< subset of "a,b,c" for psarea
  std::string z = "0,0";    ///< re,im
  std::string grid;         ///< x0,x1,y0,y1,nx,ny for density
  int angles = 256;
  std::string hermitian;    ///< eigenvalue list for density --hermitian
  int points = 201;
  std::string suite = "all";

  /// "key=value" in a fixed order. The output directory is not part of the
  /// config: moving the artifacts must not change their bytes.
  std::vector<std::string> to_lines() const;
};

/// Keys understood by the config loader.
const std::vector<std::string>& config_keys();

/// Applies key=value pairs on top of `base`. Throws UsageError on unknown keys
/// or unparsable values.
ExperimentConfig apply_pairs(ExperimentConfig base, const std::map<std::string, std::string>& kv);

/// Reads key=value pairs from a config file or from the header of an emitted
/// artifact: leading '#', "<!--" and surrounding blanks are ignored, lines
/// without '=' are skipped, and a JSON artifact contributes its
/// header.config object.
std::map<std::string, std::string> read_config_file(const std::string& path);

std::vector<double> parse_double_list(const std::string& text, const char* what);

}  // namespace psc::cli
