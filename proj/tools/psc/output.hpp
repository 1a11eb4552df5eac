#pragma once

#include <array>
#include <complex>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"

namespace psc::cli {

/// %.17g, with "inf", "-inf" and "nan" spelled out.
std::string fmt(double x);

/// "# psc version ..." followed by "# key=value" for every config key.
void write_comment_header(std::ostream& out, const ExperimentConfig& config);

/// {"version": ..., "config": {...}}; every config value is a string so the
/// object can be fed back through apply_pairs.
nlohmann::ordered_json json_header(const ExperimentConfig& config);

/// Two polygons (outer dashed, inner filled) in one SVG 1.1 document.
std::string svg_polygons(const ExperimentConfig& config,
                         const std::vector<std::complex<double>>& outer,
                         const std::vector<std::complex<double>>& inner);

/// Grey-scale heat map of row-major values over the box {x0, x1, y0, y1}.
std::string svg_heatmap(const ExperimentConfig& config, const std::array<double, 4>& box, int nx,
                        int ny, const std::vector<double>& values);

/// Where artifacts go: a directory when --out is given, otherwise the primary
/// artifact goes to stdout and secondary ones are dropped.
class ArtifactSink {
 public:
  explicit ArtifactSink(std::optional<std::filesystem::path> dir);
  /// Stream for `name`; nullptr when the artifact has nowhere to go.
  std::ostream* open(const std::string& name, bool primary);

 private:
  std::optional<std::filesystem::path> dir_;
  std::vector<std::unique_ptr<std::ofstream>> files_;
};

}  // namespace psc::cli
