#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cflow/corners.hpp"
#include "cflow/flow.hpp"
#include "cflow/functional.hpp"
#include "cflow/minmax.hpp"

namespace cflow {

// Scientific notation, 17 significant digits: doubles round-trip losslessly
// and output is byte-deterministic.
std::string format_double(double x);

std::string curve_to_json(const DiscreteCurve& curve);
std::string region_to_json(const Region& region);

// Accepts both boundary snapshots and the empty/full sentinel form.
// Malformed text raises errc::parse; geometric violations raise their own
// error codes.
Region region_from_json(const std::string& text);
DiscreteCurve curve_from_json(const std::string& text);

std::string fc_to_json(const FcValue& value);
std::string trajectory_csv(const FlowResult& result);
std::string width_csv(const WidthEstimate& estimate);
std::string width_to_json(const WidthEstimate& estimate);
std::string wedge_report_json(const WedgeRounding& rounding);
std::string lens_table_csv(const Surface& torus,
                           const std::vector<double>& c_values);

struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  long seed = 0;
  std::string tool_version = "0.1.0";
};

std::string manifest_json(const RunManifest& manifest);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace cflow
