#include "cflow/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cflow {

namespace {

using nlohmann::json;

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

std::string surface_json(const Surface& s) {
  std::string out = "{\"kind\": \"";
  switch (s.kind()) {
    case SurfaceKind::EuclideanPlane:
      out += "plane\", \"params\": {}";
      break;
    case SurfaceKind::FlatTorus:
      out += "torus\", \"params\": {\"L\": " + format_double(s.side_L()) +
             ", \"H\": " + format_double(s.side_H()) + "}";
      break;
    case SurfaceKind::RoundSphere:
      out += "sphere\", \"params\": {\"R\": " + format_double(s.radius()) +
             "}";
      break;
  }
  return out + "}";
}

Surface surface_from(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw GeometryError(errc::parse, "surface needs a kind string");
  const std::string kind = j["kind"].get<std::string>();
  const json params = j.value("params", json::object());
  if (kind == "plane") return Surface::plane();
  if (kind == "torus") {
    if (!params.contains("L"))
      throw GeometryError(errc::parse, "torus surface needs params.L");
    return Surface::torus(params["L"].get<double>(),
                          params.value("H", 1.0));
  }
  if (kind == "sphere") {
    if (!params.contains("R"))
      throw GeometryError(errc::parse, "sphere surface needs params.R");
    return Surface::sphere(params["R"].get<double>());
  }
  throw GeometryError(errc::parse, "unknown surface kind: " + kind);
}

json parse_or_throw(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw GeometryError(errc::parse, "malformed JSON");
  return j;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::string curve_to_json(const DiscreteCurve& curve) {
  std::string out = "{\n  \"surface\": " + surface_json(curve.surface()) +
                    ",\n  \"points\": [\n";
  for (int i = 0; i < curve.size(); ++i) {
    const Vec3 p = curve.point(i);
    out += "    [" + format_double(p.x()) + ", " + format_double(p.y()) +
           ", " + format_double(p.z()) + "]";
    out += (i + 1 < curve.size()) ? ",\n" : "\n";
  }
  out += "  ],\n  \"orientation\": \"left\"\n}\n";
  return out;
}

std::string region_to_json(const Region& region) {
  switch (region.kind()) {
    case RegionKind::Empty:
      return "{\n  \"surface\": " + surface_json(region.surface()) +
             ",\n  \"sentinel\": \"empty\"\n}\n";
    case RegionKind::Full:
      return "{\n  \"surface\": " + surface_json(region.surface()) +
             ",\n  \"sentinel\": \"full\"\n}\n";
    case RegionKind::Bounded:
      return curve_to_json(region.boundary());
  }
  throw GeometryError(errc::parse, "unknown region kind");
}

Region region_from_json(const std::string& text) {
  const json j = parse_or_throw(text);
  if (!j.is_object() || !j.contains("surface"))
    throw GeometryError(errc::parse, "snapshot needs a surface object");
  const Surface surf = surface_from(j["surface"]);
  if (j.contains("sentinel")) {
    const std::string s = j["sentinel"].get<std::string>();
    if (s == "empty") return Region::empty(surf);
    if (s == "full") return Region::full(surf);
    throw GeometryError(errc::parse, "unknown sentinel: " + s);
  }
  if (!j.contains("points") || !j["points"].is_array())
    throw GeometryError(errc::parse, "snapshot needs a points array");
  if (j.contains("orientation") &&
      j["orientation"].get<std::string>() != "left")
    throw GeometryError(errc::parse, "orientation must be \"left\"");
  std::vector<Vec3> pts;
  pts.reserve(j["points"].size());
  for (const json& row : j["points"]) {
    if (!row.is_array() || row.size() < 2 || row.size() > 3)
      throw GeometryError(errc::parse, "point rows need 2 or 3 numbers");
    for (const json& v : row)
      if (!v.is_number())
        throw GeometryError(errc::parse, "point rows need 2 or 3 numbers");
    const double z = row.size() == 3 ? row[2].get<double>() : 0.0;
    pts.emplace_back(row[0].get<double>(), row[1].get<double>(), z);
  }
  return Region::bounded(DiscreteCurve(surf, pts));
}

DiscreteCurve curve_from_json(const std::string& text) {
  Region region = region_from_json(text);
  if (region.is_sentinel())
    throw GeometryError(errc::parse, "expected a boundary curve, got a sentinel");
  return region.boundary();
}

std::string fc_to_json(const FcValue& value) {
  return "{\n  \"length\": " + format_double(value.length) +
         ",\n  \"area\": " + format_double(value.area) +
         ",\n  \"fc\": " + format_double(value.value) + "\n}\n";
}

std::string trajectory_csv(const FlowResult& result) {
  std::string out =
      "step,t,F_c,length,area,k_min,k_max,grad_norm,self_intersecting\n";
  for (const DiagRow& r : result.rows) {
    out += std::to_string(r.step) + "," + format_double(r.t) + "," +
           format_double(r.fc) + "," + format_double(r.length) + "," +
           format_double(r.area) + "," + format_double(r.k_min) + "," +
           format_double(r.k_max) + "," + format_double(r.grad_norm) + "," +
           (r.self_intersecting ? "1" : "0") + "\n";
  }
  return out;
}

std::string width_csv(const WidthEstimate& estimate) {
  std::string out = "t,F_c,length,area\n";
  for (const ProfileRow& r : estimate.profile)
    out += format_double(r.t) + "," + format_double(r.fc) + "," +
           format_double(r.length) + "," + format_double(r.area) + "\n";
  return out;
}

std::string width_to_json(const WidthEstimate& estimate) {
  return "{\n  \"c\": " + format_double(estimate.c) +
         ",\n  \"n_slices\": " + std::to_string(estimate.n_slices) +
         ",\n  \"t_star\": " + format_double(estimate.t_star) +
         ",\n  \"value\": " + format_double(estimate.value) + "\n}\n";
}

std::string wedge_report_json(const WedgeRounding& rounding) {
  return "{\n  \"epsilon\": " + format_double(rounding.epsilon) +
         ",\n  \"delta_fc\": " + format_double(rounding.delta_fc) +
         ",\n  \"delta_length\": " + format_double(rounding.delta_length) +
         ",\n  \"delta_area\": " + format_double(rounding.delta_area) +
         ",\n  \"arc_k_min\": " + format_double(rounding.arc_k_min) +
         ",\n  \"arc_k_max\": " + format_double(rounding.arc_k_max) +
         "\n}\n";
}

std::string lens_table_csv(const Surface& torus,
                           const std::vector<double>& c_values) {
  std::string out = "c,exact_length,exact_area,exact_fc,defect_over_c2\n";
  const double H = torus.side_H();
  for (double c : c_values) {
    out += format_double(c) + ",";
    try {
      const double len = lens_exact_length(c, H);
      const double area = lens_exact_area(c, H);
      const double fc = len - c * area;
      const double ratio = (2.0 * H - fc) / (c * c);
      if (2.0 * (1.0 / c - std::sqrt(1.0 / (c * c) - 0.25 * H * H)) >=
          torus.side_L())
        throw GeometryError(errc::infeasible, "lens wider than the torus");
      out += format_double(len) + "," + format_double(area) + "," +
             format_double(fc) + "," + format_double(ratio) + "\n";
    } catch (const GeometryError&) {
      out += "infeasible,infeasible,infeasible,infeasible\n";
    }
  }
  return out;
}

std::string manifest_json(const RunManifest& manifest) {
  std::string out = "{\n  \"command\": \"" + escape(manifest.command) +
                    "\",\n  \"parameters\": {";
  for (std::size_t i = 0; i < manifest.parameters.size(); ++i) {
    out += (i ? ", " : "") + std::string("\"") +
           escape(manifest.parameters[i].first) + "\": \"" +
           escape(manifest.parameters[i].second) + "\"";
  }
  out += "},\n  \"inputs\": [";
  for (std::size_t i = 0; i < manifest.inputs.size(); ++i)
    out += (i ? ", " : "") + std::string("\"") + escape(manifest.inputs[i]) +
           "\"";
  out += "],\n  \"outputs\": [";
  for (std::size_t i = 0; i < manifest.outputs.size(); ++i)
    out += (i ? ", " : "") + std::string("\"") + escape(manifest.outputs[i]) +
           "\"";
  out += "],\n  \"seed\": " + std::to_string(manifest.seed) +
         ",\n  \"tool_version\": \"" + escape(manifest.tool_version) +
         "\"\n}\n";
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw GeometryError(errc::parse, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw GeometryError(errc::parse, "cannot write file: " + path);
  out << text;
}

}  // namespace cflow
