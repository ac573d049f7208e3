#include "cli.hpp"

#include "craterrim/dem_io.hpp"
#include "craterrim/eval.hpp"
#include "craterrim/fusion.hpp"
#include "craterrim/io.hpp"
#include "craterrim/morphometry.hpp"
#include "craterrim/pipeline.hpp"
#include "craterrim/postproc.hpp"
#include "craterrim/render.hpp"
#include "craterrim/synth.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>

namespace craterrim::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  return in;
}

// Writes to a file when a path is given, otherwise to the command's stdout.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw std::runtime_error(fmt::format("cannot write '{}'", path));
    stream_ = file_.get();
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

DemFormat dem_format_for(const std::string& path, const std::string& name) {
  return name.empty() ? guess_dem_format(path) : parse_dem_format(name);
}

bool is_rim_stream(const std::string& path) {
  const auto ext = fs::path(path).extension().string();
  return ext == ".jsonl" || ext == ".ndjson" || ext == ".json";
}

// Detections from either a CSV table or a rim stream.
std::vector<Detection> read_detection_file(const std::string& path) {
  auto in = open_input(path);
  if (!is_rim_stream(path)) return read_detections(in);
  std::vector<Detection> out;
  for (const auto& rec : read_rim_stream(in)) out.push_back(rec.to_detection());
  return out;
}

std::string sanitize(const std::string& id) {
  std::string s = id;
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') c = '_';
  return s.empty() ? "crater" : s;
}

// ---------------------------------------------------------------- extract

struct ExtractOptions {
  std::string dem, catalog, format, output, debug_dir;
  bool pixel_catalog = false;
  bool debug_steps = false;
  double theta_step = 2.0;
  double l_step = 5.0;
  long min_area = 0;
  int close_radius = 2;
  int open_radius = 0;
  double min_diameter_km = 5.0;
  double max_diameter_km = 20.0;
  unsigned jobs = 1;
};

int cmd_extract(const ExtractOptions& o, std::ostream& out, std::ostream& err) {
  if (o.min_diameter_km > o.max_diameter_km) throw UsageError("--min-diameter-km exceeds --max-diameter-km");
  if (o.jobs < 1) throw UsageError("--jobs must be >= 1");

  const DemRaster dem = load_dem(o.dem, dem_format_for(o.dem, o.format));
  auto cin = open_input(o.catalog);
  const auto catalog = read_catalog(cin, o.pixel_catalog ? CatalogKind::Pixel : CatalogKind::Geographic, dem.geo);

  std::vector<CraterRecord> craters;
  std::size_t off_raster = 0, out_of_range = 0;
  for (const auto& c : catalog) {
    const double d_km = c.diameter_km.value_or(2.0 * c.radius_px * dem.resolution() / 1000.0);
    if (d_km < o.min_diameter_km || d_km > o.max_diameter_km) {
      ++out_of_range;
      continue;
    }
    if (!dem.contains(c.center)) {
      ++off_raster;
      continue;
    }
    craters.push_back(c);
  }
  if (off_raster > 0) fmt::print(err, "warning: {} catalog rows outside the raster skipped\n", off_raster);

  TraceParams params;
  params.theta_step_deg = o.theta_step;
  params.l_step = o.l_step;
  if (o.min_area > 0) params.morph.min_area = o.min_area;
  params.morph.close_se = {ElementShape::Disk, o.close_radius};
  if (o.open_radius > 0) params.morph.open_se = StructuringElement{ElementShape::Disk, o.open_radius};
  azimuth_count(params.theta_step_deg);
  if (!(params.l_step > 0.0)) throw UsageError("--l-step must be positive");

  StepSink sink;
  fs::path step_dir;
  if (o.debug_steps) {
    step_dir = o.debug_dir.empty() ? fs::path("steps") : fs::path(o.debug_dir);
    fs::create_directories(step_dir);
    sink = [&step_dir](std::size_t, const CraterRecord& c, const RimRegionSteps& s) {
      const std::string stem = sanitize(c.id);
      write_pgm(step_dir / (stem + "_1_otsu.pgm"), s.otsu);
      write_pgm(step_dir / (stem + "_2_denoised.pgm"), s.denoised);
      write_pgm(step_dir / (stem + "_3_closed.pgm"), s.closed);
      write_pgm(step_dir / (stem + "_4_thinned.pgm"), s.thinned);
      write_pgm(step_dir / (stem + "_5_opened.pgm"), s.opened);
      std::ofstream meta(step_dir / (stem + "_window.json"));
      meta << json{{"x0", s.offset.x}, {"y0", s.offset.y}}.dump() << '\n';
    };
  }

  const SlopeRaster slope = compute_slope(dem);
  const auto results = extract_batch(dem, slope, craters, params, o.jobs, sink);

  Output sink_out(o.output, out);
  std::size_t written = 0, failed = 0;
  double fallback_sum = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i].rim) {
      ++failed;
      fmt::print(err, "warning: crater {}: {}\n", craters[i].id, results[i].error);
      continue;
    }
    RimRecord rec;
    rec.rim = *results[i].rim;
    write_rim_line(*sink_out, rec);
    fallback_sum += rec.rim.fallback_fraction();
    ++written;
  }
  fmt::print(err, "extract: {} rims, {} skipped off-raster, {} outside diameter range, {} failed\n", written,
             off_raster, out_of_range, failed);
  if (written > 0) fmt::print(err, "extract: mean fallback fraction {:.4f}\n", fallback_sum / written);
  return kOk;
}

// ------------------------------------------------------------ morphometry

struct MorphometryOptions {
  std::string dem, rims, format, output;
};

int cmd_morphometry(const MorphometryOptions& o, std::ostream& out, std::ostream& err) {
  const DemRaster dem = load_dem(o.dem, dem_format_for(o.dem, o.format));
  auto in = open_input(o.rims);
  const auto records = read_rim_stream(in);
  Output sink(o.output, out);
  write_morphometry_header(*sink);
  std::size_t failed = 0;
  for (const auto& rec : records) {
    try {
      write_morphometry_row(*sink, rec.rim.crater, compute_morphometry(dem, rec.rim), dem.geo);
    } catch (const std::exception& e) {
      ++failed;
      fmt::print(err, "warning: crater {}: {}\n", rec.rim.crater.id, e.what());
    }
  }
  fmt::print(err, "morphometry: {} rows, {} failed\n", records.size() - failed, failed);
  return kOk;
}

// --------------------------------------------------------------- postproc

struct PostprocOptions {
  std::string detections, dem, format, output;
  double m = kDefaultBoundaryMargin;
  double delta = kDefaultNmsThreshold;
  long width = 0;
  long height = 0;
  bool polygon_iou = false;
};

int cmd_postproc(const PostprocOptions& o, std::ostream& out, std::ostream& err) {
  if (!(o.m >= 0.0)) throw UsageError(fmt::format("--m must be >= 0, got {}", o.m));
  if (!(o.delta > 0.0 && o.delta < 1.0)) throw UsageError(fmt::format("--delta must lie in (0, 1), got {}", o.delta));
  fmt::print(err, "postproc: m={} delta={}\n", o.m, o.delta);

  std::optional<GeoReference> geo;
  Eigen::Index w = o.width, h = o.height;
  if (!o.dem.empty()) {
    const DemHeader hdr = load_dem_header(o.dem, dem_format_for(o.dem, o.format));
    geo = hdr.geo;
    if (w == 0) w = hdr.width;
    if (h == 0) h = hdr.height;
  }
  if (w <= 0 || h <= 0) throw UsageError("tile size unknown: pass --dem or --width and --height");

  const auto dets = read_detection_file(o.detections);
  const auto kept = remove_boundary_craters(dets, w, h, o.m);
  const auto survivors = nms(kept, o.delta, o.polygon_iou ? OverlapMeasure::Polygon : OverlapMeasure::Disk);

  Output sink(o.output, out);
  write_detection_header(*sink);
  for (const auto& d : survivors) write_detection_row(*sink, d, geo);
  fmt::print(err, "postproc: {} in, {} after boundary removal, {} after nms\n", dets.size(), kept.size(),
             survivors.size());
  return kOk;
}

// ------------------------------------------------------------------- fuse

struct FuseOptions {
  std::string a, b, output;
  double tau = kDefaultPseudoLabelThreshold;
  double delta_match = kDefaultMatchThreshold;
};

int cmd_fuse(const FuseOptions& o, std::ostream& out, std::ostream& err) {
  if (!(o.tau >= 0.0 && o.tau <= 1.0)) throw UsageError(fmt::format("--tau must lie in [0, 1], got {}", o.tau));
  if (!(o.delta_match >= 0.0 && o.delta_match < 1.0))
    throw UsageError(fmt::format("--delta-match must lie in [0, 1), got {}", o.delta_match));
  fmt::print(err, "fuse: tau={} delta-match={}\n", o.tau, o.delta_match);

  const bool streams = is_rim_stream(o.a) && is_rim_stream(o.b);
  const auto a = filter_pseudo_labels(read_detection_file(o.a), o.tau);
  const auto b = filter_pseudo_labels(read_detection_file(o.b), o.tau);
  const auto fused = fuse_detections(a, b, o.delta_match);

  Output sink(o.output, out);
  std::size_t counts[3] = {0, 0, 0};
  if (!streams) *sink << "tile_id,x_px,y_px,radius_px,confidence,lon_deg,lat_deg,diameter_km,provenance\n";
  for (const auto& f : fused) {
    ++counts[static_cast<int>(f.provenance)];
    if (streams && f.detection.rim) {
      RimRecord rec;
      rec.rim = *f.detection.rim;
      rec.rim.crater.id = f.detection.id;
      rec.confidence = f.detection.confidence;
      if (!f.detection.tile_id.empty()) rec.tile_id = f.detection.tile_id;
      rec.provenance = std::string(to_string(f.provenance));
      write_rim_line(*sink, rec);
    } else {
      std::ostringstream row;
      write_detection_row(row, f.detection, std::nullopt);
      std::string line = row.str();
      line.pop_back();
      *sink << line << ',' << to_string(f.provenance) << '\n';
    }
  }
  fmt::print(err, "fuse: {} pairs, {} only in a, {} only in b\n", counts[0], counts[1], counts[2]);
  return kOk;
}

// ------------------------------------------------------------------- eval

struct EvalOptions {
  std::string detections, truth, dem, format, pr_table, output;
  bool pixel_catalog = false;
  double center_tol = 1.0;
  double radius_tol = 0.25;
};

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string table_cell(const std::optional<double>& v, double scale) {
  return v ? fmt::format("{:.2f}", *v * scale) : std::string("-");
}

// Rows of label,precision,recall in percent; F-scores are recomputed.
int eval_pr_table(const EvalOptions& o, std::ostream& out, std::ostream& err) {
  auto in = open_input(o.pr_table);
  std::string line;
  std::size_t lineno = 0;
  json rows = json::array();
  fmt::print(err, "{:<24} {:>8} {:>8} {:>8} {:>8}\n", "row", "P", "R", "F1", "F2");
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (lineno == 1 && cells.size() >= 3 && cells[1] == "precision") continue;
    if (cells.size() < 3) throw ParseError(fmt::format("line {}: expected label,precision,recall", lineno));
    double p, r;
    try {
      p = std::stod(cells[1]);
      r = std::stod(cells[2]);
    } catch (const std::exception&) {
      throw ParseError(fmt::format("line {}: non-numeric precision or recall", lineno));
    }
    const FScores f = f_scores(p, r);
    rows.push_back({{"label", cells[0]}, {"precision", p}, {"recall", r}, {"f1", optional_json(f.f1)},
                    {"f2", optional_json(f.f2)}});
    fmt::print(err, "{:<24} {:>8.2f} {:>8.2f} {:>8} {:>8}\n", cells[0], p, r, table_cell(f.f1, 1.0),
               table_cell(f.f2, 1.0));
  }
  Output sink(o.output, out);
  *sink << rows.dump(2) << '\n';
  return kOk;
}

int cmd_eval(const EvalOptions& o, std::ostream& out, std::ostream& err) {
  if (!o.pr_table.empty()) return eval_pr_table(o, out, err);
  if (o.detections.empty() || o.truth.empty()) throw UsageError("eval needs DETECTIONS and TRUTH, or --pr-table");
  if (!(o.center_tol > 0.0) || !(o.radius_tol >= 0.0)) throw UsageError("tolerances must be positive");

  GeoReference geo;
  if (!o.dem.empty()) geo = load_dem_header(o.dem, dem_format_for(o.dem, o.format)).geo;
  const auto dets = read_detection_file(o.detections);
  auto in = open_input(o.truth);
  const auto gt = read_catalog(in, o.pixel_catalog ? CatalogKind::Pixel : CatalogKind::Geographic, geo);

  const MatchReport rep = match_to_ground_truth(dets, gt, {o.center_tol, o.radius_tol});
  const json j = {{"tp", rep.tp},
                  {"fp", rep.fp},
                  {"fn", rep.fn},
                  {"precision", optional_json(rep.metrics.precision)},
                  {"recall", optional_json(rep.metrics.recall)},
                  {"f1", optional_json(rep.metrics.f1)},
                  {"f2", optional_json(rep.metrics.f2)}};
  Output sink(o.output, out);
  *sink << j.dump(2) << '\n';
  fmt::print(err, "{:>6} {:>6} {:>6} {:>8} {:>8} {:>8} {:>8}\n", "TP", "FP", "FN", "P%", "R%", "F1%", "F2%");
  fmt::print(err, "{:>6} {:>6} {:>6} {:>8} {:>8} {:>8} {:>8}\n", rep.tp, rep.fp, rep.fn,
             table_cell(rep.metrics.precision, 100.0), table_cell(rep.metrics.recall, 100.0),
             table_cell(rep.metrics.f1, 100.0), table_cell(rep.metrics.f2, 100.0));
  return kOk;
}

// ------------------------------------------------------------------ synth

struct SynthOptions {
  std::string spec, prefix, format = "grid-binary";
  double theta_step = 2.0;
};

int cmd_synth(const SynthOptions& o, std::ostream&, std::ostream& err) {
  auto in = open_input(o.spec);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(fmt::format("{}: {}", o.spec, e.what()));
  }
  const SyntheticTileFile file = synth_spec_from_json(j);
  const SyntheticScene scene = generate(file.craters, file.tile, o.theta_step);

  const DemFormat fmt_kind = parse_dem_format(o.format);
  const fs::path dem_path = o.prefix + (fmt_kind == DemFormat::GridBinary ? ".bin" : ".asc");
  if (dem_path.has_parent_path()) fs::create_directories(dem_path.parent_path());
  save_dem(dem_path, scene.dem, fmt_kind);

  std::ofstream truth(o.prefix + "_truth.jsonl", std::ios::binary);
  for (const auto& rim : scene.truth) write_rim_line(truth, RimRecord{rim, {}, {}, {}});
  std::ofstream catalog(o.prefix + "_catalog.csv", std::ios::binary);
  std::vector<CraterRecord> records;
  for (const auto& s : file.craters) records.push_back(catalog_record(s));
  write_pixel_catalog(catalog, records);
  if (!truth || !catalog) throw std::runtime_error(fmt::format("cannot write outputs for '{}'", o.prefix));

  fmt::print(err, "synth: {} craters, {} overlapping pairs, wrote {}\n", file.craters.size(), scene.overlaps.size(),
             dem_path.string());
  return kOk;
}

// ----------------------------------------------------------------- render

struct RenderOptions {
  std::string dem, rims, png, format;
};

int cmd_render(const RenderOptions& o, std::ostream&, std::ostream& err) {
  const DemRaster dem = load_dem(o.dem, dem_format_for(o.dem, o.format));
  auto in = open_input(o.rims);
  std::vector<RimPolygon> rims;
  for (auto& rec : read_rim_stream(in)) rims.push_back(std::move(rec.rim));
  write_png(o.png, render_overlay(dem, rims));
  fmt::print(err, "render: {} rims drawn to {}\n", rims.size(), o.png);
  return kOk;
}

// ----------------------------------------------------------------- config

// Finds --config in the raw arguments without a full parse.
std::optional<std::string> find_config(const std::vector<std::string>& args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

// Turns {"theta-step": 4, "pixel-catalog": true} into flag tokens. They are
// placed ahead of the user's flags, so explicit flags win.
std::vector<std::string> config_tokens(const std::string& path, const CLI::App& sub) {
  auto in = open_input(path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(fmt::format("config '{}': {}", path, e.what()));
  }
  if (!j.is_object()) throw UsageError(fmt::format("config '{}': expected a JSON object", path));
  std::vector<std::string> tokens;
  for (const auto& [key, value] : j.items()) {
    const std::string flag = "--" + key;
    const CLI::Option* opt = sub.get_option_no_throw(flag);
    if (opt == nullptr) throw UsageError(fmt::format("config '{}': unknown option '{}' for {}", path, key, sub.get_name()));
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back(flag);
    } else if (value.is_string()) {
      tokens.push_back(flag);
      tokens.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      tokens.push_back(flag);
      tokens.push_back(value.dump());
    } else {
      throw UsageError(fmt::format("config '{}': option '{}' must be a scalar", path, key));
    }
  }
  return tokens;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Crater rim extraction, morphometry and catalog tools", "craterrim"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();
  std::string config;
  app.add_option("--config", config, "JSON file of option values; explicit flags take precedence");

  ExtractOptions ex;
  auto* extract = app.add_subcommand("extract", "Trace crater rims and write one JSON record per crater");
  extract->add_option("dem", ex.dem, "DEM file")->required();
  extract->add_option("catalog", ex.catalog, "Catalog CSV")->required();
  extract->add_option("--format", ex.format, "DEM format: grid-binary or ascii-grid (default: by extension)");
  extract->add_flag("--pixel-catalog", ex.pixel_catalog, "Catalog columns are id,x_px,y_px,radius_px");
  extract->add_option("--theta-step", ex.theta_step, "Azimuth step, degrees")->capture_default_str();
  extract->add_option("--l-step", ex.l_step, "Search window shift, pixels")->capture_default_str();
  extract->add_option("--min-area", ex.min_area, "Speck removal area, px (0: max(8, 0.05 r))")->capture_default_str();
  extract->add_option("--close-radius", ex.close_radius, "Closing disk radius")->capture_default_str();
  extract->add_option("--open-radius", ex.open_radius, "Opening disk radius (0: off)")->capture_default_str();
  extract->add_option("--min-diameter-km", ex.min_diameter_km)->capture_default_str();
  extract->add_option("--max-diameter-km", ex.max_diameter_km)->capture_default_str();
  extract->add_option("--jobs,-j", ex.jobs, "Worker threads")->capture_default_str();
  extract->add_flag("--debug-steps", ex.debug_steps, "Dump each morphology step as PGM");
  extract->add_option("--debug-dir", ex.debug_dir, "Directory for --debug-steps (default: steps)");
  extract->add_option("-o,--output", ex.output, "Output file (default: stdout)");

  MorphometryOptions mo;
  auto* morph = app.add_subcommand("morphometry", "Compute shape indices for traced rims");
  morph->add_option("dem", mo.dem, "DEM file")->required();
  morph->add_option("rims", mo.rims, "Rim records, one JSON object per line")->required();
  morph->add_option("--format", mo.format, "DEM format");
  morph->add_option("-o,--output", mo.output, "Output CSV (default: stdout)");

  PostprocOptions po;
  auto* post = app.add_subcommand("postproc", "Boundary removal, NMS and geographic conversion");
  post->add_option("detections", po.detections, "Detection CSV or rim stream")->required();
  post->add_option("--m", po.m, "Boundary margin, pixels")->capture_default_str();
  post->add_option("--delta", po.delta, "NMS IoU threshold")->capture_default_str();
  post->add_option("--dem", po.dem, "DEM supplying tile size and georeference");
  post->add_option("--format", po.format, "DEM format");
  post->add_option("--width", po.width, "Tile width when no DEM is given");
  post->add_option("--height", po.height, "Tile height when no DEM is given");
  post->add_flag("--polygon-iou", po.polygon_iou, "Use rim polygon IoU (rim stream input)");
  post->add_option("-o,--output", po.output, "Output CSV (default: stdout)");

  FuseOptions fo;
  auto* fuse = app.add_subcommand("fuse", "Merge two detection sets");
  fuse->add_option("a", fo.a, "First set (CSV or rim stream)")->required();
  fuse->add_option("b", fo.b, "Second set (CSV or rim stream)")->required();
  fuse->add_option("--tau", fo.tau, "Confidence filter, inclusive")->capture_default_str();
  fuse->add_option("--delta-match", fo.delta_match, "Pairing IoU threshold")->capture_default_str();
  fuse->add_option("-o,--output", fo.output, "Output file (default: stdout)");

  EvalOptions eo;
  auto* eval = app.add_subcommand("eval", "Score detections against a ground-truth catalog");
  eval->add_option("detections", eo.detections, "Detection CSV or rim stream");
  eval->add_option("truth", eo.truth, "Ground-truth catalog CSV");
  eval->add_flag("--pixel-catalog", eo.pixel_catalog, "Truth columns are id,x_px,y_px,radius_px");
  eval->add_option("--dem", eo.dem, "DEM supplying the georeference for a geographic catalog");
  eval->add_option("--format", eo.format, "DEM format");
  eval->add_option("--center-tol", eo.center_tol, "Centre distance / min radius limit")->capture_default_str();
  eval->add_option("--radius-tol", eo.radius_tol, "Relative radius difference limit")->capture_default_str();
  eval->add_option("--pr-table", eo.pr_table, "CSV of label,precision,recall (percent); prints F1 and F2");
  eval->add_option("-o,--output", eo.output, "Output JSON (default: stdout)");

  SynthOptions so;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic DEM with ground-truth rims");
  synth->add_option("spec", so.spec, "Scene JSON")->required();
  synth->add_option("prefix", so.prefix, "Output prefix")->required();
  synth->add_option("--format", so.format, "DEM format")->capture_default_str();
  synth->add_option("--theta-step", so.theta_step, "Ground-truth azimuth step")->capture_default_str();

  RenderOptions ro;
  auto* render = app.add_subcommand("render", "Draw rims over a grayscale DEM");
  render->add_option("dem", ro.dem, "DEM file")->required();
  render->add_option("rims", ro.rims, "Rim records")->required();
  render->add_option("png", ro.png, "Output PNG")->required();
  render->add_option("--format", ro.format, "DEM format");

  try {
    std::vector<std::string> argv(args);
    if (const auto cfg = find_config(argv)) {
      for (std::size_t i = 1; i < argv.size(); ++i) {
        CLI::App* sub = app.get_subcommand_no_throw(argv[i]);
        if (sub == nullptr) continue;
        const auto tokens = config_tokens(*cfg, *sub);
        argv.insert(argv.begin() + static_cast<std::ptrdiff_t>(i) + 1, tokens.begin(), tokens.end());
        break;
      }
    }
    // CLI11 consumes arguments from the back.
    std::vector<std::string> reversed(argv.rbegin(), argv.rend() - 1);
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsage;
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kFailure;
  }

  try {
    if (*extract) return cmd_extract(ex, out, err);
    if (*morph) return cmd_morphometry(mo, out, err);
    if (*post) return cmd_postproc(po, out, err);
    if (*fuse) return cmd_fuse(fo, out, err);
    if (*eval) return cmd_eval(eo, out, err);
    if (*synth) return cmd_synth(so, out, err);
    if (*render) return cmd_render(ro, out, err);
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kFailure;
  }
  return kUsage;
}

}  // namespace craterrim::cli
