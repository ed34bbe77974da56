// Copyright 2026 The lanepipe Authors
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

#include "lanepipe/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "lanepipe/control_units.hpp"
#include "lanepipe/error.hpp"
#include "lanepipe/i2c_core.hpp"
#include "lanepipe/image.hpp"
#include "lanepipe/lane_pipeline.hpp"
#include "lanepipe/refmodel.hpp"
#include "lanepipe/scenario.hpp"
#include "lanepipe/serialize.hpp"
#include "lanepipe/synth.hpp"

namespace lanepipe::cli {

namespace {

using nlohmann::json;

// Failure carrying the exit code it maps to.
struct CommandError : std::runtime_error {
  CommandError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

FrameGeometry parse_geometry(const std::string& text) {
  const auto x = text.find_first_of("xX");
  FrameGeometry g;
  try {
    if (x == std::string::npos) throw std::invalid_argument("no separator");
    std::size_t used = 0;
    g.width = std::stoi(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument("width");
    const std::string h = text.substr(x + 1);
    g.height = std::stoi(h, &used);
    if (used != h.size()) throw std::invalid_argument("height");
  } catch (const std::logic_error&) {
    throw ConfigError("geometry must look like WxH, got `" + text + "`");
  }
  g.validate();
  return g;
}

std::uint8_t parse_byte_value(const std::string& text, unsigned max, const char* what) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &used, 0);
  } catch (const std::logic_error&) {
    throw ConfigError(std::string(what) + " must be a number, got `" + text + "`");
  }
  if (used != text.size() || v > max) throw ConfigError(std::string(what) + " out of range: `" + text + "`");
  return static_cast<std::uint8_t>(v);
}

std::vector<std::uint8_t> parse_hex_bytes(std::string text) {
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) text = text.substr(2);
  if (text.empty() || text.size() % 2 != 0) throw ConfigError("hex data needs an even number of digits");
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < text.size(); i += 2) {
    out.push_back(parse_byte_value("0x" + text.substr(i, 2), 0xFF, "hex data"));
  }
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError(kIoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw CommandError(kIoError, "cannot write " + out_path);
  f << text;
  if (!f) throw CommandError(kIoError, "failed writing " + out_path);
}

struct Deviation {
  double max_abs = 0.0;
  double mean_abs = 0.0;
};

Deviation deviation(const GrayImage& actual, const ref::FloatFrame& expected) {
  Deviation d;
  double total = 0.0;
  for (std::size_t i = 0; i < actual.pixels.size(); ++i) {
    const double e = std::abs(actual.pixels[i] - expected.samples[i]);
    d.max_abs = std::max(d.max_abs, e);
    total += e;
  }
  if (!actual.pixels.empty()) d.mean_abs = total / static_cast<double>(actual.pixels.size());
  return d;
}

std::size_t mismatches(const GrayImage& a, const GrayImage& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) n += a.pixels[i] != b.pixels[i];
  return n;
}

json compare_with_reference(const FrameResult& result, const RgbImage& image, const PipelineConfig& cfg) {
  const auto oracle = ref::pipeline_ref(image, cfg.sobel.threshold, cfg.decision, cfg.weights);
  const auto gray_f = ref::gray_float_frame(image);
  const auto avg_f = ref::conv2d_ref(gray_f, ref::kBoxKernel);

  // Float Sobel on the float chain, binarized with the same threshold.
  GrayImage sobel_f(image.width, image.height);
  {
    ref::Kernel3x3 kx{}, ky{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        kx[i][j] = ref::kSobelX[i][j];
        ky[i][j] = ref::kSobelY[i][j];
      }
    }
    const auto gx = ref::conv2d_ref(avg_f, kx);
    const auto gy = ref::conv2d_ref(avg_f, ky);
    for (std::size_t i = 0; i < sobel_f.pixels.size(); ++i) {
      sobel_f.pixels[i] = std::abs(gx.samples[i]) + std::abs(gy.samples[i]) >= cfg.sobel.threshold ? 255 : 0;
    }
  }

  const Deviation gray_dev = deviation(result.gray, gray_f);
  const Deviation avg_dev = deviation(result.avg, avg_f);
  return {
      {"gray",
       {{"max_abs_vs_float", gray_dev.max_abs},
        {"mean_abs_vs_float", gray_dev.mean_abs},
        {"mismatches_vs_integer", mismatches(result.gray, oracle.gray)}}},
      {"avg",
       {{"max_abs_vs_float", avg_dev.max_abs},
        {"mean_abs_vs_float", avg_dev.mean_abs},
        {"mismatches_vs_integer", mismatches(result.avg, oracle.avg)}}},
      {"sobel",
       {{"mismatches_vs_float", mismatches(result.binary, sobel_f)},
        {"mismatches_vs_integer", mismatches(result.binary, oracle.binary)}}},
      {"lane_report_matches", result.report == oracle.report},
  };
}

struct PipelineArgs {
  std::string image;
  std::string geometry = "416x416";
  std::uint64_t clock_hz = kDefaultClockHz;
  unsigned sobel_threshold = 100;
  std::string gray_weights = "77,150,29";
  std::string out;
  std::vector<std::string> dump_stages;
  std::string dump_prefix = "stage";
  std::string dump_windows;
  bool compare = false;
};

int cmd_pipeline(const PipelineArgs& a, std::ostream& out) {
  PipelineConfig cfg = PipelineConfig::for_geometry(parse_geometry(a.geometry));
  cfg.sobel.threshold = a.sobel_threshold;
  cfg.weights = GrayWeights::parse(a.gray_weights);
  if (a.clock_hz == 0) throw ConfigError("clock frequency must be positive");
  cfg.validate();

  RgbImage image;
  try {
    image = read_image(a.image);
  } catch (const ImageIoError& e) {
    throw CommandError(kIoError, e.what());
  }
  if (image.width != cfg.geometry.width || image.height != cfg.geometry.height) {
    throw ConfigError("image is " + std::to_string(image.width) + "x" + std::to_string(image.height) +
                      ", expected " + a.geometry + " (set --geometry)");
  }

  CaptureOptions capture;
  capture.stage_frames = a.compare || !a.dump_stages.empty();
  capture.windows = !a.dump_windows.empty();
  LanePipeline pipeline(cfg, capture);
  const FrameResult result = pipeline.run_frame(image);

  json report = to_json(make_run_report(result, a.clock_hz));
  if (a.compare) report["compare"] = compare_with_reference(result, image, cfg);

  for (const auto& name : a.dump_stages) {
    const GrayImage& img = name == "gray" ? result.gray : name == "avg" ? result.avg : result.binary;
    try {
      write_pgm(a.dump_prefix + "_" + name + ".pgm", img);
    } catch (const ImageIoError& e) {
      throw CommandError(kIoError, e.what());
    }
  }
  if (!a.dump_windows.empty()) {
    std::string csv = "row,col,t0,t1,t2,t3,t4,t5,t6,t7,t8\n";
    for (const auto& w : result.windows) {
      csv += std::to_string(w.row) + "," + std::to_string(w.col);
      for (auto t : w.taps) csv += "," + std::to_string(t);
      csv += "\n";
    }
    emit(csv, a.dump_windows, out);
  }
  emit(report.dump(2) + "\n", a.out, out);
  return kOk;
}

struct ScenarioArgs {
  std::string lux;
  std::string temp;
  std::uint64_t poll_ms = 100;
  unsigned light_threshold = 2000;
  std::uint64_t clock_hz = kDefaultClockHz;
  std::uint64_t scl_hz = 100'000;
  std::string light_address = "0x23";
  std::string temp_address = "0x48";
  std::string out;
};

std::vector<StimulusPoint> load_stimulus(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return parse_stimulus(text);
  } catch (const TraceFormatError& e) {
    throw CommandError(kIoError, path + ": " + e.what());
  }
}

int cmd_scenario(const ScenarioArgs& a, std::ostream& out) {
  ScenarioConfig cfg;
  cfg.poll_ms = a.poll_ms;
  cfg.light.threshold_12bit = a.light_threshold;
  cfg.light.validate();
  cfg.system_hz = a.clock_hz;
  cfg.scl_hz = a.scl_hz;
  cfg.light_address = parse_byte_value(a.light_address, 0x7F, "--light-address");
  cfg.temperature_address = parse_byte_value(a.temp_address, 0x7F, "--temp-address");
  if (cfg.light_address == cfg.temperature_address) throw ConfigError("sensor addresses must differ");
  if (cfg.poll_ms == 0) throw ConfigError("--poll-ms must be positive");
  i2c::ClockDivider check(cfg.system_hz, cfg.scl_hz);
  (void)check;

  const auto lux = load_stimulus(a.lux);
  const auto temp = load_stimulus(a.temp);
  emit(control_log_csv(run_scenario(lux, temp, cfg)), a.out, out);
  return kOk;
}

struct TraceArgs {
  std::string preload;
  std::string address = "0x48";
  std::string reg = "0x00";
  std::size_t read_bytes = 2;
  std::string write_hex;
  bool loopback = false;
  bool inject_fault = false;
  std::uint64_t clock_hz = kDefaultClockHz;
  std::uint64_t scl_hz = 100'000;
  std::string out;
};

int cmd_trace(const TraceArgs& a, std::ostream& out, std::ostream& err) {
  const std::uint8_t address = parse_byte_value(a.address, 0x7F, "--address");
  const std::uint8_t reg = parse_byte_value(a.reg, 0xFF, "--register");
  const i2c::ClockDivider divider(a.clock_hz, a.scl_hz);
  std::vector<std::uint8_t> data;
  if (!a.write_hex.empty()) data = parse_hex_bytes(a.write_hex);
  if (a.loopback && data.empty()) throw ConfigError("--loopback needs --write data");
  if (a.read_bytes == 0) throw ConfigError("--read must be at least 1");

  i2c::Bus bus;
  bus.attach(i2c::SensorDevice::light_sensor());
  bus.attach(i2c::SensorDevice::temperature_sensor());
  if (!a.preload.empty()) {
    const auto entries = i2c::parse_preload(read_text(a.preload));
    i2c::apply_preload(bus, entries);
  }

  i2c::Master master(bus, divider);
  if (a.inject_fault) master.set_fault({.sda_glitch_at_bit = 3});

  std::vector<i2c::Transaction> transactions;
  if (!data.empty()) {
    transactions.push_back(master.write(address, reg, data));
    if (a.loopback) {
      master.set_fault({});
      transactions.push_back(master.read(address, reg, data.size()));
    }
  } else {
    transactions.push_back(master.read(address, reg, a.read_bytes));
  }

  std::vector<i2c::Event> events;
  std::vector<std::string> violations;
  for (const auto& t : transactions) {
    const auto checked = i2c::check_protocol(t.wire);
    violations.insert(violations.end(), checked.violations.begin(), checked.violations.end());
    events.insert(events.end(), t.events.begin(), t.events.end());
    if (!t.acked) err << "transaction to 0x" << std::hex << int{address} << std::dec << " was not acknowledged\n";
  }
  emit(i2c::events_to_csv(events), a.out, out);

  if (!violations.empty()) {
    for (const auto& v : violations) err << "protocol violation: " << v << "\n";
    return kProtocolViolation;
  }
  if (a.loopback && transactions.back().payload != data) {
    err << "loopback mismatch: read back data differs from the written bytes\n";
    return kProtocolViolation;
  }
  return kOk;
}

struct SynthArgs {
  std::string out;
  std::string geometry = "416x416";
  int max_lanes = 4;
  double noise = 0.0;
  std::optional<std::uint64_t> seed;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  const FrameGeometry g = parse_geometry(a.geometry);
  const DecisionConfig cfg = DecisionConfig::for_geometry(g);
  std::mt19937_64 rng(a.seed ? *a.seed : synth::seed_from_env());
  const auto boundaries =
      synth::random_boundaries(rng, g.width, cfg.center_column, 2 * cfg.merge_gap, 8, a.max_lanes + 1);
  RgbImage img = synth::road_image(g.width, g.height, boundaries);
  if (a.noise > 0.0) synth::salt_and_pepper(img, a.noise, rng);
  try {
    write_ppm(a.out, img);
  } catch (const ImageIoError& e) {
    throw CommandError(kIoError, e.what());
  }
  out << json{{"boundaries", boundaries}}.dump() << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cycle-level lane detection pipeline and sensor control unit simulator", "lanepipe"};
  app.require_subcommand(1);

  PipelineArgs pa;
  auto* pipeline = app.add_subcommand("pipeline", "Stream one image through the pipeline");
  pipeline->add_option("image", pa.image, "PPM (P6) or PNG input")->required();
  pipeline->add_option("--geometry", pa.geometry, "Frame size WxH")->capture_default_str();
  pipeline->add_option("--clock-hz", pa.clock_hz, "System clock in Hz")->capture_default_str();
  pipeline->add_option("--sobel-threshold", pa.sobel_threshold, "Edge threshold on |Gx|+|Gy|")
      ->capture_default_str();
  pipeline->add_option("--gray-weights", pa.gray_weights, "Q0.8 luma weights R,G,B (sum 256)")
      ->capture_default_str();
  pipeline->add_option("--out", pa.out, "Write the JSON report here instead of stdout");
  pipeline->add_option("--dump-stage", pa.dump_stages, "Write a stage output as PGM")
      ->check(CLI::IsMember({"gray", "avg", "sobel"}));
  pipeline->add_option("--dump-prefix", pa.dump_prefix, "Path prefix for --dump-stage files")
      ->capture_default_str();
  pipeline->add_option("--dump-windows", pa.dump_windows, "Write averaging windows as CSV");
  pipeline->add_flag("--compare", pa.compare, "Report deviation from the reference model");

  ScenarioArgs sa;
  auto* scenario = app.add_subcommand("scenario", "Run sensor traces through the control units");
  scenario->add_option("lux_trace", sa.lux, "CSV time_ms,raw_value of the light sensor")->required();
  scenario->add_option("temp_trace", sa.temp, "CSV time_ms,raw_value of the temperature sensor")->required();
  scenario->add_option("--poll-ms", sa.poll_ms, "Polling interval")->capture_default_str();
  scenario->add_option("--light-threshold", sa.light_threshold, "12-bit lamp threshold")->capture_default_str();
  scenario->add_option("--clock-hz", sa.clock_hz, "System clock in Hz")->capture_default_str();
  scenario->add_option("--scl-hz", sa.scl_hz, "Target SCL frequency")->capture_default_str();
  scenario->add_option("--light-address", sa.light_address, "Light sensor address")->capture_default_str();
  scenario->add_option("--temp-address", sa.temp_address, "Temperature sensor address")->capture_default_str();
  scenario->add_option("--out", sa.out, "Write the log here instead of stdout");

  TraceArgs ta;
  auto* trace = app.add_subcommand("trace", "Emit the wire-level trace of one I2C transaction");
  trace->add_option("--preload", ta.preload, "Register preload file (address,register,hex_bytes)");
  trace->add_option("--address", ta.address, "7-bit device address")->capture_default_str();
  trace->add_option("--register", ta.reg, "Register pointer")->capture_default_str();
  auto* read_opt = trace->add_option("--read", ta.read_bytes, "Bytes to read")->capture_default_str();
  auto* write_opt = trace->add_option("--write", ta.write_hex, "Hex bytes to write instead of reading");
  read_opt->excludes(write_opt);
  trace->add_flag("--loopback", ta.loopback, "Read back after --write and compare");
  trace->add_flag("--inject-fault", ta.inject_fault, "Glitch SDA while SCL is high");
  trace->add_option("--clock-hz", ta.clock_hz, "System clock in Hz")->capture_default_str();
  trace->add_option("--scl-hz", ta.scl_hz, "Target SCL frequency")->capture_default_str();
  trace->add_option("--out", ta.out, "Write the CSV here instead of stdout");

  SynthArgs ya;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic road image (seed: LANEPIPE_SEED)");
  synth_cmd->add_option("out", ya.out, "Output PPM path")->required();
  synth_cmd->add_option("--geometry", ya.geometry, "Frame size WxH")->capture_default_str();
  synth_cmd->add_option("--max-lanes", ya.max_lanes, "Upper bound on lanes")->capture_default_str()
      ->check(CLI::Range(1, 20));
  synth_cmd->add_option("--noise", ya.noise, "Salt-and-pepper fraction")->check(CLI::Range(0.0, 1.0));
  synth_cmd->add_option("--seed", ya.seed, "Overrides LANEPIPE_SEED");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kValidationError;
  }

  try {
    if (pipeline->parsed()) return cmd_pipeline(pa, out);
    if (scenario->parsed()) return cmd_scenario(sa, out);
    if (trace->parsed()) return cmd_trace(ta, out, err);
    if (synth_cmd->parsed()) return cmd_synth(ya, out);
  } catch (const CommandError& e) {
    err << "error: " << e.what() << "\n";
    return e.code;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kValidationError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace lanepipe::cli
