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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Every tolerance and time budget is fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "lanepipe/control_units.hpp"
#include "lanepipe/filters.hpp"
#include "lanepipe/i2c_core.hpp"
#include "lanepipe/lane_pipeline.hpp"
#include "lanepipe/refmodel.hpp"
#include "lanepipe/synth.hpp"
#include "support.hpp"

using namespace lanepipe;

namespace {

constexpr Cycle kGrayLatency = 1;
constexpr Cycle kFilterLatency = 422;
constexpr Cycle kLatencySlack = 16;
constexpr double kFrameTimeLowMs = 1.1466;
constexpr double kFrameTimeHighMs = 1.1934;
constexpr double kGrayTolerance = 2.0;
constexpr int kCleanBoundaryTolerance = 2;
constexpr int kNoisyBoundaryTolerance = 3;
constexpr double kNoisyHitRate = 0.95;
constexpr double kNoiseFraction = 0.01;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      else detail.str("");
      pass = false;
      detail << what;
    }
  }
};

struct Criterion {
  const char* id;
  const char* title;
  double budget_s;
  std::function<void(Verdict&)> body;
};

// AC1
void stage_latencies_exact(Verdict& v) {
  LanePipeline lp(PipelineConfig{});
  const auto r = lp.run_frame(RgbImage(416, 416, {20, 20, 20}));
  v.require(r.stages[0].latency() == kGrayLatency, "gray latency");
  v.require(r.stages[1].latency() == kFilterLatency, "average latency");
  v.require(r.stages[2].latency() == kFilterLatency, "sobel latency");
  for (int w : {3, 5, 16, 100, 416}) {
    LanePipeline small(PipelineConfig::for_geometry({w, 6}));
    const auto s = small.run_frame(RgbImage(w, 6));
    const Cycle want = static_cast<Cycle>(w) + 6;
    v.require(s.stages[1].latency() == want && s.stages[2].latency() == want,
              "width " + std::to_string(w) + " latency != width+6");
  }
  if (v.pass) v.detail << "gray 1, avg 422, sobel 422; width+6 at 3,5,16,100,416";
}

// AC2
void throughput(Verdict& v) {
  const std::vector<int> b{100, 300};
  LanePipeline lp(PipelineConfig{});
  const auto r = lp.run_frame(synth::road_image(416, 416, b));
  const auto& sobel = r.stages[2];
  const Cycle n = 416u * 416u;
  v.require(sobel.transfers_out == n, "binary pixel count " + std::to_string(sobel.transfers_out));
  const Cycle produced_by = *sobel.last_output_transfer_cycle + 1;
  v.require(produced_by <= n + 845 + kLatencySlack, "binary frame took " + std::to_string(produced_by) + " cycles");
  const Cycle span = *sobel.last_output_transfer_cycle - *sobel.first_output_transfer_cycle + 1;
  v.require(span == sobel.transfers_out, "steady-state rate below 1 pixel/cycle");
  v.require(r.stats.stall_cycles == 0, "stalls with an always-ready sink");
  if (v.pass) {
    v.detail << n << " pixels by cycle " << produced_by << " (limit " << n + 845 + kLatencySlack
             << "), 1 pixel/cycle over " << span << " cycles";
  }
}

// AC3
void frame_time(Verdict& v) {
  const std::vector<int> b{100, 300};
  LanePipeline lp(PipelineConfig{});
  const auto r = lp.run_frame(synth::road_image(416, 416, b));
  const double ms = static_cast<double>(r.stats.cycles_elapsed) / static_cast<double>(kDefaultClockHz) * 1e3;
  v.require(ms >= kFrameTimeLowMs && ms <= kFrameTimeHighMs, "frame time " + std::to_string(ms) + " ms");
  v.detail << r.stats.cycles_elapsed << " cycles = " << ms << " ms at 150 MHz";
}

// AC4
void gray_accuracy(Verdict& v) {
  double worst = 0.0;
  for (unsigned x = 0; x < (1u << 24); ++x) {
    const PixelRgb p{static_cast<std::uint8_t>(x >> 16), static_cast<std::uint8_t>(x >> 8),
                     static_cast<std::uint8_t>(x)};
    worst = std::max(worst, std::abs(to_gray(p) - ref::gray_float(p)));
  }
  v.require(worst <= kGrayTolerance, "max error " + std::to_string(worst));
  v.detail << "max |fixed - float| = " << worst << " over 2^24 inputs";
}

// AC5
void oracle_equivalence(Verdict& v) {
  auto rng = testing::rng_for(5);
  auto check = [&](int w, int h) {
    const auto img = testing::random_rgb(rng, w, h);
    const auto cfg = PipelineConfig::for_geometry({w, h});
    LanePipeline lp(cfg, {.stage_frames = true});
    const auto got = lp.run_frame(img);
    const auto gray = ref::gray_int_frame(img);
    const auto avg = ref::average_int(gray);
    const auto bin = ref::binarize_int(ref::sobel_int(avg), w, h, cfg.sobel.threshold);
    return got.avg == avg && got.binary == bin;
  };
  int bad = 0;
  for (int i = 0; i < 100; ++i) bad += !check(32, 32);
  for (int i = 0; i < 5; ++i) bad += !check(416, 416);
  v.require(bad == 0, std::to_string(bad) + " of 105 frames differ");
  if (v.pass) v.detail << "105 frames pixel-exact (100 at 32x32, 5 at 416x416)";
}

// AC6
void lane_decision(Verdict& v) {
  auto rng = testing::rng_for(6);
  const PipelineConfig cfg;
  LanePipeline lp(cfg);
  LanePipeline capture(cfg, {.stage_frames = true});
  int count_miss = 0, index_miss = 0, boundary_miss = 0;
  std::size_t noisy_total = 0, noisy_hits = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto b = synth::random_boundaries(rng, 416, cfg.decision.center_column, 2 * cfg.decision.merge_gap);
    const auto truth = locate(b, cfg.decision);

    const auto clean = lp.run_frame(synth::road_image(416, 416, b)).report;
    count_miss += clean.lane_count != b.size() - 1;
    index_miss += clean.current_index != truth.current_index;
    if (!clean.valid || std::abs(*clean.left_boundary - *truth.left_boundary) > kCleanBoundaryTolerance ||
        std::abs(*clean.right_boundary - *truth.right_boundary) > kCleanBoundaryTolerance) {
      ++boundary_miss;
    }

    auto noisy_img = synth::road_image(416, 416, b);
    synth::salt_and_pepper(noisy_img, kNoiseFraction, rng);
    const auto noisy = capture.run_frame(noisy_img);
    const auto found = cluster_boundaries(column_histogram(noisy.binary.pixels, cfg.geometry, cfg.decision),
                                          cfg.decision);
    for (int t : b) {
      ++noisy_total;
      noisy_hits += std::any_of(found.begin(), found.end(),
                                [&](int f) { return std::abs(f - t) <= kNoisyBoundaryTolerance; });
    }
  }
  const double rate = static_cast<double>(noisy_hits) / static_cast<double>(noisy_total);
  v.require(count_miss == 0, std::to_string(count_miss) + " lane_count misses");
  v.require(index_miss == 0, std::to_string(index_miss) + " current_index misses");
  v.require(boundary_miss == 0, std::to_string(boundary_miss) + " boundary misses beyond 2 px");
  v.require(rate >= kNoisyHitRate, "noisy hit rate " + std::to_string(rate));
  if (v.pass) v.detail << "200/200 clean frames exact; noisy boundaries within 3 px: " << noisy_hits << "/" << noisy_total;
}

// AC7
void i2c_protocol(Verdict& v) {
  auto rng = testing::rng_for(7);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<std::uint64_t> scl(10'000, 1'000'000);
  int violations = 0, incoherent = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    i2c::Bus bus;
    bus.attach(i2c::SensorDevice(0x3A, i2c::SensorKind::kGeneric, {{0x05, {0, 0}}, {0x06, {0}}, {0x07, {0, 0, 0, 0}}}));
    i2c::Master m(bus, i2c::ClockDivider(150'000'000, scl(rng)));
    const std::uint8_t reg = static_cast<std::uint8_t>(5 + byte(rng) % 3);
    std::vector<std::uint8_t> data(bus.device(0x3A)->read_register(reg)->size());
    for (auto& x : data) x = static_cast<std::uint8_t>(byte(rng));
    const auto w = m.write(0x3A, reg, data);
    const auto r = m.read(0x3A, reg, data.size());
    for (const auto* t : {&w, &r}) {
      const auto rep = i2c::check_protocol(t->wire);
      violations += !rep.ok() || !t->acked;
      bool parses = true;
      try {
        const auto p = i2c::parse_transaction(rep.events);
        parses = p.address == 0x3A && p.reg == reg && p.payload == t->payload;
      } catch (const std::invalid_argument&) {
        parses = false;
      }
      violations += !parses;
    }
    incoherent += r.payload != data;
  }
  int too_fast = 0;
  std::uniform_int_distribution<std::uint64_t> sys(1'000'000, 400'000'000);
  for (int i = 0; i < 20; ++i) {
    const auto s = sys(rng);
    const auto t = std::uniform_int_distribution<std::uint64_t>(1'000, s / 4)(rng);
    const i2c::ClockDivider d(s, t);
    too_fast += d.scl_hz() > static_cast<double>(t);
  }
  v.require(violations == 0, std::to_string(violations) + " checker/parse failures");
  v.require(incoherent == 0, std::to_string(incoherent) + " write/read mismatches");
  v.require(too_fast == 0, std::to_string(too_fast) + " divider pairs over target");
  if (v.pass) v.detail << "2000 transactions clean, 1000/1000 coherent, 20/20 divider pairs <= target";
}

// AC8
void control_units(Verdict& v) {
  const TcuConfig tcu;
  v.require(scale_brightness(0) == 0 && scale_brightness(65535) == 4095, "scale endpoints");
  v.require(tcu_step(25.0, tcu).dac_code == 0, "dac at 25.0 C");
  v.require(tcu_step(30.25, tcu).dac_code == 860, "dac at 30.25 C = " + std::to_string(tcu_step(30.25, tcu).dac_code));
  bool monotone = true;
  unsigned prev_hot = 0, prev_cold = 0;
  for (int i = 0; i < 1000; ++i) {
    const double dev = i * 30.0 / 999.0;
    const unsigned hot = tcu_step(25.0 + dev, tcu).dac_code;
    const unsigned cold = tcu_step(25.0 - dev, tcu).dac_code;
    monotone = monotone && hot >= prev_hot && cold >= prev_cold;
    prev_hot = hot;
    prev_cold = cold;
  }
  v.require(monotone, "dac not monotone in deviation");
  const LightConfig light;
  v.require(!light_decision(light.threshold_12bit, light).enable, "lamp on at threshold");
  v.require(light_decision(light.threshold_12bit - 1, light).enable, "lamp off just below threshold");
  if (v.pass) v.detail << "endpoints exact, dac 0 / 860, 1000-point sweep monotone, strict-below at 2000";
}

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"AC1", "stage latencies", 5.0, stage_latencies_exact},
      {"AC2", "throughput", 10.0, throughput},
      {"AC3", "frame time", 10.0, frame_time},
      {"AC4", "fixed-point gray accuracy", 60.0, gray_accuracy},
      {"AC5", "oracle equivalence", 30.0, oracle_equivalence},
      {"AC6", "lane decision", 30.0, lane_decision},
      {"AC7", "I2C protocol", 10.0, i2c_protocol},
      {"AC8", "control units", 5.0, control_units},
  };
  std::printf("LANEPIPE_SEED=%llu\n", static_cast<unsigned long long>(synth::seed_from_env()));
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.require(s < c.budget_s, "runtime " + std::to_string(s) + " s over budget");
    failed += !v.pass;
    std::printf("%s %s %s: %s [%.2f s / %.0f s]\n", v.pass ? "PASS" : "FAIL", c.id, c.title,
                v.detail.str().c_str(), s, c.budget_s);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
