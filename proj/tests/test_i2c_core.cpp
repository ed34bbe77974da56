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

#include <gtest/gtest.h>

#include <algorithm>

#include "lanepipe/error.hpp"
#include "lanepipe/i2c_core.hpp"
#include "support.hpp"

namespace lanepipe::i2c {
namespace {

Bus sensor_bus() {
  Bus bus;
  bus.attach(SensorDevice::light_sensor());
  bus.attach(SensorDevice::temperature_sensor());
  return bus;
}

std::vector<int> bits_after_start(const Transaction& t, std::size_t n) {
  std::vector<int> out;
  for (const auto& e : t.events) {
    if (e.kind == EventKind::kBit && out.size() < n) out.push_back(e.sda);
  }
  return out;
}

// Smallest gap between consecutive rising SCL edges on the wire.
Cycle min_scl_period(const std::vector<WireSample>& wire) {
  Cycle best = ~Cycle{0};
  std::optional<Cycle> last_rise;
  int prev = 1;
  for (const auto& s : wire) {
    if (s.scl == 1 && prev == 0) {
      if (last_rise) best = std::min(best, s.cycle - *last_rise);
      last_rise = s.cycle;
    }
    prev = s.scl;
  }
  return best;
}

TEST(ClockDivider, Examples) {
  const ClockDivider d100(150'000'000, 100'000);
  EXPECT_EQ(d100.divisor(), 375u);
  EXPECT_EQ(d100.period_cycles(), 1500u);
  EXPECT_DOUBLE_EQ(d100.scl_hz(), 100'000.0);
  const ClockDivider d1(4'000'000, 1'000'000);
  EXPECT_EQ(d1.divisor(), 1u);
  EXPECT_DOUBLE_EQ(d1.scl_hz(), 1'000'000.0);
  const ClockDivider d400(150'000'000, 400'000);
  EXPECT_EQ(d400.divisor(), 94u);
  EXPECT_LE(d400.scl_hz(), 400'000.0);
}

TEST(ClockDivider, Rejects) {
  EXPECT_THROW(ClockDivider(0, 1), ConfigError);
  EXPECT_THROW(ClockDivider(100, 0), ConfigError);
  EXPECT_THROW(ClockDivider(100, 26), ConfigError);
}

TEST(ClockDivider, NeverFasterThanTarget) {
  auto rng = testing::rng_for(71);
  std::uniform_int_distribution<std::uint64_t> sys(1'000'000, 500'000'000);
  for (int i = 0; i < 5000; ++i) {
    const auto s = sys(rng);
    std::uniform_int_distribution<std::uint64_t> tgt(1, s / 4);
    const auto t = tgt(rng);
    const ClockDivider d(s, t);
    ASSERT_LE(d.scl_hz(), static_cast<double>(t));
    ASSERT_LE(s, 4 * d.divisor() * t);
    ASSERT_GE(d.divisor(), 1u);
  }
}

TEST(SclSchedule, EdgesEveryHalfPeriod) {
  const ClockDivider d(150'000'000, 100'000);
  const auto edges = scl_tick_schedule(d, 4600);
  ASSERT_EQ(edges.size(), 6u);
  EXPECT_EQ(edges[0], (SclEdge{750, true}));
  EXPECT_EQ(edges[1], (SclEdge{1500, false}));
  EXPECT_EQ(edges[5], (SclEdge{4500, false}));
}

TEST(Master, WriteControlRegister) {
  Bus bus = sensor_bus();
  Master m(bus, ClockDivider{});
  const std::vector<std::uint8_t> one{0x01};
  const auto t = m.write(0x23, 0x00, one);
  EXPECT_TRUE(t.acked);
  EXPECT_TRUE(check_protocol(t.wire).ok());
  const auto p = parse_transaction(t.events);
  EXPECT_EQ(p.address, 0x23);
  EXPECT_EQ(p.direction, Direction::kWrite);
  EXPECT_EQ(p.reg, 0x00);
  EXPECT_EQ(p.payload, one);
  EXPECT_EQ(bus.device(0x23)->read_register(0x00), one);
  EXPECT_EQ(bits_after_start(t, 8), (std::vector<int>{0, 1, 0, 0, 0, 1, 1, 0}));
}

TEST(Master, AbsentAddressNacked) {
  Bus bus = sensor_bus();
  Master m(bus, ClockDivider{});
  const auto before_l = bus.device(0x23)->registers();
  const auto before_t = bus.device(0x48)->registers();
  const std::vector<std::uint8_t> data{0xAA};
  const auto t = m.write(0x55, 0x00, data);
  EXPECT_FALSE(t.acked);
  EXPECT_TRUE(check_protocol(t.wire).ok());
  EXPECT_EQ(t.events.back().kind, EventKind::kStop);
  EXPECT_EQ(bus.device(0x23)->registers(), before_l);
  EXPECT_EQ(bus.device(0x48)->registers(), before_t);
  EXPECT_TRUE(bus.idle());

  const auto r = m.read(0x55, 0x00, 2);
  EXPECT_FALSE(r.acked);
  EXPECT_FALSE(r.data_valid);
  EXPECT_EQ(m.valid_pulses(), 0u);
}

TEST(Master, ReadBrightness) {
  Bus bus = sensor_bus();
  bus.device(0x23)->set_brightness(0x8000);
  Master m(bus, ClockDivider{});
  const auto t = m.read(0x23, kLightDataRegister, 2);
  EXPECT_TRUE(t.acked);
  EXPECT_TRUE(t.data_valid);
  EXPECT_EQ(t.payload, (std::vector<std::uint8_t>{0x80, 0x00}));
  EXPECT_EQ(m.valid_pulses(), 1u);
  const auto rep = check_protocol(t.wire);
  EXPECT_TRUE(rep.ok());
  const auto p = parse_transaction(rep.events);
  EXPECT_EQ(p.direction, Direction::kRead);
  EXPECT_EQ(p.payload, t.payload);
}

TEST(Master, ZeroLengthReadRejectedBeforeWire) {
  Bus bus = sensor_bus();
  Master m(bus, ClockDivider{});
  EXPECT_THROW(m.read(0x48, 0, 0), std::invalid_argument);
  EXPECT_TRUE(bus.wire().empty());
  EXPECT_THROW(m.write(0x80, 0, {}), std::invalid_argument);
  EXPECT_TRUE(bus.wire().empty());
}

TEST(Master, RefusesBusyBus) {
  Bus bus = sensor_bus();
  bus.set_scl(0, 0);
  Master m(bus, ClockDivider{});
  EXPECT_THROW(m.read(0x48, 0, 1), std::logic_error);
}

TEST(Device, UnknownRegisterAndOverlongWriteNacked) {
  Bus bus = sensor_bus();
  Master m(bus, ClockDivider{});
  const std::vector<std::uint8_t> one{0x07};
  EXPECT_FALSE(m.write(0x48, 0x09, one).acked);
  EXPECT_FALSE(m.read(0x48, 0x09, 1).acked);
  const std::vector<std::uint8_t> two{0x01, 0x02};
  EXPECT_FALSE(m.write(0x48, kTemperatureConfigRegister, two).acked);
  // A NACKed write is dropped as a whole.
  EXPECT_EQ(bus.device(0x48)->read_register(kTemperatureConfigRegister), std::vector<std::uint8_t>{0x00});
}

TEST(Device, ReadPastRegisterEndReturnsFF) {
  Bus bus = sensor_bus();
  bus.device(0x48)->set_temperature_raw(0x1234);
  Master m(bus, ClockDivider{});
  const auto t = m.read(0x48, kTemperatureRegister, 4);
  EXPECT_EQ(t.payload, (std::vector<std::uint8_t>{0x12, 0x34, 0xFF, 0xFF}));
}

// Random register files on a generic device, read back over the wire.
TEST(Master, RandomizedReadRoundTrip) {
  auto rng = testing::rng_for(72);
  std::uniform_int_distribution<int> byte(0, 255), width(1, 4), nregs(1, 6);
  std::uniform_int_distribution<std::uint64_t> scl(10'000, 1'000'000);
  for (int trial = 0; trial < 1000; ++trial) {
    std::map<std::uint8_t, std::vector<std::uint8_t>> regs;
    const int n = nregs(rng);
    while (static_cast<int>(regs.size()) < n) {
      std::vector<std::uint8_t> v(static_cast<std::size_t>(width(rng)));
      for (auto& x : v) x = static_cast<std::uint8_t>(byte(rng));
      regs[static_cast<std::uint8_t>(byte(rng))] = v;
    }
    const auto addr = static_cast<std::uint8_t>(byte(rng) & 0x7F);
    Bus bus;
    bus.attach(SensorDevice(addr, SensorKind::kGeneric, regs));
    Master m(bus, ClockDivider(150'000'000, scl(rng)));
    auto it = regs.begin();
    std::advance(it, std::uniform_int_distribution<int>(0, n - 1)(rng));
    const std::size_t len = std::uniform_int_distribution<std::size_t>(1, it->second.size())(rng);
    const auto t = m.read(addr, it->first, len);
    ASSERT_TRUE(t.acked);
    ASSERT_EQ(t.payload, std::vector<std::uint8_t>(it->second.begin(), it->second.begin() + len));
    const auto rep = check_protocol(t.wire);
    ASSERT_TRUE(rep.ok()) << rep.violations.front();
    ASSERT_EQ(parse_transaction(rep.events).payload, t.payload);
    ASSERT_GE(min_scl_period(t.wire), m.divider().period_cycles());
  }
}

TEST(Master, WriteThenReadCoherence) {
  auto rng = testing::rng_for(73);
  std::uniform_int_distribution<int> byte(0, 255);
  Bus bus;
  bus.attach(SensorDevice(0x30, SensorKind::kGeneric, {{0x10, {0, 0, 0}}, {0x20, {0}}}));
  Master m(bus, ClockDivider{});
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint8_t reg = trial % 2 == 0 ? 0x10 : 0x20;
    std::vector<std::uint8_t> data(reg == 0x10 ? 3 : 1);
    for (auto& x : data) x = static_cast<std::uint8_t>(byte(rng));
    const auto w = m.write(0x30, reg, data);
    ASSERT_TRUE(w.acked);
    ASSERT_TRUE(check_protocol(w.wire).ok());
    const auto r = m.read(0x30, reg, data.size());
    ASSERT_EQ(r.payload, data);
  }
}

TEST(Master, ByteFramesAreNineEvents) {
  Bus bus = sensor_bus();
  Master m(bus, ClockDivider{});
  const auto t = m.read(0x48, 0, 2);
  int in_frame = 0;
  for (const auto& e : t.events) {
    if (e.kind == EventKind::kStart || e.kind == EventKind::kStop) {
      ASSERT_EQ(in_frame, 0);
      continue;
    }
    ++in_frame;
    if (e.kind == EventKind::kAck || e.kind == EventKind::kNack) {
      ASSERT_EQ(in_frame, 9);
      in_frame = 0;
    }
  }
  // Last data byte is NACKed by the master.
  EXPECT_EQ(t.events[t.events.size() - 2].kind, EventKind::kNack);
}

TEST(Checker, FlagsInjectedGlitch) {
  Bus bus = sensor_bus();
  Master m(bus, ClockDivider{});
  m.set_fault({.sda_glitch_at_bit = 3});
  const auto t = m.read(0x48, 0, 2);
  EXPECT_FALSE(check_protocol(t.wire).ok());
}

TEST(Checker, HandBuiltViolations) {
  // SDA toggles with SCL high in the middle of a byte.
  std::vector<WireSample> w{{10, 1, 0}, {20, 0, 0}, {30, 1, 0}, {40, 1, 1}, {50, 0, 1}};
  EXPECT_FALSE(check_protocol(w).ok());
  // START, one byte, no STOP.
  std::vector<WireSample> open{{10, 1, 0}, {20, 0, 0}};
  for (int i = 0; i < 9; ++i) {
    open.push_back({static_cast<Cycle>(30 + 20 * i), 1, 0});
    open.push_back({static_cast<Cycle>(40 + 20 * i), 0, 0});
  }
  EXPECT_FALSE(check_protocol(open).ok());
  auto closed = open;
  closed.push_back({500, 1, 0});
  closed.push_back({510, 1, 1});
  EXPECT_TRUE(check_protocol(closed).ok());
  // Clock pulse without START.
  std::vector<WireSample> bare{{10, 0, 1}, {20, 1, 1}};
  EXPECT_FALSE(check_protocol(bare).ok());
  // Both lines move together.
  std::vector<WireSample> both{{10, 1, 0}, {20, 0, 1}};
  EXPECT_FALSE(check_protocol(both).ok());
  EXPECT_FALSE(check_protocol(std::vector<WireSample>{}).ok());
}

TEST(ParseTransaction, RejectsMalformed) {
  std::vector<Event> ev{{EventKind::kStart, 0, SclPhase::kHigh, 0}, {EventKind::kBit, 1, SclPhase::kRising, 1}};
  EXPECT_THROW(parse_transaction(ev), std::invalid_argument);
  EXPECT_THROW(parse_transaction(std::vector<Event>{}), std::invalid_argument);
}

TEST(EventsCsv, HeaderAndRows) {
  std::vector<Event> ev{{EventKind::kStart, 0, SclPhase::kHigh, 750}, {EventKind::kAck, 0, SclPhase::kRising, 900}};
  EXPECT_EQ(events_to_csv(ev), "cycle,kind,sda\n750,START,0\n900,ACK,0\n");
}

TEST(Preload, ParseAndApply) {
  const auto entries = parse_preload("# address,register,bytes\n0x48, 0x00, 0x1900\n35,2,ffff\n");
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[0].bytes, (std::vector<std::uint8_t>{0x19, 0x00}));
  Bus bus = sensor_bus();
  apply_preload(bus, entries);
  EXPECT_EQ(bus.device(0x23)->read_register(2), (std::vector<std::uint8_t>{0xFF, 0xFF}));
  try {
    parse_preload("0x48,0,12\n0x48,0,123\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse_preload("0x80,0,00\n"), ConfigError);
  const std::vector<PreloadEntry> stray{{0x11, 0, {1}}};
  EXPECT_THROW(apply_preload(bus, stray), ConfigError);
}

TEST(Bus, DuplicateAddressRejected) {
  Bus bus = sensor_bus();
  EXPECT_THROW(bus.attach(SensorDevice::light_sensor()), ConfigError);
  EXPECT_THROW(SensorDevice(0x90, SensorKind::kGeneric, {}), ConfigError);
}

}  // namespace
}  // namespace lanepipe::i2c
