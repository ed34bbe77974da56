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

#ifndef LANEPIPE_I2C_CORE_HPP_
#define LANEPIPE_I2C_CORE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lanepipe/stream_core.hpp"

namespace lanepipe::i2c {

// Divides the system clock down to SCL. One SCL period is four quarter
// phases of `divisor()` system cycles each.
class ClockDivider {
 public:
  // Throws ConfigError when either frequency is zero or the target is
  // faster than system_hz / 4.
  ClockDivider(std::uint64_t system_hz = 150'000'000, std::uint64_t target_scl_hz = 100'000);

  std::uint64_t system_hz() const { return system_hz_; }
  std::uint64_t target_scl_hz() const { return target_scl_hz_; }
  // Smallest divisor whose SCL does not exceed the target.
  std::uint64_t divisor() const { return divisor_; }
  std::uint64_t period_cycles() const { return 4 * divisor_; }
  double scl_hz() const { return static_cast<double>(system_hz_) / static_cast<double>(period_cycles()); }

 private:
  std::uint64_t system_hz_;
  std::uint64_t target_scl_hz_;
  std::uint64_t divisor_;
};

struct SclEdge {
  Cycle cycle = 0;
  bool rising = false;

  friend bool operator==(const SclEdge&, const SclEdge&) = default;
};

// SCL edges in [0, cycles): low for two quarters, then high for two,
// starting low at cycle 0.
std::vector<SclEdge> scl_tick_schedule(const ClockDivider& divider, Cycle cycles);

enum class EventKind { kStart, kStop, kBit, kAck, kNack };
enum class SclPhase { kLow, kRising, kHigh, kFalling };

std::string_view to_string(EventKind kind);

struct Event {
  EventKind kind = EventKind::kBit;
  int sda = 1;
  SclPhase scl_phase = SclPhase::kRising;
  Cycle cycle = 0;

  friend bool operator==(const Event&, const Event&) = default;
};

// Resolved line levels after a change.
struct WireSample {
  Cycle cycle = 0;
  int scl = 1;
  int sda = 1;
};

enum class Direction { kWrite, kRead };

struct Transaction {
  std::uint8_t address = 0;
  Direction direction = Direction::kWrite;
  std::uint8_t reg = 0;
  std::vector<std::uint8_t> payload;
  std::vector<Event> events;
  std::vector<WireSample> wire;
  bool acked = false;
  // Pulsed once for each completed read.
  bool data_valid = false;
};

struct ProtocolReport {
  std::vector<Event> events;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Decodes line samples into events and checks them: one START before the
// first byte, STOP at the end, SDA stable while SCL is high except for
// START/STOP at byte-frame boundaries, every byte followed by ACK/NACK.
ProtocolReport check_protocol(std::span<const WireSample> wire);

// Transaction content recovered from an event trace.
struct ParsedTransaction {
  std::uint8_t address = 0;
  Direction direction = Direction::kWrite;
  std::optional<std::uint8_t> reg;
  std::vector<std::uint8_t> payload;

  friend bool operator==(const ParsedTransaction&, const ParsedTransaction&) = default;
};

// Throws std::invalid_argument if the trace is not a well-formed single
// write or combined write-then-read transaction.
ParsedTransaction parse_transaction(std::span<const Event> events);

enum class SensorKind { kLight, kTemperature, kGeneric };

inline constexpr std::uint8_t kLightAddress = 0x23;
inline constexpr std::uint8_t kTemperatureAddress = 0x48;
inline constexpr std::uint8_t kLightControlRegister = 0x00;
inline constexpr std::uint8_t kLightDataRegister = 0x02;
inline constexpr std::uint8_t kTemperatureRegister = 0x00;
inline constexpr std::uint8_t kTemperatureConfigRegister = 0x01;

// Slave device with a fixed register map. Multi-byte registers go out on
// the wire MSB first. Reads past a register's end return 0xFF; a pointer to
// an unknown register and write bytes past a register's width are NACKed.
class SensorDevice {
 public:
  SensorDevice(std::uint8_t address, SensorKind kind, std::map<std::uint8_t, std::vector<std::uint8_t>> registers);

  // 0x23: control register 0x00 (1 byte), brightness register 0x02 (2 bytes).
  static SensorDevice light_sensor(std::uint8_t address = kLightAddress);
  // 0x48: temperature register 0x00 (2 bytes), configuration 0x01 (1 byte).
  static SensorDevice temperature_sensor(std::uint8_t address = kTemperatureAddress);

  std::uint8_t address() const { return address_; }
  SensorKind kind() const { return kind_; }
  const std::map<std::uint8_t, std::vector<std::uint8_t>>& registers() const { return registers_; }
  std::optional<std::vector<std::uint8_t>> read_register(std::uint8_t reg) const;
  // Direct preload; creates the register if needed.
  void set_register(std::uint8_t reg, std::vector<std::uint8_t> bytes);

  void set_brightness(std::uint16_t raw);
  void set_temperature_raw(std::uint16_t raw);

  // Bus-side hooks. Return the level this device drives on SDA afterwards
  // (1 = released).
  void on_start();
  void on_stop();
  void on_scl_rising(int sda);
  void on_scl_falling();
  int sda_drive() const { return sda_drive_; }

 private:
  enum class State { kIdle, kAddress, kAddressAck, kReceive, kReceiveAck, kTransmit, kMasterAck, kIgnore };

  void load_transmit_byte();

  std::uint8_t address_;
  SensorKind kind_;
  std::map<std::uint8_t, std::vector<std::uint8_t>> registers_;

  State state_ = State::kIdle;
  int bits_ = 0;
  std::uint8_t shift_ = 0;
  bool read_mode_ = false;
  bool have_pointer_ = false;
  std::uint8_t pointer_ = 0;
  std::size_t tx_index_ = 0;
  std::uint8_t tx_byte_ = 0;
  bool master_acked_ = false;
  std::vector<std::uint8_t> write_buffer_;
  int sda_drive_ = 1;
};

// Open-drain two-wire bus. SCL is driven by the single master only (no
// clock stretching); SDA is the wired AND of every driver.
class Bus {
 public:
  // The returned reference is invalidated by the next attach().
  SensorDevice& attach(SensorDevice device);
  SensorDevice* device(std::uint8_t address);
  std::span<SensorDevice> devices() { return devices_; }

  // Master drive changes. Devices react to the resulting edges before these
  // return; every change in resolved levels is appended to the wire log.
  void set_scl(Cycle cycle, int level);
  void set_sda(Cycle cycle, int level);

  int scl() const { return scl_; }
  int sda() const { return sda_; }
  bool idle() const { return scl_ == 1 && sda_ == 1 && !busy_; }

  Cycle now() const { return now_; }
  void advance_to(Cycle cycle) { if (cycle > now_) now_ = cycle; }

  const std::vector<WireSample>& wire() const { return wire_; }
  void clear_wire() { wire_.clear(); }

 private:
  friend class Master;
  void resolve(Cycle cycle);

  std::vector<SensorDevice> devices_;
  int master_scl_ = 1;
  int master_sda_ = 1;
  int scl_ = 1;
  int sda_ = 1;
  bool busy_ = false;
  Cycle now_ = 0;
  std::vector<WireSample> wire_;
};

struct FaultInjection {
  // Toggle SDA while SCL is high during this master-driven bit (counted
  // from 0 over the whole transaction). Used to exercise the checker.
  std::optional<int> sda_glitch_at_bit;
};

// Single bus master. Every transaction runs to completion synchronously,
// advancing the bus clock by one quarter SCL period per action.
class Master {
 public:
  Master(Bus& bus, ClockDivider divider) : bus_(bus), divider_(divider) {}

  // START, address+W, register, data..., STOP. Throws std::logic_error if
  // the bus is not idle and std::invalid_argument for an address above 0x7F.
  Transaction write(std::uint8_t address, std::uint8_t reg, std::span<const std::uint8_t> data);
  // START, address+W, register, repeated START, address+R, n bytes
  // (ACK all but the last, NACK the last), STOP. n == 0 is rejected before
  // any wire activity.
  Transaction read(std::uint8_t address, std::uint8_t reg, std::size_t n);

  void set_fault(FaultInjection fault) { fault_ = fault; }
  std::uint64_t valid_pulses() const { return valid_pulses_; }
  const ClockDivider& divider() const { return divider_; }

 private:
  void begin(std::uint8_t address);
  Transaction finish(Transaction t, std::size_t wire_begin);
  void quarter();
  void start();
  void stop();
  void write_bit(int bit);
  int read_bit();
  bool write_byte(std::uint8_t byte);
  std::uint8_t read_byte(bool ack);

  Bus& bus_;
  ClockDivider divider_;
  FaultInjection fault_;
  int bit_counter_ = 0;
  std::uint64_t valid_pulses_ = 0;
};

// Trace CSV with header `cycle,kind,sda`.
std::string events_to_csv(std::span<const Event> events);

// Preload lines `address,register,hex_bytes`; '#' comments allowed.
struct PreloadEntry {
  std::uint8_t address = 0;
  std::uint8_t reg = 0;
  std::vector<std::uint8_t> bytes;
};
// Throws ConfigError naming the line on malformed input.
std::vector<PreloadEntry> parse_preload(std::string_view text);
// Throws ConfigError if an entry targets an address without a device.
void apply_preload(Bus& bus, std::span<const PreloadEntry> entries);

}  // namespace lanepipe::i2c

#endif  // LANEPIPE_I2C_CORE_HPP_
