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

#include "lanepipe/i2c_core.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "lanepipe/error.hpp"

namespace lanepipe::i2c {

ClockDivider::ClockDivider(std::uint64_t system_hz, std::uint64_t target_scl_hz)
    : system_hz_(system_hz), target_scl_hz_(target_scl_hz), divisor_(0) {
  if (system_hz == 0 || target_scl_hz == 0) throw ConfigError("clock frequencies must be positive");
  const std::uint64_t quarter_rate = 4 * target_scl_hz;
  if (quarter_rate > system_hz) {
    throw ConfigError("SCL target " + std::to_string(target_scl_hz) +
                      " Hz is faster than a quarter of the system clock");
  }
  // Round up so the bus is never clocked faster than requested.
  divisor_ = (system_hz + quarter_rate - 1) / quarter_rate;
}

std::vector<SclEdge> scl_tick_schedule(const ClockDivider& divider, Cycle cycles) {
  std::vector<SclEdge> edges;
  const Cycle half = 2 * divider.divisor();
  bool rising = true;
  for (Cycle c = half; c < cycles; c += half) {
    edges.push_back({c, rising});
    rising = !rising;
  }
  return edges;
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kStart: return "START";
    case EventKind::kStop: return "STOP";
    case EventKind::kBit: return "BIT";
    case EventKind::kAck: return "ACK";
    case EventKind::kNack: return "NACK";
  }
  return "?";
}

ProtocolReport check_protocol(std::span<const WireSample> wire) {
  ProtocolReport report;
  auto violation = [&](Cycle cycle, const std::string& what) {
    report.violations.push_back("cycle " + std::to_string(cycle) + ": " + what);
  };

  int prev_scl = 1;
  int prev_sda = 1;
  bool in_frame = false;
  bool saw_start = false;
  int bit_in_byte = 0;
  int bytes_since_start = 0;
  // Sample taken on the current SCL high phase; undone if it turns out to be START/STOP setup.
  bool sampled_this_high = false;
  int bit_before_rise = 0;
  int bytes_before_rise = 0;

  for (const WireSample& s : wire) {
    const bool scl_changed = s.scl != prev_scl;
    const bool sda_changed = s.sda != prev_sda;
    if (scl_changed && sda_changed) {
      violation(s.cycle, "SCL and SDA changed together");
    } else if (scl_changed) {
      sampled_this_high = false;
      if (s.scl == 1) {
        if (!in_frame) violation(s.cycle, "clock pulse outside a START/STOP frame");
        sampled_this_high = true;
        bit_before_rise = bit_in_byte;
        bytes_before_rise = bytes_since_start;
        if (++bit_in_byte == 9) {
          report.events.push_back({s.sda == 0 ? EventKind::kAck : EventKind::kNack, s.sda,
                                   SclPhase::kRising, s.cycle});
          bit_in_byte = 0;
          ++bytes_since_start;
        } else {
          report.events.push_back({EventKind::kBit, s.sda, SclPhase::kRising, s.cycle});
        }
      }
    } else if (sda_changed && s.scl == 1) {
      if (sampled_this_high) {
        report.events.pop_back();
        bit_in_byte = bit_before_rise;
        bytes_since_start = bytes_before_rise;
        sampled_this_high = false;
      }
      if (bit_in_byte != 0) {
        violation(s.cycle, "SDA changed while SCL high in the middle of a byte frame");
      }
      if (s.sda == 0) {
        if (in_frame && bytes_since_start == 0) violation(s.cycle, "repeated START before any byte");
        report.events.push_back({EventKind::kStart, 0, SclPhase::kHigh, s.cycle});
        in_frame = true;
        saw_start = true;
      } else {
        if (!in_frame) violation(s.cycle, "STOP without a preceding START");
        if (in_frame && bytes_since_start == 0) violation(s.cycle, "STOP before any byte");
        report.events.push_back({EventKind::kStop, 1, SclPhase::kHigh, s.cycle});
        in_frame = false;
      }
      bit_in_byte = 0;
      bytes_since_start = 0;
    }
    prev_scl = s.scl;
    prev_sda = s.sda;
  }

  const Cycle last = wire.empty() ? 0 : wire.back().cycle;
  if (!saw_start) violation(last, "no START condition");
  if (in_frame) violation(last, "trace does not end with STOP");
  if (!report.events.empty() && report.events.front().kind != EventKind::kStart) {
    violation(report.events.front().cycle, "first event is not START");
  }
  return report;
}

ParsedTransaction parse_transaction(std::span<const Event> events) {
  struct Byte {
    std::uint8_t value;
    bool acked;
  };
  std::vector<std::vector<Byte>> segments;
  bool open = false;
  int bits = 0;
  std::uint8_t shift = 0;
  for (const Event& e : events) {
    switch (e.kind) {
      case EventKind::kStart:
        if (bits != 0) throw std::invalid_argument("START inside a byte");
        segments.emplace_back();
        open = true;
        break;
      case EventKind::kStop:
        if (!open || bits != 0) throw std::invalid_argument("misplaced STOP");
        open = false;
        break;
      case EventKind::kBit:
        if (!open) throw std::invalid_argument("bit outside a frame");
        if (bits == 8) throw std::invalid_argument("ninth bit is not ACK/NACK");
        shift = static_cast<std::uint8_t>((shift << 1) | (e.sda & 1));
        ++bits;
        break;
      case EventKind::kAck:
      case EventKind::kNack:
        if (!open || bits != 8) throw std::invalid_argument("ACK/NACK outside a byte frame");
        segments.back().push_back({shift, e.kind == EventKind::kAck});
        bits = 0;
        shift = 0;
        break;
    }
  }
  if (open || segments.empty()) throw std::invalid_argument("trace is not a complete transaction");
  if (segments.size() > 2) throw std::invalid_argument("more than one repeated START");
  for (const auto& seg : segments) {
    if (seg.empty()) throw std::invalid_argument("frame without an address byte");
  }

  ParsedTransaction out;
  const auto& first = segments[0];
  out.address = first[0].value >> 1;
  if ((first[0].value & 1) != 0) {
    if (segments.size() != 1) throw std::invalid_argument("read frame followed by another frame");
    out.direction = Direction::kRead;
    for (std::size_t i = 1; i < first.size(); ++i) out.payload.push_back(first[i].value);
    return out;
  }
  if (first.size() > 1) out.reg = first[1].value;
  if (segments.size() == 1) {
    out.direction = Direction::kWrite;
    for (std::size_t i = 2; i < first.size(); ++i) out.payload.push_back(first[i].value);
    return out;
  }
  const auto& second = segments[1];
  if ((second[0].value >> 1) != out.address || (second[0].value & 1) == 0) {
    throw std::invalid_argument("repeated START does not address the same device for reading");
  }
  if (first.size() != 2) throw std::invalid_argument("combined read must write only the register");
  out.direction = Direction::kRead;
  for (std::size_t i = 1; i < second.size(); ++i) out.payload.push_back(second[i].value);
  return out;
}

SensorDevice::SensorDevice(std::uint8_t address, SensorKind kind,
                           std::map<std::uint8_t, std::vector<std::uint8_t>> registers)
    : address_(address), kind_(kind), registers_(std::move(registers)) {
  if (address > 0x7F) throw ConfigError("I2C addresses are 7-bit");
}

SensorDevice SensorDevice::light_sensor(std::uint8_t address) {
  return SensorDevice(address, SensorKind::kLight,
                      {{kLightControlRegister, {0x00}}, {kLightDataRegister, {0x00, 0x00}}});
}

SensorDevice SensorDevice::temperature_sensor(std::uint8_t address) {
  return SensorDevice(address, SensorKind::kTemperature,
                      {{kTemperatureRegister, {0x00, 0x00}}, {kTemperatureConfigRegister, {0x00}}});
}

std::optional<std::vector<std::uint8_t>> SensorDevice::read_register(std::uint8_t reg) const {
  auto it = registers_.find(reg);
  if (it == registers_.end()) return std::nullopt;
  return it->second;
}

void SensorDevice::set_register(std::uint8_t reg, std::vector<std::uint8_t> bytes) {
  registers_[reg] = std::move(bytes);
}

void SensorDevice::set_brightness(std::uint16_t raw) {
  set_register(kLightDataRegister, {static_cast<std::uint8_t>(raw >> 8), static_cast<std::uint8_t>(raw)});
}

void SensorDevice::set_temperature_raw(std::uint16_t raw) {
  set_register(kTemperatureRegister, {static_cast<std::uint8_t>(raw >> 8), static_cast<std::uint8_t>(raw)});
}

void SensorDevice::on_start() {
  // A repeated START completes any write in progress.
  if (have_pointer_ && !write_buffer_.empty()) {
    auto& reg = registers_[pointer_];
    std::copy(write_buffer_.begin(), write_buffer_.end(), reg.begin());
  }
  write_buffer_.clear();
  state_ = State::kAddress;
  bits_ = 0;
  shift_ = 0;
  sda_drive_ = 1;
}

void SensorDevice::on_stop() {
  if (have_pointer_ && !write_buffer_.empty()) {
    auto& reg = registers_[pointer_];
    std::copy(write_buffer_.begin(), write_buffer_.end(), reg.begin());
  }
  write_buffer_.clear();
  state_ = State::kIdle;
  sda_drive_ = 1;
}

void SensorDevice::on_scl_rising(int sda) {
  switch (state_) {
    case State::kAddress:
    case State::kReceive:
      shift_ = static_cast<std::uint8_t>((shift_ << 1) | (sda & 1));
      ++bits_;
      break;
    case State::kTransmit:
      ++bits_;
      break;
    case State::kMasterAck:
      master_acked_ = sda == 0;
      break;
    default:
      break;
  }
}

void SensorDevice::load_transmit_byte() {
  tx_byte_ = 0xFF;
  if (have_pointer_) {
    auto it = registers_.find(pointer_);
    if (it != registers_.end() && tx_index_ < it->second.size()) tx_byte_ = it->second[tx_index_];
  }
  bits_ = 0;
  sda_drive_ = (tx_byte_ >> 7) & 1;
  state_ = State::kTransmit;
}

void SensorDevice::on_scl_falling() {
  switch (state_) {
    case State::kAddress:
      if (bits_ < 8) break;
      if ((shift_ >> 1) == address_) {
        read_mode_ = (shift_ & 1) != 0;
        sda_drive_ = 0;
        state_ = State::kAddressAck;
      } else {
        state_ = State::kIgnore;
      }
      break;

    case State::kAddressAck:
      sda_drive_ = 1;
      if (read_mode_) {
        tx_index_ = 0;
        load_transmit_byte();
      } else {
        have_pointer_ = false;
        write_buffer_.clear();
        state_ = State::kReceive;
        bits_ = 0;
        shift_ = 0;
      }
      break;

    case State::kReceive: {
      if (bits_ < 8) break;
      bool accept = false;
      if (!have_pointer_) {
        if (registers_.count(shift_) != 0) {
          pointer_ = shift_;
          have_pointer_ = true;
          accept = true;
        }
      } else if (write_buffer_.size() < registers_[pointer_].size()) {
        write_buffer_.push_back(shift_);
        accept = true;
      }
      if (accept) {
        sda_drive_ = 0;
        state_ = State::kReceiveAck;
      } else {
        write_buffer_.clear();
        state_ = State::kIgnore;
      }
      break;
    }

    case State::kReceiveAck:
      sda_drive_ = 1;
      state_ = State::kReceive;
      bits_ = 0;
      shift_ = 0;
      break;

    case State::kTransmit:
      if (bits_ < 8) {
        sda_drive_ = (tx_byte_ >> (7 - bits_)) & 1;
      } else {
        sda_drive_ = 1;
        state_ = State::kMasterAck;
      }
      break;

    case State::kMasterAck:
      if (master_acked_) {
        ++tx_index_;
        load_transmit_byte();
      } else {
        sda_drive_ = 1;
        state_ = State::kIgnore;
      }
      break;

    case State::kIdle:
    case State::kIgnore:
      break;
  }
}

SensorDevice& Bus::attach(SensorDevice device) {
  if (this->device(device.address()) != nullptr) {
    throw ConfigError("two devices share I2C address " + std::to_string(device.address()));
  }
  devices_.push_back(std::move(device));
  return devices_.back();
}

SensorDevice* Bus::device(std::uint8_t address) {
  for (auto& d : devices_) {
    if (d.address() == address) return &d;
  }
  return nullptr;
}

void Bus::resolve(Cycle cycle) {
  int sda = master_sda_;
  for (const auto& d : devices_) sda &= d.sda_drive();
  if (sda != sda_) {
    const int before = sda_;
    sda_ = sda;
    wire_.push_back({cycle, scl_, sda_});
    if (scl_ == 1) {
      for (auto& d : devices_) {
        if (before == 1) {
          d.on_start();
        } else {
          d.on_stop();
        }
      }
      // Devices release SDA on START/STOP; the master still owns the level.
      int again = master_sda_;
      for (const auto& d : devices_) again &= d.sda_drive();
      if (again != sda_) {
        sda_ = again;
        wire_.push_back({cycle, scl_, sda_});
      }
    }
  }
}

void Bus::set_scl(Cycle cycle, int level) {
  advance_to(cycle);
  master_scl_ = level;
  if (level == scl_) return;
  scl_ = level;
  wire_.push_back({cycle, scl_, sda_});
  for (auto& d : devices_) {
    if (level == 1) {
      d.on_scl_rising(sda_);
    } else {
      d.on_scl_falling();
    }
  }
  resolve(cycle);
}

void Bus::set_sda(Cycle cycle, int level) {
  advance_to(cycle);
  master_sda_ = level;
  resolve(cycle);
}

void Master::quarter() { bus_.advance_to(bus_.now() + divider_.divisor()); }

void Master::begin(std::uint8_t address) {
  if (address > 0x7F) throw std::invalid_argument("I2C addresses are 7-bit");
  if (!bus_.idle()) throw std::logic_error("I2C bus is not idle");
  bus_.busy_ = true;
  bit_counter_ = 0;
}

void Master::start() {
  bus_.set_sda(bus_.now(), 1);
  quarter();
  bus_.set_scl(bus_.now(), 1);
  quarter();
  bus_.set_sda(bus_.now(), 0);
  quarter();
  bus_.set_scl(bus_.now(), 0);
  quarter();
}

void Master::stop() {
  bus_.set_sda(bus_.now(), 0);
  quarter();
  bus_.set_scl(bus_.now(), 1);
  quarter();
  bus_.set_sda(bus_.now(), 1);
  quarter();
  quarter();
}

void Master::write_bit(int bit) {
  bus_.set_sda(bus_.now(), bit);
  quarter();
  bus_.set_scl(bus_.now(), 1);
  quarter();
  if (fault_.sda_glitch_at_bit && *fault_.sda_glitch_at_bit == bit_counter_) {
    bus_.set_sda(bus_.now(), bit ^ 1);
    bus_.set_sda(bus_.now(), bit);
  }
  ++bit_counter_;
  quarter();
  bus_.set_scl(bus_.now(), 0);
  quarter();
}

int Master::read_bit() {
  bus_.set_sda(bus_.now(), 1);
  quarter();
  bus_.set_scl(bus_.now(), 1);
  const int sampled = bus_.sda();
  quarter();
  quarter();
  bus_.set_scl(bus_.now(), 0);
  quarter();
  return sampled;
}

bool Master::write_byte(std::uint8_t byte) {
  for (int i = 7; i >= 0; --i) write_bit((byte >> i) & 1);
  return read_bit() == 0;
}

std::uint8_t Master::read_byte(bool ack) {
  std::uint8_t value = 0;
  for (int i = 0; i < 8; ++i) value = static_cast<std::uint8_t>((value << 1) | read_bit());
  write_bit(ack ? 0 : 1);
  return value;
}

Transaction Master::finish(Transaction t, std::size_t wire_begin) {
  bus_.busy_ = false;
  const auto& wire = bus_.wire();
  t.wire.assign(wire.begin() + static_cast<std::ptrdiff_t>(wire_begin), wire.end());
  t.events = check_protocol(t.wire).events;
  return t;
}

Transaction Master::write(std::uint8_t address, std::uint8_t reg, std::span<const std::uint8_t> data) {
  begin(address);
  const std::size_t wire_begin = bus_.wire().size();
  Transaction t;
  t.address = address;
  t.direction = Direction::kWrite;
  t.reg = reg;
  t.payload.assign(data.begin(), data.end());

  start();
  bool acked = write_byte(static_cast<std::uint8_t>(address << 1));
  if (acked) acked = write_byte(reg);
  for (std::size_t i = 0; acked && i < data.size(); ++i) acked = write_byte(data[i]);
  stop();
  t.acked = acked;
  return finish(std::move(t), wire_begin);
}

Transaction Master::read(std::uint8_t address, std::uint8_t reg, std::size_t n) {
  if (n == 0) throw std::invalid_argument("I2C read of zero bytes");
  begin(address);
  const std::size_t wire_begin = bus_.wire().size();
  Transaction t;
  t.address = address;
  t.direction = Direction::kRead;
  t.reg = reg;

  start();
  bool acked = write_byte(static_cast<std::uint8_t>(address << 1));
  if (acked) acked = write_byte(reg);
  if (acked) {
    start();
    acked = write_byte(static_cast<std::uint8_t>((address << 1) | 1));
  }
  if (acked) {
    for (std::size_t i = 0; i < n; ++i) t.payload.push_back(read_byte(i + 1 < n));
  }
  stop();
  t.acked = acked;
  t.data_valid = acked;
  if (acked) ++valid_pulses_;
  return finish(std::move(t), wire_begin);
}

std::string events_to_csv(std::span<const Event> events) {
  std::string out = "cycle,kind,sda\n";
  for (const auto& e : events) {
    out += std::to_string(e.cycle);
    out += ',';
    out += to_string(e.kind);
    out += ',';
    out += std::to_string(e.sda);
    out += '\n';
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<unsigned long> parse_number(std::string_view text) {
  if (text.empty()) return std::nullopt;
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    base = 16;
    text.remove_prefix(2);
  }
  unsigned long v = 0;
  for (char c : text) {
    int digit;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = c - '0';
    } else if (base == 16 && std::isxdigit(static_cast<unsigned char>(c))) {
      digit = std::tolower(static_cast<unsigned char>(c)) - 'a' + 10;
    } else {
      return std::nullopt;
    }
    if (digit >= base) return std::nullopt;
    v = v * static_cast<unsigned>(base) + static_cast<unsigned>(digit);
    if (v > 0xFFFF) return std::nullopt;
  }
  return v;
}

}  // namespace

std::vector<PreloadEntry> parse_preload(std::string_view text) {
  std::vector<PreloadEntry> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    auto bad = [&](const std::string& why) {
      return ConfigError("preload line " + std::to_string(line_no) + ": " + why);
    };
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos) throw bad("expected `address,register,hex_bytes`");
    const auto addr = parse_number(trim(line.substr(0, c1)));
    const auto reg = parse_number(trim(line.substr(c1 + 1, c2 - c1 - 1)));
    std::string_view hex = trim(line.substr(c2 + 1));
    if (!addr || *addr > 0x7F) throw bad("address must be a 7-bit number");
    if (!reg || *reg > 0xFF) throw bad("register must be an 8-bit number");
    if (hex.size() > 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
    if (hex.empty() || hex.size() % 2 != 0) throw bad("hex_bytes needs an even number of digits");

    PreloadEntry e;
    e.address = static_cast<std::uint8_t>(*addr);
    e.reg = static_cast<std::uint8_t>(*reg);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
      const auto byte = parse_number("0x" + std::string(hex.substr(i, 2)));
      if (!byte) throw bad("invalid hex digit");
      e.bytes.push_back(static_cast<std::uint8_t>(*byte));
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

void apply_preload(Bus& bus, std::span<const PreloadEntry> entries) {
  for (const auto& e : entries) {
    SensorDevice* dev = bus.device(e.address);
    if (dev == nullptr) throw ConfigError("preload targets address " + std::to_string(e.address) + " with no device");
    dev->set_register(e.reg, e.bytes);
  }
}

}  // namespace lanepipe::i2c
