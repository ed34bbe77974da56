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

#ifndef LANEPIPE_STREAM_CORE_HPP_
#define LANEPIPE_STREAM_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lanepipe {

// Payload carried on every stream link. Wide enough for a packed RGB pixel
// (24 bits) as well as the packed lane report emitted by the decision stage.
using Word = std::uint64_t;
using Cycle = std::uint64_t;

struct FrameGeometry {
  int width = 416;
  int height = 416;

  // Throws ConfigError unless both dimensions are at least 3.
  void validate() const;
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  friend bool operator==(const FrameGeometry&, const FrameGeometry&) = default;
};

// One ready/valid handshake slot. A transfer happens iff valid && ready.
struct StreamBeat {
  Word data = 0;
  bool valid = false;
  bool ready = false;

  bool fires() const { return valid && ready; }
};

struct CycleStats {
  Cycle cycles_elapsed = 0;
  std::uint64_t transfers_in = 0;
  std::uint64_t transfers_out = 0;
  std::optional<Cycle> first_output_cycle;
  std::uint64_t stall_cycles = 0;

  friend bool operator==(const CycleStats&, const CycleStats&) = default;
};

// Per-stage bookkeeping kept by the scheduler.
struct StageStats {
  std::string name;
  std::optional<Cycle> first_input_cycle;
  // First cycle on which the stage's output register held a valid beat.
  std::optional<Cycle> first_output_cycle;
  std::optional<Cycle> last_output_transfer_cycle;
  std::optional<Cycle> first_output_transfer_cycle;
  std::uint64_t transfers_in = 0;
  std::uint64_t transfers_out = 0;

  // first_output_cycle - first_input_cycle, when both exist.
  std::optional<Cycle> latency() const;

  friend bool operator==(const StageStats&, const StageStats&) = default;
};

// Bounded FIFO sitting on a stage boundary. Pushing into a full queue is a
// contract violation: backpressure must have prevented it.
class PixelQueue {
 public:
  explicit PixelQueue(std::size_t capacity) : capacity_(capacity) {}

  std::size_t capacity() const { return capacity_; }
  std::size_t occupancy() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  bool full() const { return items_.size() >= capacity_; }

  void push(Word value);
  Word pop();
  Word front() const;
  std::vector<Word> contents() const { return {items_.begin(), items_.end()}; }
  void clear() { items_.clear(); }

 private:
  std::size_t capacity_;
  std::deque<Word> items_;
};

// Producer at the head of a pipeline.
class Source {
 public:
  virtual ~Source() = default;
  virtual std::optional<Word> peek() const = 0;
  virtual void pop() = 0;
};

class VectorSource : public Source {
 public:
  VectorSource() = default;
  explicit VectorSource(std::vector<Word> beats) : beats_(std::move(beats)) {}

  std::optional<Word> peek() const override;
  void pop() override { ++next_; }
  void load(std::vector<Word> beats);
  std::size_t remaining() const { return beats_.size() - next_; }

 private:
  std::vector<Word> beats_;
  std::size_t next_ = 0;
};

// Sink-side ready pattern. Entries are (cycle, ready) pairs; a value holds
// from its cycle until the next entry. Cycles before the first entry are
// ready.
class StallSchedule {
 public:
  StallSchedule() = default;
  explicit StallSchedule(std::vector<std::pair<Cycle, bool>> entries);

  // Parses text lines `cycle,ready_bit`. Blank lines and lines starting
  // with '#' are skipped. Throws ConfigError naming the offending line.
  static StallSchedule parse(std::string_view text);

  bool ready_at(Cycle cycle) const;
  const std::vector<std::pair<Cycle, bool>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<Cycle, bool>> entries_;
};

class Sink {
 public:
  virtual ~Sink() = default;
  virtual bool ready(Cycle cycle) const = 0;
  virtual void accept(Cycle cycle, Word data) = 0;
};

// Records every accepted beat; readiness follows an optional stall schedule.
class CollectingSink : public Sink {
 public:
  CollectingSink() = default;
  explicit CollectingSink(StallSchedule schedule) : schedule_(std::move(schedule)) {}

  bool ready(Cycle cycle) const override { return schedule_.ready_at(cycle); }
  void accept(Cycle cycle, Word data) override;

  const std::vector<Word>& data() const { return data_; }
  const std::vector<Cycle>& cycles() const { return cycles_; }
  void set_schedule(StallSchedule schedule) { schedule_ = std::move(schedule); }
  void clear();

 private:
  StallSchedule schedule_;
  std::vector<Word> data_;
  std::vector<Cycle> cycles_;
};

// A clocked pipeline stage with a registered output.
//
// Each cycle the scheduler first asks ready() (given whether the downstream
// link can take this stage's output this cycle), then moves data, then calls
// clock() once. A beat accepted on cycle t that produces output immediately
// becomes visible in the output register on cycle t + 1.
class Stage {
 public:
  virtual ~Stage() = default;

  virtual std::string_view name() const = 0;
  virtual bool ready(bool downstream_ready) const = 0;
  virtual void clock(Cycle cycle, std::optional<Word> input, bool output_taken) = 0;
  // True when the stage holds no in-flight work and its output is empty.
  virtual bool idle() const = 0;
  virtual void reset() = 0;

  bool out_valid() const { return out_valid_; }
  Word out_data() const { return out_data_; }

 protected:
  void emit(Word data) {
    out_data_ = data;
    out_valid_ = true;
  }
  void clear_output() { out_valid_ = false; }

 private:
  Word out_data_ = 0;
  bool out_valid_ = false;
};

// Deterministic cycle-synchronous scheduler.
//
// Ready propagates combinationally from sink to source each cycle, then all
// handshakes that fire move their data, then every stage is clocked. Each
// internal stage boundary carries a PixelQueue of `queue_capacity` entries
// with zero-latency bypass when empty.
class Pipeline {
 public:
  Pipeline(std::unique_ptr<Source> source, std::vector<std::unique_ptr<Stage>> stages,
           std::unique_ptr<Sink> sink, std::size_t queue_capacity = 416);

  // Runs `cycles` more cycles and returns the cumulative statistics.
  const CycleStats& advance(Cycle cycles);
  // Steps until source, queues and stages are all drained. Throws
  // std::runtime_error if that takes more than `max_cycles`.
  const CycleStats& run_until_idle(Cycle max_cycles);

  bool idle() const;
  Cycle cycle() const { return cycle_; }
  const CycleStats& stats() const { return stats_; }
  std::span<const StageStats> stage_stats() const { return stage_stats_; }
  std::size_t stage_count() const { return stages_.size(); }

  Stage& stage(std::size_t index) { return *stages_.at(index); }
  template <typename T>
  T& stage_as(std::size_t index) {
    return dynamic_cast<T&>(stage(index));
  }
  Source& source() { return *source_; }
  Sink& sink() { return *sink_; }
  // Queue between stage `index` and stage `index + 1`.
  const PixelQueue& queue(std::size_t index) const { return queues_.at(index); }

  // Record every output transfer of stage `index`.
  void set_capture(std::size_t index, bool enabled);
  const std::vector<Word>& captured(std::size_t index) const { return captures_.at(index); }

  // Clears statistics, captures, queues and stage state. Source and sink are
  // left as they are.
  void reset();

 private:
  void step();

  std::unique_ptr<Source> source_;
  std::vector<std::unique_ptr<Stage>> stages_;
  std::unique_ptr<Sink> sink_;
  std::vector<PixelQueue> queues_;
  std::vector<StageStats> stage_stats_;
  std::vector<bool> capture_enabled_;
  std::vector<std::vector<Word>> captures_;
  CycleStats stats_;
  Cycle cycle_ = 0;

  // Scratch reused every cycle.
  std::vector<char> downstream_ready_;
  std::vector<char> stage_ready_;
  std::vector<std::optional<Word>> inputs_;
  std::vector<char> taken_;
};

// total_cycles / clock_hz in milliseconds, computed exactly and rounded
// half-up to 4 decimals. Throws std::domain_error for a zero clock.
double estimate_frame_time(Cycle total_cycles, std::uint64_t clock_hz);

}  // namespace lanepipe

#endif  // LANEPIPE_STREAM_CORE_HPP_
