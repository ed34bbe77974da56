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

#include "lanepipe/stream_core.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "lanepipe/error.hpp"

namespace lanepipe {

void FrameGeometry::validate() const {
  if (width < 3 || height < 3) {
    throw ConfigError("frame geometry must be at least 3x3, got " + std::to_string(width) +
                      "x" + std::to_string(height));
  }
}

std::optional<Cycle> StageStats::latency() const {
  if (!first_input_cycle || !first_output_cycle) return std::nullopt;
  return *first_output_cycle - *first_input_cycle;
}

void PixelQueue::push(Word value) {
  if (full()) throw std::logic_error("PixelQueue: enqueue on full queue");
  items_.push_back(value);
}

Word PixelQueue::pop() {
  if (items_.empty()) throw std::logic_error("PixelQueue: dequeue on empty queue");
  Word v = items_.front();
  items_.pop_front();
  return v;
}

Word PixelQueue::front() const {
  if (items_.empty()) throw std::logic_error("PixelQueue: front of empty queue");
  return items_.front();
}

std::optional<Word> VectorSource::peek() const {
  if (next_ >= beats_.size()) return std::nullopt;
  return beats_[next_];
}

void VectorSource::load(std::vector<Word> beats) {
  beats_ = std::move(beats);
  next_ = 0;
}

StallSchedule::StallSchedule(std::vector<std::pair<Cycle, bool>> entries)
    : entries_(std::move(entries)) {
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

StallSchedule StallSchedule::parse(std::string_view text) {
  std::vector<std::pair<Cycle, bool>> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const auto comma = line.find(',');
    auto bad = [&] {
      return ConfigError("stall schedule line " + std::to_string(line_no) +
                         ": expected `cycle,ready_bit`, got `" + std::string(line) + "`");
    };
    if (comma == std::string_view::npos) throw bad();
    const auto cycle_text = trim(line.substr(0, comma));
    const auto bit_text = trim(line.substr(comma + 1));
    Cycle cycle = 0;
    auto [p, ec] = std::from_chars(cycle_text.data(), cycle_text.data() + cycle_text.size(), cycle);
    if (ec != std::errc{} || p != cycle_text.data() + cycle_text.size()) throw bad();
    if (bit_text != "0" && bit_text != "1") throw bad();
    entries.emplace_back(cycle, bit_text == "1");
  }
  return StallSchedule(std::move(entries));
}

bool StallSchedule::ready_at(Cycle cycle) const {
  auto it = std::upper_bound(entries_.begin(), entries_.end(), cycle,
                             [](Cycle c, const auto& e) { return c < e.first; });
  if (it == entries_.begin()) return true;
  return std::prev(it)->second;
}

void CollectingSink::accept(Cycle cycle, Word data) {
  data_.push_back(data);
  cycles_.push_back(cycle);
}

void CollectingSink::clear() {
  data_.clear();
  cycles_.clear();
}

Pipeline::Pipeline(std::unique_ptr<Source> source, std::vector<std::unique_ptr<Stage>> stages,
                   std::unique_ptr<Sink> sink, std::size_t queue_capacity)
    : source_(std::move(source)), stages_(std::move(stages)), sink_(std::move(sink)) {
  if (!source_) throw ConfigError("pipeline has no source connected");
  if (!sink_) throw ConfigError("pipeline has no sink connected");
  for (std::size_t i = 0; i < stages_.size(); ++i) {
    if (!stages_[i]) throw ConfigError("pipeline stage " + std::to_string(i) + " is unconnected");
  }
  const std::size_t n = stages_.size();
  for (std::size_t i = 0; i + 1 < n; ++i) queues_.emplace_back(queue_capacity);
  stage_stats_.resize(n);
  for (std::size_t i = 0; i < n; ++i) stage_stats_[i].name = std::string(stages_[i]->name());
  capture_enabled_.assign(n, false);
  captures_.resize(n);
  downstream_ready_.assign(n, 0);
  stage_ready_.assign(n, 0);
  inputs_.assign(n, std::nullopt);
  taken_.assign(n, 0);
}

void Pipeline::set_capture(std::size_t index, bool enabled) {
  capture_enabled_.at(index) = enabled;
}

void Pipeline::reset() {
  for (auto& s : stages_) s->reset();
  for (auto& q : queues_) q.clear();
  for (std::size_t i = 0; i < stage_stats_.size(); ++i) {
    stage_stats_[i] = StageStats{};
    stage_stats_[i].name = std::string(stages_[i]->name());
    captures_[i].clear();
  }
  stats_ = CycleStats{};
  cycle_ = 0;
}

bool Pipeline::idle() const {
  if (source_->peek()) return false;
  for (const auto& q : queues_) {
    if (!q.empty()) return false;
  }
  for (const auto& s : stages_) {
    if (!s->idle()) return false;
  }
  return true;
}

const CycleStats& Pipeline::advance(Cycle cycles) {
  for (Cycle i = 0; i < cycles; ++i) step();
  return stats_;
}

const CycleStats& Pipeline::run_until_idle(Cycle max_cycles) {
  Cycle budget = max_cycles;
  while (!idle()) {
    if (budget-- == 0) throw std::runtime_error("pipeline did not drain within the cycle budget");
    step();
  }
  return stats_;
}

void Pipeline::step() {
  const Cycle now = cycle_;
  const std::size_t n = stages_.size();
  const bool sink_ready = sink_->ready(now);

  for (std::size_t i = 0; i < n; ++i) {
    if (stages_[i]->out_valid() && !stage_stats_[i].first_output_cycle) {
      stage_stats_[i].first_output_cycle = now;
    }
  }

  if (n == 0) {
    if (auto beat = source_->peek(); beat && sink_ready) {
      source_->pop();
      sink_->accept(now, *beat);
      ++stats_.transfers_in;
      ++stats_.transfers_out;
      if (!stats_.first_output_cycle) stats_.first_output_cycle = now;
    }
    ++cycle_;
    stats_.cycles_elapsed = cycle_;
    return;
  }

  // Ready propagation, sink -> source.
  downstream_ready_[n - 1] = sink_ready;
  stage_ready_[n - 1] = stages_[n - 1]->ready(sink_ready);
  for (std::size_t i = n - 1; i-- > 0;) {
    const PixelQueue& q = queues_[i];
    const bool consumer_ready = stage_ready_[i + 1];
    bool ds;
    if (q.empty()) {
      ds = consumer_ready || q.capacity() > 0;
    } else {
      ds = q.occupancy() - (consumer_ready ? 1 : 0) < q.capacity();
    }
    downstream_ready_[i] = ds;
    stage_ready_[i] = stages_[i]->ready(ds);
  }

  std::fill(inputs_.begin(), inputs_.end(), std::nullopt);
  std::fill(taken_.begin(), taken_.end(), 0);

  if (auto beat = source_->peek(); beat && stage_ready_[0]) {
    source_->pop();
    inputs_[0] = *beat;
    ++stats_.transfers_in;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    PixelQueue& q = queues_[i];
    const bool consumer_ready = stage_ready_[i + 1];
    const bool was_empty = q.empty();
    if (!was_empty && consumer_ready) inputs_[i + 1] = q.pop();
    if (stages_[i]->out_valid() && downstream_ready_[i]) {
      taken_[i] = 1;
      if (was_empty && consumer_ready) {
        inputs_[i + 1] = stages_[i]->out_data();
      } else {
        q.push(stages_[i]->out_data());
      }
    }
  }

  Stage& last = *stages_[n - 1];
  if (last.out_valid()) {
    if (sink_ready) {
      taken_[n - 1] = 1;
      sink_->accept(now, last.out_data());
      ++stats_.transfers_out;
      if (!stats_.first_output_cycle) stats_.first_output_cycle = now;
    } else {
      ++stats_.stall_cycles;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    StageStats& st = stage_stats_[i];
    if (inputs_[i]) {
      ++st.transfers_in;
      if (!st.first_input_cycle) st.first_input_cycle = now;
    }
    if (taken_[i]) {
      ++st.transfers_out;
      if (!st.first_output_transfer_cycle) st.first_output_transfer_cycle = now;
      st.last_output_transfer_cycle = now;
      if (capture_enabled_[i]) captures_[i].push_back(stages_[i]->out_data());
    }
  }

  for (std::size_t i = 0; i < n; ++i) stages_[i]->clock(now, inputs_[i], taken_[i] != 0);

  ++cycle_;
  stats_.cycles_elapsed = cycle_;
}

double estimate_frame_time(Cycle total_cycles, std::uint64_t clock_hz) {
  if (clock_hz == 0) throw std::domain_error("clock frequency must be positive");
  // ms * 1e4 = cycles * 1e7 / hz, rounded half-up.
  using u128 = unsigned __int128;
  const u128 num = static_cast<u128>(total_cycles) * 10'000'000u;
  const u128 den = clock_hz;
  const u128 scaled = (2 * num + den) / (2 * den);
  return static_cast<double>(scaled) / 1e4;
}

}  // namespace lanepipe
