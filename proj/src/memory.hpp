#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace kvis {

// Word-granular accounting of mutable workspace against a budget of
// O(s) machine words. Metering is cooperative: algorithms charge the
// declared capacity of each piece of state they hold. In strict mode an
// over-budget charge throws instead of proceeding.
class WorkspaceMeter {
 public:
  WorkspaceMeter() = default;
  WorkspaceMeter(std::int64_t budget_words, bool strict)
      : budget_words_(budget_words), strict_(strict) {}

  void charge(std::int64_t delta_words, const char* tag) {
    current_words_ += delta_words;
    if (current_words_ > peak_words_) peak_words_ = current_words_;
    if (strict_ && budget_words_ >= 0 && current_words_ > budget_words_)
      throw BudgetExceededError(tag, current_words_, budget_words_);
  }

  std::int64_t current_words() const { return current_words_; }
  std::int64_t peak_words() const { return peak_words_; }
  std::int64_t budget_words() const { return budget_words_; }
  bool strict() const { return strict_; }

 private:
  std::int64_t budget_words_ = -1;  // -1: unlimited
  bool strict_ = false;
  std::int64_t current_words_ = 0;
  std::int64_t peak_words_ = 0;
};

// RAII charge for a fixed block of workspace words.
class ScopedWords {
 public:
  ScopedWords(WorkspaceMeter& meter, std::int64_t words, const char* tag)
      : meter_(meter), words_(words) {
    meter_.charge(words_, tag);
  }
  ~ScopedWords() { meter_.charge(-words_, "release"); }
  ScopedWords(const ScopedWords&) = delete;
  ScopedWords& operator=(const ScopedWords&) = delete;

 private:
  WorkspaceMeter& meter_;
  std::int64_t words_;
};

// Indexed access to immutable input records with a monotone read counter.
// The counter is atomic so one view can serve concurrent queries.
template <class Rec>
class ReadOnlyView {
 public:
  explicit ReadOnlyView(std::span<const Rec> data) : data_(data) {}

  std::size_t size() const { return data_.size(); }

  const Rec& read(std::size_t i) const {
    reads_.fetch_add(1, std::memory_order_relaxed);
    return data_[i];
  }

  std::uint64_t read_count() const { return reads_.load(std::memory_order_relaxed); }
  void reset_reads() const { reads_.store(0, std::memory_order_relaxed); }

 private:
  std::span<const Rec> data_;
  mutable std::atomic<std::uint64_t> reads_{0};
};

// Counter snapshot for one algorithm run; serializes to one CSV row.
struct CounterReport {
  std::string algo;
  std::uint64_t n = 0;
  std::int64_t k = 0;
  std::int64_t s = 0;
  std::uint64_t c = 0;
  std::uint64_t reads = 0;
  std::uint64_t peak_words = 0;
  std::uint64_t emitted = 0;

  static const char* csv_header() { return "algo,n,k,s,c,reads,peak_words,emitted"; }
  std::string csv_row() const {
    return algo + "," + std::to_string(n) + "," + std::to_string(k) + "," +
           std::to_string(s) + "," + std::to_string(c) + "," + std::to_string(reads) + "," +
           std::to_string(peak_words) + "," + std::to_string(emitted);
  }
};

// Append-only output stream. Algorithms only see this interface, so they
// cannot re-read what they emitted.
template <class Rec>
class Sink {
 public:
  virtual ~Sink() = default;
  void emit(Rec r) {
    ++emitted_;
    accept(std::move(r));
  }
  std::uint64_t emitted() const { return emitted_; }

 protected:
  virtual void accept(Rec r) = 0;

 private:
  std::uint64_t emitted_ = 0;
};

// Sink that keeps everything; the reading side belongs to callers and
// tests, never to the algorithm that filled it.
template <class Rec>
class RecordingSink : public Sink<Rec> {
 public:
  const std::vector<Rec>& records() const { return records_; }

 protected:
  void accept(Rec r) override { records_.push_back(std::move(r)); }

 private:
  std::vector<Rec> records_;
};

// Sink that drops records after counting them.
template <class Rec>
class CountingSink : public Sink<Rec> {
 protected:
  void accept(Rec) override {}
};

}  // namespace kvis
