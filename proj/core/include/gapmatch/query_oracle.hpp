#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gapmatch/strings.hpp"

namespace gapmatch {

enum class Side : std::uint8_t { Pattern, Text };

struct QueryRecord {
  Side side;
  std::size_t position;
};

// Counted read access to an instance. Testers read P and T only through here.
class QueryOracle {
 public:
  struct Options {
    bool dedupe = false;      // count each position once
    bool keep_log = false;    // record every counted read
  };

  explicit QueryOracle(const Instance& inst) : QueryOracle(inst, Options{}) {}
  QueryOracle(const Instance& inst, Options opts);

  const Instance& instance() const { return *inst_; }
  std::size_t n() const { return inst_->n(); }
  std::size_t m() const { return inst_->m(); }
  std::size_t k() const { return inst_->k; }
  std::size_t kprime() const { return inst_->kprime; }
  std::uint64_t sigma() const { return inst_->sigma; }
  std::size_t delta() const { return inst_->delta(); }

  Symbol pattern(std::size_t i) {
    if (count(Side::Pattern, i)) ++pattern_queries_;
    return inst_->pattern[i];
  }
  Symbol text(std::size_t i) {
    if (count(Side::Text, i)) ++text_queries_;
    return inst_->text[i];
  }

  std::uint64_t pattern_queries() const { return pattern_queries_; }
  std::uint64_t text_queries() const { return text_queries_; }
  std::uint64_t total_queries() const { return pattern_queries_ + text_queries_; }
  const std::vector<QueryRecord>& log() const { return log_; }

 private:
  bool count(Side side, std::size_t i) {
    if (!opts_.dedupe && !opts_.keep_log) return true;
    return count_slow(side, i);
  }
  bool count_slow(Side side, std::size_t i);

  const Instance* inst_;
  Options opts_;
  std::uint64_t pattern_queries_ = 0;
  std::uint64_t text_queries_ = 0;
  std::vector<bool> seen_pattern_;
  std::vector<bool> seen_text_;
  std::vector<QueryRecord> log_;
};

}  // namespace gapmatch
