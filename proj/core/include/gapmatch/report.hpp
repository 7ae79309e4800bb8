#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gapmatch/strings.hpp"

namespace gapmatch {

enum class Answer : std::uint8_t { No, Yes };
enum class Profile : std::uint8_t { Paper, Desk };

const char* to_string(Answer a);
const char* to_string(Profile p);
std::optional<Profile> parse_profile(const std::string& s);

struct TesterReport {
  Answer answer = Answer::No;
  std::optional<PositionSet> reported_set;  // reporting variant only
  std::uint64_t queries_pattern = 0;
  std::uint64_t queries_text = 0;
  std::uint64_t wall_time_ns = 0;
  std::size_t executions = 0;
  std::size_t executions_aborted = 0;
  std::vector<std::string> deviations;
  std::vector<std::string> trace;  // adaptive iteration lines when requested

  std::uint64_t queries() const { return queries_pattern + queries_text; }
  void note(const std::string& d);  // appends unless already present
};

}  // namespace gapmatch
