#include "gapmatch/query_oracle.hpp"

namespace gapmatch {

QueryOracle::QueryOracle(const Instance& inst, Options opts) : inst_(&inst), opts_(opts) {
  if (opts_.dedupe) {
    seen_pattern_.assign(inst.m(), false);
    seen_text_.assign(inst.n(), false);
  }
}

bool QueryOracle::count_slow(Side side, std::size_t i) {
  if (opts_.dedupe) {
    auto& seen = side == Side::Pattern ? seen_pattern_ : seen_text_;
    if (seen[i]) return false;
    seen[i] = true;
  }
  if (opts_.keep_log) log_.push_back({side, i});
  return true;
}

}  // namespace gapmatch
