#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gapmatch/strings.hpp"

namespace gapmatch {

// Ordered key=value pairs carried in `#` comment lines.
using Metadata = std::vector<std::pair<std::string, std::string>>;

std::optional<std::string> meta_get(const Metadata& meta, const std::string& key);
void meta_set(Metadata& meta, const std::string& key, const std::string& value);

struct InstanceFile {
  Instance instance;
  Metadata meta;
};

// Format: `n m sigma k kprime`, then the pattern line, then the text line.
// Lines starting with '#' are comments; `key=value` tokens in them are kept.
InstanceFile read_instance(std::istream& in);
InstanceFile read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const Instance& inst, const Metadata& meta = {});
void write_instance_file(const std::string& path, const Instance& inst, const Metadata& meta = {});

// Whitespace-separated unsigned integers; throws ParseError on junk.
std::vector<std::uint64_t> parse_integers(const std::string& line);

}  // namespace gapmatch
