#include "gapmatch/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gapmatch/errors.hpp"

namespace gapmatch {

std::optional<std::string> meta_get(const Metadata& meta, const std::string& key) {
  for (const auto& [k, v] : meta)
    if (k == key) return v;
  return std::nullopt;
}

void meta_set(Metadata& meta, const std::string& key, const std::string& value) {
  for (auto& [k, v] : meta)
    if (k == key) {
      v = value;
      return;
    }
  meta.emplace_back(key, value);
}

std::vector<std::uint64_t> parse_integers(const std::string& line) {
  std::vector<std::uint64_t> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    std::uint64_t v = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw ParseError("not an unsigned integer: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

namespace {

void parse_comment(const std::string& line, Metadata& meta) {
  std::istringstream ss(line.substr(1));
  std::string tok;
  while (ss >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) continue;
    meta_set(meta, tok.substr(0, eq), tok.substr(eq + 1));
  }
}

}  // namespace

InstanceFile read_instance(std::istream& in) {
  InstanceFile file;
  std::vector<std::string> body;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] == '#') {
      parse_comment(line.substr(first), file.meta);
      continue;
    }
    if (first == std::string::npos && body.size() != 1) continue;  // blank lines, except an empty pattern
    body.push_back(line);
  }
  if (body.size() != 3) throw ParseError("instance file needs exactly 3 data lines, found " +
                                         std::to_string(body.size()));
  const auto header = parse_integers(body[0]);
  if (header.size() != 5) throw ParseError("header must be `n m sigma k kprime`");
  const std::uint64_t n = header[0], m = header[1];
  auto pattern = parse_integers(body[1]);
  auto text = parse_integers(body[2]);
  if (pattern.size() != m) throw ParseError("pattern length does not match header m");
  if (text.size() != n) throw ParseError("text length does not match header n");
  Instance inst{std::move(pattern), std::move(text), header[2], header[3], header[4]};
  try {
    inst.validate();
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
  file.instance = std::move(inst);
  return file;
}

InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst, const Metadata& meta) {
  if (!meta.empty()) {
    out << '#';
    for (const auto& [k, v] : meta) out << ' ' << k << '=' << v;
    out << '\n';
  }
  out << inst.n() << ' ' << inst.m() << ' ' << inst.sigma << ' ' << inst.k << ' ' << inst.kprime << '\n';
  auto line = [&out](const SymbolSeq& s) {
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
    out << '\n';
  };
  line(inst.pattern);
  line(inst.text);
}

void write_instance_file(const std::string& path, const Instance& inst, const Metadata& meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  write_instance(out, inst, meta);
  if (!out) throw ParseError("write failed for " + path);
}

}  // namespace gapmatch
