#include "dmimo/config_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "dmimo/error.hpp"

namespace dmimo {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = trim(text.substr(start, end - start));
    if (!item.empty()) out.emplace_back(item);
    start = end + 1;
  }
  return out;
}

KeyValueFile KeyValueFile::parse(std::string_view text, std::string source) {
  KeyValueFile file;
  file.source_ = std::move(source);
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(file.source_ + ":" + std::to_string(line_no) +
                        ": expected `key = value`");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) {
      throw ConfigError(file.source_ + ":" + std::to_string(line_no) + ": empty key");
    }
    if (file.entries_.contains(key)) {
      throw ConfigError(file.source_ + ":" + std::to_string(line_no) +
                        ": duplicate key `" + key + "`");
    }
    file.entries_.emplace(key, Entry{value, line_no, false});
    if (end == text.size()) break;
  }
  return file;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

KeyValueFile::Entry* KeyValueFile::find(const std::string& key) {
  auto it = entries_.find(key);
  if (it == entries_.end()) return nullptr;
  it->second.consumed = true;
  return &it->second;
}

void KeyValueFile::fail(const std::string& key, const std::string& why) const {
  auto it = entries_.find(key);
  std::string where = source_;
  if (it != entries_.end()) where += ":" + std::to_string(it->second.line);
  throw ConfigError(where + ": key `" + key + "`: " + why);
}

std::optional<std::string> KeyValueFile::get_string(const std::string& key) {
  if (auto* e = find(key)) return e->value;
  return std::nullopt;
}

std::optional<double> KeyValueFile::get_double(const std::string& key) {
  auto* e = find(key);
  if (!e) return std::nullopt;
  // std::from_chars for double is available in libstdc++ 11.
  double v = 0.0;
  const auto* first = e->value.data();
  const auto* last = first + e->value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) fail(key, "expected a number, got `" + e->value + "`");
  return v;
}

std::optional<std::int64_t> KeyValueFile::get_int(const std::string& key) {
  auto* e = find(key);
  if (!e) return std::nullopt;
  std::int64_t v = 0;
  const auto* first = e->value.data();
  const auto* last = first + e->value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) fail(key, "expected an integer, got `" + e->value + "`");
  return v;
}

std::optional<std::uint64_t> KeyValueFile::get_uint(const std::string& key) {
  auto* e = find(key);
  if (!e) return std::nullopt;
  std::uint64_t v = 0;
  const auto* first = e->value.data();
  const auto* last = first + e->value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    fail(key, "expected a non-negative integer, got `" + e->value + "`");
  }
  return v;
}

std::optional<bool> KeyValueFile::get_bool(const std::string& key) {
  auto* e = find(key);
  if (!e) return std::nullopt;
  if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
  if (e->value == "false" || e->value == "0" || e->value == "no") return false;
  fail(key, "expected true/false, got `" + e->value + "`");
}

std::optional<std::vector<std::string>> KeyValueFile::get_list(const std::string& key) {
  auto* e = find(key);
  if (!e) return std::nullopt;
  return split_list(e->value);
}

void KeyValueFile::reject_unknown() const {
  for (const auto& [key, entry] : entries_) {
    if (!entry.consumed) {
      throw ConfigError(source_ + ":" + std::to_string(entry.line) + ": unknown key `" +
                        key + "`");
    }
  }
}

}  // namespace dmimo
