#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dmimo {

/// Plain-text `key = value` file. Blank lines and `#` comments are ignored.
/// Every value remembers its source line so that errors can point at it.
class KeyValueFile {
 public:
  struct Entry {
    std::string value;
    int line = 0;
    bool consumed = false;
  };

  static KeyValueFile parse(std::string_view text, std::string source = "<string>");
  static KeyValueFile load(const std::filesystem::path& path);

  bool contains(const std::string& key) const { return entries_.contains(key); }

  std::optional<std::string> get_string(const std::string& key);
  std::optional<double> get_double(const std::string& key);
  std::optional<std::int64_t> get_int(const std::string& key);
  std::optional<std::uint64_t> get_uint(const std::string& key);
  std::optional<bool> get_bool(const std::string& key);
  std::optional<std::vector<std::string>> get_list(const std::string& key);

  /// Throws ConfigError naming the first key that no getter consumed.
  void reject_unknown() const;

  [[noreturn]] void fail(const std::string& key, const std::string& why) const;

  const std::string& source() const { return source_; }

 private:
  Entry* find(const std::string& key);

  std::string source_;
  std::map<std::string, Entry> entries_;
};

std::vector<std::string> split_list(std::string_view text);

}  // namespace dmimo
