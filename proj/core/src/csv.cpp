#include "dmimo/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "dmimo/error.hpp"

namespace dmimo {

CsvTable::CsvTable(std::string kind, std::vector<std::string> columns)
    : kind_(std::move(kind)), columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) {
    throw std::invalid_argument("csv row has " + std::to_string(cells.size()) +
                                " cells, expected " + std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(cells));
}

namespace {

void append_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n") == std::string::npos) {
      out += c;
    } else {
      out += '"';
      for (char ch : c) {
        if (ch == '"') out += '"';
        out += ch;
      }
      out += '"';
    }
  }
  out += '\n';
}

}  // namespace

std::string CsvTable::to_csv() const {
  std::string out = "# dmimo-csv ";
  out += kCsvSchemaVersion;
  out += " kind=" + kind_ + "\n";
  append_row(out, columns_);
  for (const auto& r : rows_) append_row(out, r);
  return out;
}

std::string CsvTable::to_json() const {
  nlohmann::ordered_json doc;
  doc["schema"] = std::string("dmimo-csv ") + std::string(kCsvSchemaVersion);
  doc["kind"] = kind_;
  doc["columns"] = columns_;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : rows_) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      double number = 0.0;
      const char* first = r[i].data();
      const char* last = first + r[i].size();
      const auto [ptr, ec] = std::from_chars(first, last, number);
      if (!r[i].empty() && ec == std::errc() && ptr == last) {
        obj[columns_[i]] = number;
      } else {
        obj[columns_[i]] = r[i];
      }
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string cell(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

std::string cell(int value) { return std::to_string(value); }

std::string cell(std::string_view value) { return std::string(value); }

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename " + tmp.string() + ": " + ec.message());
  }
}

}  // namespace dmimo
