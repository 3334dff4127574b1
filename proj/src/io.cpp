#include "dimscope/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "dimscope/error.hpp"

namespace dimscope {

namespace fs = std::filesystem;

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), res.ptr};
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool try_parse(std::string_view field, double& out) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return false;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), out);
  return res.ec == std::errc() && res.ptr == field.data() + field.size();
}

bool parse_line(std::string_view line, std::vector<double>& fields) {
  fields.clear();
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const auto field = line.substr(start, comma == std::string_view::npos
                                              ? std::string_view::npos
                                              : comma - start);
    double v;
    if (!try_parse(field, v)) return false;
    fields.push_back(v);
    if (comma == std::string_view::npos) return true;
    start = comma + 1;
  }
}

template <typename T>
void write_le(std::ostream& out, T v) {
  static_assert(std::endian::native == std::endian::little ||
                std::endian::native == std::endian::big);
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  out.write(bytes.data(), sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
  std::array<char, sizeof(T)> bytes;
  if (!in.read(bytes.data(), sizeof(T))) {
    throw InvalidInput("truncated binary dataset");
  }
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  T v;
  std::memcpy(&v, bytes.data(), sizeof(T));
  return v;
}

constexpr std::array<char, 4> kMagic{'D', 'S', 'E', 'T'};

}  // namespace

double parse_double(std::string_view field) {
  double v;
  if (!try_parse(field, v)) {
    throw InvalidInput("not a number: '" + std::string(field) + "'");
  }
  return v;
}

DataSet read_csv(std::istream& in) {
  std::vector<double> values;
  std::vector<double> fields;
  std::size_t dim = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = trim(line);
    if (view.empty()) continue;
    if (!parse_line(view, fields)) {
      if (rows == 0 && line_no == 1) continue;  // header
      throw InvalidInput("line " + std::to_string(line_no) +
                         ": malformed numeric field");
    }
    if (rows == 0) {
      dim = fields.size();
    } else if (fields.size() != dim) {
      throw InvalidInput("line " + std::to_string(line_no) + ": expected " +
                         std::to_string(dim) + " fields, got " +
                         std::to_string(fields.size()));
    }
    values.insert(values.end(), fields.begin(), fields.end());
    ++rows;
  }
  return {rows, dim, std::move(values)};
}

void write_csv(std::ostream& out, const DataSet& data) {
  std::string line;
  for (std::size_t i = 0; i < data.n_samples(); ++i) {
    line.clear();
    const auto r = data.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (k) line += ',';
      line += format_double(r[k]);
    }
    line += '\n';
    out << line;
  }
}

DataSet read_dset(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), 4) || magic != kMagic) {
    throw InvalidInput("missing DSET magic");
  }
  const auto version = read_le<std::uint32_t>(in);
  if (version != 1) {
    throw InvalidInput("unsupported DSET version " + std::to_string(version));
  }
  const auto n = read_le<std::uint64_t>(in);
  const auto d = read_le<std::uint64_t>(in);
  if (d != 0 && n > (std::uint64_t{1} << 40) / d) {
    throw InvalidInput("DSET header declares an implausible size");
  }
  std::vector<double> values(n * d);
  for (double& v : values) v = read_le<double>(in);
  return {n, d, std::move(values)};
}

void write_dset(std::ostream& out, const DataSet& data) {
  out.write(kMagic.data(), 4);
  write_le<std::uint32_t>(out, 1);
  write_le<std::uint64_t>(out, data.n_samples());
  write_le<std::uint64_t>(out, data.ambient_dim());
  for (double v : data.values()) write_le<double>(out, v);
}

DataSet load_dataset(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::array<char, 4> head{};
  in.read(head.data(), 4);
  const bool binary = in.gcount() == 4 && head == kMagic;
  in.clear();
  in.seekg(0);
  return binary ? read_dset(in) : read_csv(in);
}

void save_dataset(const fs::path& path, const DataSet& data) {
  const bool binary = path.extension() == ".dset";
  write_file_atomic(
      path,
      [&](std::ostream& out) {
        if (binary) {
          write_dset(out, data);
        } else {
          write_csv(out, data);
        }
      },
      binary);
}

void write_file_atomic(const fs::path& path,
                       const std::function<void(std::ostream&)>& writer,
                       bool binary) {
  std::random_device rd;
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, binary ? std::ios::binary | std::ios::trunc
                                  : std::ios::out | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + path.string());
    writer(out);
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw InvalidInput("write failed for " + path.string());
    }
  }
  fs::rename(tmp, path);
}

void write_key_values(std::ostream& out, const KeyValues& kv) {
  for (const auto& [k, v] : kv) out << k << '=' << v << '\n';
}

KeyValues read_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  return kv;
}

}  // namespace dimscope
