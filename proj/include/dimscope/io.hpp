#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dimscope/data.hpp"

namespace dimscope {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

/// Exact decimal-to-binary parse of a whole field. Throws InvalidInput.
double parse_double(std::string_view field);

/// CSV dataset: optional header line, one sample per line, comma-separated.
/// A first line that does not parse as numbers is treated as a header.
DataSet read_csv(std::istream& in);
void write_csv(std::ostream& out, const DataSet& data);

/// Binary dataset: "DSET", u32 version = 1, u64 N, u64 D, N*D float64,
/// row-major, all little-endian.
DataSet read_dset(std::istream& in);
void write_dset(std::ostream& out, const DataSet& data);

/// Picks the format from the extension (".dset" is binary, anything else
/// CSV). Loading also recognises the binary magic regardless of extension.
DataSet load_dataset(const std::filesystem::path& path);
void save_dataset(const std::filesystem::path& path, const DataSet& data);

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer,
                       bool binary = false);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Plain "key=value" lines.
void write_key_values(std::ostream& out, const KeyValues& kv);
KeyValues read_key_values(std::istream& in);

}  // namespace dimscope
