#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hmt/grid.hpp"

namespace hmt::io {

/// CSV with full-precision scientific notation (17 significant digits).
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
std::string format_full(double v);

void write_text_file(const std::filesystem::path& path, const std::string& content);

enum class GridFormat { Binary, Csv };

/// Writes <base>.json header {dim, box_side, samples_per_dim, format, data}
/// plus <base>.bin (interleaved re/im doubles) or <base>.csv (re,im rows).
void save_grid(const GridFunction& f, const std::filesystem::path& base,
               GridFormat format = GridFormat::Binary);
GridFunction load_grid(const std::filesystem::path& header_json);

} // namespace hmt::io
