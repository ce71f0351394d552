#ifndef RBHMC_IO_HPP
#define RBHMC_IO_HPP

#include "rbhmc/common.hpp"
#include "rbhmc/diagnostics.hpp"
#include "rbhmc/samplers.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace rbhmc::io {

/// Shortest round-trippable decimal form (17 significant digits).
std::string format_double(double v);

/// Named columns of equal length.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;  // one vector per column
};

void write_table_csv(const std::filesystem::path& path, const Table& table);

/// Header `iter,accepted,energy,x0,...`, one row per retained sample.
void write_chain_csv(const std::filesystem::path& path, const Chain& chain);
nlohmann::json chain_summary(const Chain& chain);

void write_matrix_csv(const std::filesystem::path& path, const RowMatrix& m);
RowMatrix read_matrix_csv(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// Rows `x_lo,x_hi,y_lo,y_hi,density`.
void write_histogram_csv(const std::filesystem::path& path, const Histogram2D& h);
void write_heatmap_svg(const std::filesystem::path& path, const Histogram2D& h);

}  // namespace rbhmc::io

#endif
