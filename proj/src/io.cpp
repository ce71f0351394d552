#include "rbhmc/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rbhmc::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_table_csv(const std::filesystem::path& path, const Table& table) {
  if (table.columns.size() != table.data.size()) throw std::invalid_argument("table: column count mismatch");
  std::size_t rows = table.data.empty() ? 0 : table.data.front().size();
  for (const auto& col : table.data) {
    if (col.size() != rows) throw std::invalid_argument("table '" + table.name + "': ragged columns");
  }
  auto out = open_out(path);
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < table.data.size(); ++c) out << (c ? "," : "") << format_double(table.data[c][r]);
    out << '\n';
  }
}

void write_chain_csv(const std::filesystem::path& path, const Chain& chain) {
  auto out = open_out(path);
  const Eigen::Index dim = chain.samples.empty() ? 0 : chain.samples.front().size();
  out << "iter,accepted,energy";
  for (Eigen::Index d = 0; d < dim; ++d) out << ",x" << d;
  out << '\n';
  for (std::size_t i = 0; i < chain.size(); ++i) {
    out << i << ',' << static_cast<int>(chain.accepted[i]) << ',' << format_double(chain.energies[i]);
    for (Eigen::Index d = 0; d < dim; ++d) out << ',' << format_double(chain.samples[i][d]);
    out << '\n';
  }
}

nlohmann::json chain_summary(const Chain& chain) {
  nlohmann::json j;
  j["n_samples"] = chain.size();
  j["acceptance_rate"] = chain.acceptance_rate();
  j["seed"] = chain.seed;
  j["stream"] = chain.stream;
  if (!chain.samples.empty()) {
    Vector mean = Vector::Zero(chain.samples.front().size());
    for (const auto& s : chain.samples) mean += s;
    mean /= static_cast<double>(chain.size());
    j["mean"] = std::vector<double>(mean.data(), mean.data() + mean.size());
  }
  return j;
}

void write_matrix_csv(const std::filesystem::path& path, const RowMatrix& m) {
  auto out = open_out(path);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? "," : "") << format_double(m(r, c));
    out << '\n';
  }
}

RowMatrix read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::runtime_error(path.string() + ": ragged rows");
    }
    rows.push_back(std::move(row));
  }
  RowMatrix m(static_cast<Eigen::Index>(rows.size()),
              rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return nlohmann::json::parse(in);
}

void write_histogram_csv(const std::filesystem::path& path, const Histogram2D& h) {
  auto out = open_out(path);
  out << "x_lo,x_hi,y_lo,y_hi,density\n";
  for (Eigen::Index ix = 0; ix < h.density.rows(); ++ix) {
    for (Eigen::Index iy = 0; iy < h.density.cols(); ++iy) {
      out << format_double(h.x_edges[ix]) << ',' << format_double(h.x_edges[ix + 1]) << ','
          << format_double(h.y_edges[iy]) << ',' << format_double(h.y_edges[iy + 1]) << ','
          << format_double(h.density(ix, iy)) << '\n';
    }
  }
}

void write_heatmap_svg(const std::filesystem::path& path, const Histogram2D& h) {
  constexpr double kSize = 400.0;
  const double x0 = h.x_edges.front(), x1 = h.x_edges.back();
  const double y0 = h.y_edges.front(), y1 = h.y_edges.back();
  const double sx = kSize / (x1 - x0), sy = kSize / (y1 - y0);
  const double peak = std::max(h.density.maxCoeff(), 1e-300);
  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  for (Eigen::Index ix = 0; ix < h.density.rows(); ++ix) {
    for (Eigen::Index iy = 0; iy < h.density.cols(); ++iy) {
      const int shade = 255 - static_cast<int>(255.0 * h.density(ix, iy) / peak);
      char rect[200];
      std::snprintf(rect, sizeof rect,
                    "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" fill=\"rgb(%d,%d,255)\"/>\n",
                    (h.x_edges[ix] - x0) * sx, (y1 - h.y_edges[iy + 1]) * sy,
                    (h.x_edges[ix + 1] - h.x_edges[ix]) * sx, (h.y_edges[iy + 1] - h.y_edges[iy]) * sy,
                    shade, shade);
      out << rect;
    }
  }
  out << "</svg>\n";
}

}  // namespace rbhmc::io
