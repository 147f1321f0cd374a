#include "bugsna/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "bugsna/csv.hpp"

namespace bugsna {

GrayImage render_heatmap(const CentralityMatrix& matrix, std::span<const std::size_t> order, bool log_scale) {
  if (matrix.empty() || matrix.cols() == 0) throw std::invalid_argument("render_heatmap: empty matrix");
  if (order.size() != matrix.rows()) throw std::invalid_argument("render_heatmap: order does not cover the rows");
  GrayImage image;
  image.width = matrix.cols();
  image.height = matrix.rows();
  image.pixels.assign(image.width * image.height, 0);
  const double v_max = matrix.max_value();
  if (!(v_max > 0.0)) return image;
  for (std::size_t y = 0; y < order.size(); ++y) {
    const auto row = matrix.row(order[y]);
    for (std::size_t x = 0; x < row.size(); ++x) {
      const double scaled = row[x] / v_max;
      const double level = log_scale ? std::log10(1.0 + 9.0 * scaled) : scaled;
      image.pixels[y * image.width + x] = static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(level, 0.0, 1.0)));
    }
  }
  return image;
}

void write_ppm(std::ostream& out, const GrayImage& image) {
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  for (std::uint8_t p : image.pixels) {
    const char c = static_cast<char>(p);
    out.put(c).put(c).put(c);
  }
}

void write_heatmap_csv(std::ostream& out, const CentralityMatrix& matrix, const ClusterAssignment& assignment,
                       std::span<const std::size_t> order) {
  out << "participant,cluster_id";
  for (std::size_t c = 0; c < matrix.cols(); ++c) out << ",w" << c;
  out << '\n';
  for (std::size_t r : order) {
    out << csv_escape(matrix.participants()[r]) << ',' << assignment.labels.at(r);
    for (double v : matrix.row(r)) out << ',' << format_double(v);
    out << '\n';
  }
}

}  // namespace bugsna
