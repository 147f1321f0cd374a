#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "bugsna/activity.hpp"
#include "bugsna/clustering.hpp"

namespace bugsna {

// 8-bit grayscale image, row-major.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
};

// One pixel row per matrix row in `order`, one column per window.
// Linear: round(255 * v / v_max). Log: round(255 * log10(1 + 9 v / v_max)).
// An all-zero matrix renders black. Throws std::invalid_argument for an
// empty matrix.
GrayImage render_heatmap(const CentralityMatrix& matrix, std::span<const std::size_t> order, bool log_scale = false);

// Binary portable pixmap (P6), gray replicated over the three channels.
void write_ppm(std::ostream& out, const GrayImage& image);

// participant,cluster_id,w0,...,wN in heatmap order.
void write_heatmap_csv(std::ostream& out, const CentralityMatrix& matrix, const ClusterAssignment& assignment,
                       std::span<const std::size_t> order);

}  // namespace bugsna
