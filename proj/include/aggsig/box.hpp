#pragma once

#include <cstddef>

namespace aggsig {

// Axis-aligned box, 0-based top-left corner, extents in pixels.
struct Box {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double cx() const noexcept { return x + w / 2.0; }
  double cy() const noexcept { return y + h / 2.0; }
  double area() const noexcept { return w * h; }
  bool valid() const noexcept { return w > 0.0 && h > 0.0; }

  friend bool operator==(const Box&, const Box&) = default;
};

// True when the box overlaps a rows x cols image.
inline bool intersects_image(const Box& b, std::size_t rows, std::size_t cols) noexcept {
  return b.valid() && b.x < static_cast<double>(cols) && b.y < static_cast<double>(rows) &&
         b.x + b.w > 0.0 && b.y + b.h > 0.0;
}

}  // namespace aggsig
