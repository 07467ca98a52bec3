#pragma once

#include <stdexcept>
#include <utility>

namespace prbtd {

/// Rectangular sensing area of H x W regions. Regions are addressed either by
/// 1-based (row, column) coordinates or by the 1-based flat index
/// n = (row - 1) * W + column. All indices in this library are 1-based.
class RegionGrid {
public:
    RegionGrid(int height, int width) : height_(height), width_(width) {
        if (height < 1 || width < 1) {
            throw std::invalid_argument("RegionGrid: height and width must be positive");
        }
    }

    int height() const { return height_; }
    int width() const { return width_; }
    int region_count() const { return height_ * width_; }

    /// Flat region index for 1-based coordinates. Throws on out-of-range input.
    int index(int row, int column) const {
        if (row < 1 || row > height_ || column < 1 || column > width_) {
            throw std::out_of_range("RegionGrid::index: coordinates out of range");
        }
        return (row - 1) * width_ + column;
    }

    /// Inverse of index(). Throws on out-of-range input.
    std::pair<int, int> coords(int region) const {
        if (region < 1 || region > region_count()) {
            throw std::out_of_range("RegionGrid::coords: region out of range");
        }
        const int row = (region - 1) / width_ + 1;
        const int column = (region - 1) % width_ + 1;
        return {row, column};
    }

    bool contains(int region) const { return region >= 1 && region <= region_count(); }

private:
    int height_;
    int width_;
};

}  // namespace prbtd
