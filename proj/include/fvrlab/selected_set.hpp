#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace fvrlab {

// An ordered set of distinct 0-based variable indices.
class SelectedSet {
 public:
  SelectedSet() = default;

  // Sorts the indices; throws std::invalid_argument on duplicates or indices
  // outside [0, p).
  SelectedSet(std::vector<int> indices, int p) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      if (indices_[i] < 0 || indices_[i] >= p) {
        throw std::invalid_argument("SelectedSet: index " + std::to_string(indices_[i]) +
                                    " outside [0, " + std::to_string(p) + ")");
      }
      if (i > 0 && indices_[i] == indices_[i - 1]) {
        throw std::invalid_argument("SelectedSet: duplicate index " +
                                    std::to_string(indices_[i]));
      }
    }
  }

  static SelectedSet all(int p) {
    std::vector<int> idx(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) idx[static_cast<std::size_t>(j)] = j;
    return SelectedSet(std::move(idx), p);
  }

  // CLI and paper figures number variables from 1.
  static SelectedSet from_one_based(const std::vector<int>& indices, int p) {
    std::vector<int> shifted;
    shifted.reserve(indices.size());
    for (int j : indices) {
      if (j < 1) {
        throw std::invalid_argument("SelectedSet: 1-based index " + std::to_string(j) + " < 1");
      }
      shifted.push_back(j - 1);
    }
    return SelectedSet(std::move(shifted), p);
  }

  const std::vector<int>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }

  bool contains(int j) const {
    return std::binary_search(indices_.begin(), indices_.end(), j);
  }

  friend bool operator==(const SelectedSet&, const SelectedSet&) = default;

 private:
  std::vector<int> indices_;  // sorted ascending
};

}  // namespace fvrlab
