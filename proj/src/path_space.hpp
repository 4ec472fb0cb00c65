#pragma once

// Cube paths whose per-cube gates are images of a set of gate pairs.
// Shared by the configuration and prototype enumerators.

#include "peano/generators.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace peano::detail {

/// Points closed under cube isometries, numbered in sorted order so that
/// comparisons of ids agree with comparisons of points.
struct PointUniverse {
  int dim = 0, div = 0, genus = 0;
  std::vector<BaseMap> isos;
  std::map<Point, int> ids;
  std::vector<Point> points;
  std::vector<std::vector<int>> iso;  // iso[s][id]
  std::vector<Cube> cubes;
  std::vector<Cube> steps;              // every non-zero vector of {-1,0,1}^d
  std::vector<std::vector<int>> through;  // entry id after leaving exit id by a step, or -1

  PointUniverse(int dim, int div, const std::vector<Point>& seeds);

  int find(const Point& p) const {
    auto it = ids.find(p);
    return it == ids.end() ? -1 : it->second;
  }
  int cube_index(const Cube& c) const {
    int idx = 0;
    for (int a = dim - 1; a >= 0; --a) {
      if (c[a] < 0 || c[a] >= div) return -1;
      idx = idx * div + c[a];
    }
    return idx;
  }
  /// (cube index, local point id) for every cube of the grid containing p.
  std::vector<std::pair<int, int>> locate(const Point& p) const;
};

class PathSpace {
 public:
  struct Step {
    int cube, entry, exit;
    auto operator<=>(const Step&) const = default;
  };
  using Path = std::vector<Step>;

  /// `pairs` are (entrance, exit) ids of the pattern gates.
  PathSpace(const PointUniverse& u, std::vector<std::pair<int, int>> pairs, const PrototypeFilters& filters);

  /// Visits every canonical path of pattern r (smallest under the symmetries
  /// of its gate pair); stops when visit returns false.
  template <class Visit>
  void paths(int r, Visit&& visit) {
    prepare(r);
    for (auto [c, id] : starts_) {
      extend(c, id, visit);
      if (stop_) return;
    }
  }

  bool exists(int r) {
    bool found = false;
    paths(r, [&](const Path&) {
      found = true;
      return false;
    });
    return found;
  }

 private:
  void prepare(int r);
  bool canonical_path() const;
  bool connected_rest() const;

  // Returns whether some completion exists from this state, canonical or
  // not; states without one are remembered and skipped later.
  template <class Visit>
  bool extend(int c, int entry, Visit& visit) {
    const bool memo = u_.genus <= 64;
    const DeadKey key{mask_, c, entry};
    if (memo && dead_.count(key)) return false;
    visited_[c] = 1;
    mask_ |= std::uint64_t{1} << (c & 63);
    bool completed = false;
    const bool final_cube = static_cast<int>(path_.size()) + 1 == u_.genus;
    if (final_cube || connected_rest()) {
      auto range = std::equal_range(types_.begin(), types_.end(), std::pair<int, int>(entry, -1),
                                    [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto it = range.first; it != range.second && !stop_; ++it) {
        const int x = it->second;
        path_.push_back(Step{c, entry, x});
        if (final_cube) {
          if (is_last(c, x)) {
            completed = true;
            if (canonical_path() && !visit(path_)) stop_ = true;
          }
        } else {
          for (int s : steps_) {
            int next_entry = u_.through[x][s];
            if (next_entry < 0) continue;
            Cube n = u_.cubes[c];
            for (int a = 0; a < u_.dim; ++a) n[a] += u_.steps[s][a];
            int j = u_.cube_index(n);
            if (j < 0 || visited_[j]) continue;
            completed = extend(j, next_entry, visit) || completed;
            if (stop_) break;
          }
        }
        path_.pop_back();
      }
    }
    visited_[c] = 0;
    mask_ &= ~(std::uint64_t{1} << (c & 63));
    if (memo && !completed && !stop_) dead_.insert(key);
    return completed;
  }

  bool is_last(int c, int x) const {
    for (auto [lc, lx] : lasts_)
      if (lc == c && lx == x) return true;
    return false;
  }

  const PointUniverse& u_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<std::pair<int, int>> types_;  // sorted (entry, exit)
  std::vector<int> steps_;
  std::vector<std::pair<int, int>> starts_, lasts_;
  std::vector<std::pair<int, bool>> stab_;
  std::vector<char> visited_;
  std::uint64_t mask_ = 0;
  struct DeadKey {
    std::uint64_t mask;
    int cube, entry;
    bool operator==(const DeadKey&) const = default;
  };
  struct DeadHash {
    std::size_t operator()(const DeadKey& k) const noexcept {
      return std::hash<std::uint64_t>()(k.mask * 0x9E3779B97F4A7C15ull ^ (std::uint64_t(k.cube) << 32 | unsigned(k.entry)));
    }
  };
  std::unordered_set<DeadKey, DeadHash> dead_;  // per pattern, cleared in prepare
  Path path_;
  bool stop_ = false;
};

}  // namespace peano::detail
