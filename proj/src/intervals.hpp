#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "types.hpp"

namespace qda {

// One interval of the real line; hi may be +infinity (then hi_closed=false).
// lo == hi with both ends closed is an isolated point.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(double x) const {
    if (x < lo || x > hi) return false;
    if (x == lo && !lo_closed) return false;
    if (x == hi && !hi_closed) return false;
    return true;
  }

  bool is_point() const { return lo == hi; }
  bool unbounded_above() const { return std::isinf(hi); }

  std::string str() const {
    char buf[96];
    if (unbounded_above())
      std::snprintf(buf, sizeof buf, "%c%.12g, inf)", lo_closed ? '[' : '(', lo);
    else
      std::snprintf(buf, sizeof buf, "%c%.12g, %.12g%c", lo_closed ? '[' : '(', lo, hi,
                    hi_closed ? ']' : ')');
    return buf;
  }
};

// Sorted union of pairwise disjoint intervals with no adjacent mergeable pair.
class IntervalUnion {
 public:
  IntervalUnion() = default;

  static IntervalUnion of(std::vector<Interval> parts) {
    // drop empties
    std::vector<Interval> keep;
    for (const Interval& iv : parts) {
      if (iv.lo > iv.hi) continue;
      if (iv.lo == iv.hi && !(iv.lo_closed && iv.hi_closed)) continue;
      keep.push_back(iv);
    }
    std::sort(keep.begin(), keep.end(), [](const Interval& a, const Interval& b) {
      if (a.lo != b.lo) return a.lo < b.lo;
      return a.hi < b.hi;
    });
    std::vector<Interval> merged;
    for (const Interval& iv : keep) {
      if (!merged.empty()) {
        Interval& last = merged.back();
        bool overlap = iv.lo < last.hi;
        bool touch = iv.lo == last.hi && (last.hi_closed || iv.lo_closed);
        if (overlap || touch) {
          if (iv.hi > last.hi) {
            last.hi = iv.hi;
            last.hi_closed = iv.hi_closed;
          } else if (iv.hi == last.hi) {
            last.hi_closed = last.hi_closed || iv.hi_closed;
          }
          continue;
        }
      }
      merged.push_back(iv);
    }
    IntervalUnion out;
    out.parts_ = std::move(merged);
    return out;
  }

  bool contains(double x) const {
    for (const Interval& iv : parts_)
      if (iv.contains(x)) return true;
    return false;
  }

  bool empty() const { return parts_.empty(); }
  const std::vector<Interval>& intervals() const { return parts_; }

  std::string str() const {
    if (parts_.empty()) return "{}";
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += " u ";
      out += parts_[i].str();
    }
    return out;
  }

 private:
  std::vector<Interval> parts_;
};

inline constexpr double kPlusInfinity = std::numeric_limits<double>::infinity();

}  // namespace qda
