#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "folcat/rational.hpp"

// Canonical finite unions of rational points and open intervals, the
// witness shape for o-minimality. Unbounded endpoints are symbolic.

namespace folcat {

struct Endpoint {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::Finite;
  Rational value;

  static Endpoint neg_inf() { return {Kind::NegInf, Rational(0)}; }
  static Endpoint pos_inf() { return {Kind::PosInf, Rational(0)}; }
  static Endpoint at(const Rational& q) { return {Kind::Finite, q}; }

  bool finite() const { return kind == Kind::Finite; }

  friend bool operator==(const Endpoint& a, const Endpoint& b) {
    if (a.kind != b.kind) return false;
    return a.kind != Kind::Finite || a.value == b.value;
  }
  friend bool operator<(const Endpoint& a, const Endpoint& b) {
    if (a.kind == Kind::NegInf) return b.kind != Kind::NegInf;
    if (a.kind == Kind::PosInf) return false;
    if (b.kind == Kind::NegInf) return false;
    if (b.kind == Kind::PosInf) return true;
    return a.value < b.value;
  }
};

inline std::string to_string(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::NegInf: return "-inf";
    case Endpoint::Kind::PosInf: return "+inf";
    default: return to_string(e.value);
  }
}

/// Point(q) or the open interval (lo, hi) with lo < hi.
struct IntervalComponent {
  bool is_point = true;
  Rational point;
  Endpoint lo, hi;

  static IntervalComponent at(const Rational& q) {
    IntervalComponent c;
    c.is_point = true;
    c.point = q;
    return c;
  }
  static IntervalComponent open(const Endpoint& lo, const Endpoint& hi) {
    IntervalComponent c;
    c.is_point = false;
    c.lo = lo;
    c.hi = hi;
    return c;
  }

  bool contains(const Rational& q) const {
    if (is_point) return q == point;
    const Endpoint e = Endpoint::at(q);
    return lo < e && e < hi;
  }

  friend bool operator==(const IntervalComponent& a, const IntervalComponent& b) {
    if (a.is_point != b.is_point) return false;
    if (a.is_point) return a.point == b.point;
    return a.lo == b.lo && a.hi == b.hi;
  }
};

/// Strictly increasing, pairwise disjoint and merge-free: two open
/// intervals sharing an endpoint whose separating point is present are
/// fused into one interval.
struct IntervalUnion {
  std::vector<IntervalComponent> components;

  bool empty() const { return components.empty(); }

  bool contains(const Rational& q) const {
    for (const auto& c : components)
      if (c.contains(q)) return true;
    return false;
  }

  friend bool operator==(const IntervalUnion& a, const IntervalUnion& b) {
    return a.components == b.components;
  }
  friend bool operator!=(const IntervalUnion& a, const IntervalUnion& b) {
    return !(a == b);
  }
};

namespace detail {

inline Endpoint component_low(const IntervalComponent& c) {
  return c.is_point ? Endpoint::at(c.point) : c.lo;
}

}  // namespace detail

/// Rebuilds the canonical representation of the same set: components are
/// sorted, overlaps are fused, and every (a,b) {b} (b,c) triple becomes
/// (a,c). Idempotent.
inline IntervalUnion normalize(const IntervalUnion& in) {
  // collect candidate boundary points
  std::vector<Rational> bounds;
  for (const auto& c : in.components) {
    if (c.is_point) {
      bounds.push_back(c.point);
      continue;
    }
    if (c.lo.finite()) bounds.push_back(c.lo.value);
    if (c.hi.finite()) bounds.push_back(c.hi.value);
  }
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

  // evaluate membership on every point and every open cell between them
  struct Cell {
    IntervalComponent shape;
    bool full = false;
  };
  std::vector<Cell> cells;
  auto sample_open = [&](const Endpoint& lo, const Endpoint& hi) -> Rational {
    if (lo.finite() && hi.finite())
      return (lo.value + hi.value) * Rational(1, 2);
    if (lo.finite()) return lo.value + Rational(1);
    if (hi.finite()) return hi.value - Rational(1);
    return Rational(0);
  };
  Endpoint prev = Endpoint::neg_inf();
  for (std::size_t i = 0; i <= bounds.size(); ++i) {
    const Endpoint next =
        i < bounds.size() ? Endpoint::at(bounds[i]) : Endpoint::pos_inf();
    Cell open{IntervalComponent::open(prev, next), false};
    open.full = in.contains(sample_open(prev, next));
    cells.push_back(open);
    if (i < bounds.size()) {
      Cell point{IntervalComponent::at(bounds[i]), false};
      point.full = in.contains(bounds[i]);
      cells.push_back(point);
      prev = next;
    }
  }

  // stitch: a run of full cells open-point-open-... collapses into one
  // open interval; stray full points stay points
  IntervalUnion out;
  std::size_t i = 0;
  while (i < cells.size()) {
    if (!cells[i].full) {
      ++i;
      continue;
    }
    if (cells[i].shape.is_point) {
      out.components.push_back(cells[i].shape);
      ++i;
      continue;
    }
    Endpoint lo = cells[i].shape.lo;
    Endpoint hi = cells[i].shape.hi;
    std::size_t j = i + 1;
    while (j + 1 < cells.size() && cells[j].full && cells[j + 1].full &&
           cells[j].shape.is_point && !cells[j + 1].shape.is_point) {
      hi = cells[j + 1].shape.hi;
      j += 2;
    }
    out.components.push_back(IntervalComponent::open(lo, hi));
    i = j;
  }
  return out;
}

inline std::string to_string(const IntervalUnion& u) {
  if (u.components.empty()) return "empty";
  std::string out;
  for (const auto& c : u.components) {
    if (!out.empty()) out += " \u222a ";
    if (c.is_point)
      out += "{" + to_string(c.point) + "}";
    else
      out += "(" + to_string(c.lo) + ", " + to_string(c.hi) + ")";
  }
  return out;
}

inline nlohmann::json to_json(const Rational& q) {
  return nlohmann::json{{"num", q.num}, {"den", q.den}};
}

inline nlohmann::json to_json(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::NegInf: return nlohmann::json("-inf");
    case Endpoint::Kind::PosInf: return nlohmann::json("+inf");
    default: return to_json(e.value);
  }
}

inline nlohmann::json to_json(const IntervalUnion& u) {
  nlohmann::json components = nlohmann::json::array();
  for (const auto& c : u.components) {
    if (c.is_point)
      components.push_back(nlohmann::json{{"point", to_json(c.point)}});
    else
      components.push_back(nlohmann::json{
          {"interval", {{"lo", to_json(c.lo)}, {"hi", to_json(c.hi)}}}});
  }
  return nlohmann::json{{"components", components}};
}

}  // namespace folcat
