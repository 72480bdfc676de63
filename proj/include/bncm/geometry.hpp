#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace bncm {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  // Lexicographic (x, then y). Used for every deterministic tie-break.
  friend bool operator<(const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
};

// Closed segment with distinct endpoints.
struct Segment {
  Point a;
  Point b;
};

enum class Orientation : int { CW = -1, Collinear = 0, CCW = 1 };

namespace detail {

// Shewchuk-style floating-point expansion arithmetic, specialised to what the
// 2D orientation sign needs. two_product leans on fused multiply-add for the
// exact tail.

inline void two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  const double bvirt = x - a;
  const double avirt = x - bvirt;
  const double bround = b - bvirt;
  const double around = a - avirt;
  y = around + bround;
}

inline void two_diff(double a, double b, double& x, double& y) {
  x = a - b;
  const double bvirt = a - x;
  const double avirt = x + bvirt;
  const double bround = bvirt - b;
  const double around = a - avirt;
  y = around + bround;
}

inline void two_product(double a, double b, double& x, double& y) {
  x = a * b;
  y = std::fma(a, b, -x);
}

// (a1,a0) - (b1,b0) -> (x3,x2,x1,x0), nonoverlapping, increasing magnitude.
inline void two_two_diff(double a1, double a0, double b1, double b0, double& x3, double& x2,
                         double& x1, double& x0) {
  double i, j, k;
  two_diff(a0, b0, i, x0);
  two_sum(a1, i, j, k);
  two_diff(k, b1, i, x1);
  two_sum(j, i, x3, x2);
}

// Classic fast expansion sum with zero elimination. e and f must be
// nonoverlapping expansions sorted by increasing magnitude. Loads past the
// consumed prefix are guarded, unlike the classic formulation whose trailing
// one-past-the-end reads were never used but still undefined.
inline int expansion_sum_zeroelim(int elen, const double* e, int flen, const double* f,
                                  double* h) {
  double q, qnew, hh;
  int eindex = 0, findex = 0, hindex = 0;
  double enow = e[0], fnow = f[0];
  auto advance_e = [&] { enow = ++eindex < elen ? e[eindex] : 0.0; };
  auto advance_f = [&] { fnow = ++findex < flen ? f[findex] : 0.0; };
  if ((fnow > enow) == (fnow > -enow)) {
    q = enow;
    advance_e();
  } else {
    q = fnow;
    advance_f();
  }
  if (eindex < elen && findex < flen) {
    if ((fnow > enow) == (fnow > -enow)) {
      two_sum(enow, q, qnew, hh);
      advance_e();
    } else {
      two_sum(fnow, q, qnew, hh);
      advance_f();
    }
    q = qnew;
    if (hh != 0.0) h[hindex++] = hh;
    while (eindex < elen && findex < flen) {
      if ((fnow > enow) == (fnow > -enow)) {
        two_sum(q, enow, qnew, hh);
        advance_e();
      } else {
        two_sum(q, fnow, qnew, hh);
        advance_f();
      }
      q = qnew;
      if (hh != 0.0) h[hindex++] = hh;
    }
  }
  while (eindex < elen) {
    two_sum(q, enow, qnew, hh);
    advance_e();
    q = qnew;
    if (hh != 0.0) h[hindex++] = hh;
  }
  while (findex < flen) {
    two_sum(q, fnow, qnew, hh);
    advance_f();
    q = qnew;
    if (hh != 0.0) h[hindex++] = hh;
  }
  if (q != 0.0 || hindex == 0) h[hindex++] = q;
  return hindex;
}

// Exact sign of the 2x2 orientation determinant, any finite inputs.
inline double orient2d_exact(const Point& pa, const Point& pb, const Point& pc) {
  double axby1, axby0, axcy1, axcy0;
  double bxcy1, bxcy0, bxay1, bxay0;
  double cxay1, cxay0, cxby1, cxby0;
  std::array<double, 4> aterms, bterms, cterms;
  std::array<double, 8> v;
  std::array<double, 12> w;

  two_product(pa.x, pb.y, axby1, axby0);
  two_product(pa.x, pc.y, axcy1, axcy0);
  two_two_diff(axby1, axby0, axcy1, axcy0, aterms[3], aterms[2], aterms[1], aterms[0]);

  two_product(pb.x, pc.y, bxcy1, bxcy0);
  two_product(pb.x, pa.y, bxay1, bxay0);
  two_two_diff(bxcy1, bxcy0, bxay1, bxay0, bterms[3], bterms[2], bterms[1], bterms[0]);

  two_product(pc.x, pa.y, cxay1, cxay0);
  two_product(pc.x, pb.y, cxby1, cxby0);
  two_two_diff(cxay1, cxay0, cxby1, cxby0, cterms[3], cterms[2], cterms[1], cterms[0]);

  const int vlen = expansion_sum_zeroelim(4, aterms.data(), 4, bterms.data(), v.data());
  const int wlen = expansion_sum_zeroelim(vlen, v.data(), 4, cterms.data(), w.data());
  return w[wlen - 1];
}

inline constexpr double kMachEps = std::numeric_limits<double>::epsilon() / 2.0;  // 2^-53
inline constexpr double kCcwErrBoundA = (3.0 + 16.0 * kMachEps) * kMachEps;

}  // namespace detail

// Sign of the signed area of triangle pqr. A static error-bound filter decides
// the generic cases; anything inside the uncertainty band falls back to the
// exact expansion evaluation, so the sign is never wrong.
inline Orientation orientation(const Point& p, const Point& q, const Point& r) {
  const double detleft = (q.x - p.x) * (r.y - p.y);
  const double detright = (q.y - p.y) * (r.x - p.x);
  double det = detleft - detright;
  double detsum;

  if (detleft > 0.0) {
    if (detright <= 0.0) {
      return det > 0.0 ? Orientation::CCW : (det < 0.0 ? Orientation::CW : Orientation::Collinear);
    }
    detsum = detleft + detright;
  } else if (detleft < 0.0) {
    if (detright >= 0.0) {
      return det > 0.0 ? Orientation::CCW : (det < 0.0 ? Orientation::CW : Orientation::Collinear);
    }
    detsum = -detleft - detright;
  } else {
    return det > 0.0 ? Orientation::CCW : (det < 0.0 ? Orientation::CW : Orientation::Collinear);
  }

  const double errbound = detail::kCcwErrBoundA * detsum;
  if (det >= errbound || -det >= errbound) {
    return det > 0.0 ? Orientation::CCW : Orientation::CW;
  }
  det = detail::orient2d_exact(p, q, r);
  return det > 0.0 ? Orientation::CCW : (det < 0.0 ? Orientation::CW : Orientation::Collinear);
}

inline double dist2(const Point& p, const Point& q) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return dx * dx + dy * dy;
}

inline double l1_dist(const Point& p, const Point& q) {
  return std::abs(p.x - q.x) + std::abs(p.y - q.y);
}

namespace detail {

// p is known to be collinear with a-b; closed bounding-box containment.
inline bool collinear_on_segment(const Point& a, const Point& b, const Point& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace detail

// Closed-set intersection: shared endpoints, T-contacts and collinear overlaps
// all count as intersecting.
inline bool segments_intersect(const Segment& s1, const Segment& s2) {
  const Orientation o1 = orientation(s1.a, s1.b, s2.a);
  const Orientation o2 = orientation(s1.a, s1.b, s2.b);
  const Orientation o3 = orientation(s2.a, s2.b, s1.a);
  const Orientation o4 = orientation(s2.a, s2.b, s1.b);

  if (o1 != o2 && o3 != o4) return true;
  if (o1 == Orientation::Collinear && detail::collinear_on_segment(s1.a, s1.b, s2.a)) return true;
  if (o2 == Orientation::Collinear && detail::collinear_on_segment(s1.a, s1.b, s2.b)) return true;
  if (o3 == Orientation::Collinear && detail::collinear_on_segment(s2.a, s2.b, s1.a)) return true;
  if (o4 == Orientation::Collinear && detail::collinear_on_segment(s2.a, s2.b, s1.b)) return true;
  return false;
}

// True iff the closed segments share no point.
inline bool segments_disjoint(const Segment& s1, const Segment& s2) {
  return !segments_intersect(s1, s2);
}

}  // namespace bncm
