#include "zk/covering.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>

#include "zk/errors.hpp"

namespace zk {

namespace {

std::uint64_t key_of(long i, long j) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
         static_cast<std::uint32_t>(j);
}

constexpr std::size_t kMaxBoxes = 20'000'000;

}  // namespace

Covering::Covering(double M, double N_min, const ResonanceConstants& k)
    : M_(M), nmin_(N_min), side_(k.c * M), k_(k) {
  double top = N_min / k.C2;
  if (!(M > 0) || M > top * (1 + 1e-12) || M < std::min(k.beta, top))
    throw PreconditionError("cover_SM: need beta <= M <= N_min/C2");
  top_ = M >= top * (1 - 1e-12);
  width_ = top_ ? 16.0 * N_min : neighbourhood_constant() * M;

  double s = side_;
  double rin = N_min, rout = 8.0 * N_min;
  std::array<double, 2> diag{std::sqrt(2.0) * width_, std::sqrt(2.0) * width_};
  for (long y = static_cast<long>(-rout); y <= static_cast<long>(rout); ++y) {
    double yy = static_cast<double>(y);
    double outer = std::sqrt(std::max(0.0, rout * rout - yy * yy));
    double inner2 = rin * rin - yy * yy;
    double inner = inner2 > 0 ? std::sqrt(inner2) : 0.0;
    // annulus row: [-outer,-inner] U [inner,outer] (or one piece)
    std::array<std::array<double, 2>, 2> ann{{{-outer, -inner}, {inner, outer}}};
    std::array<std::array<double, 2>, 3> strip{{{-width_, width_},
                                                {yy - diag[0], yy + diag[0]},
                                                {-yy - diag[1], -yy + diag[1]}}};
    long jrow = static_cast<long>(std::floor(yy / s));
    for (int line = 0; line < 3; ++line)
      for (const auto& a : ann) {
        double lo = std::max(a[0], strip[line][0]);
        double hi = std::min(a[1], strip[line][1]);
        if (lo > hi) continue;
        for (long i = static_cast<long>(std::floor(lo / s)); i <= static_cast<long>(std::floor(hi / s)); ++i)
          add_box(i, jrow, line);
      }
  }
}

double Covering::neighbourhood_constant() const { return 10.0 + 4.0 * std::sqrt(3.0) * k_.C; }

double Covering::count_constant() const {
  double cnb = top_ ? width_ / M_ : neighbourhood_constant();
  return (2.0 * std::sqrt(2.0) * cnb / k_.c + 2.0) * (16.0 / k_.c + 2.0);
}

double Covering::multiplicity_bound() const {
  double cnb = top_ ? width_ / M_ : neighbourhood_constant();
  return std::pow(std::ceil(2.0 * cnb / k_.c + 1.0), 4);
}

void Covering::add_box(long i, long j, int line) {
  auto key = key_of(i, j);
  if (lookup_.count(key)) return;
  if (boxes_.size() >= kMaxBoxes) throw PreconditionError("cover_SM: covering too large for this machine");
  lookup_.emplace(key, static_cast<int>(boxes_.size()));
  boxes_.push_back({i, j, line});
  ++per_line_[line];
}

int Covering::box_of(double x, long y) const {
  long i = static_cast<long>(std::floor(x / side_));
  long j = static_cast<long>(std::floor(static_cast<double>(y) / side_));
  auto it = lookup_.find(key_of(i, j));
  return it == lookup_.end() ? -1 : it->second;
}

std::array<long, 2> Covering::int_rows(const CoverBox& b) const {
  // integers y with j s <= y < (j+1) s
  double lo = b.j * side_, hi = (b.j + 1) * side_;
  long a = static_cast<long>(std::ceil(lo));
  long z = static_cast<long>(std::ceil(hi)) - 1;
  return {a, z};
}

bool Covering::near_roles(int top, int b, int c) const {
  const auto& T = boxes_[top];
  const auto& B = boxes_[b];
  const auto& Cc = boxes_[c];
  double s = side_;
  double tx = (T.i + 0.5) * s, ty = (T.j + 0.5) * s;
  if (std::abs(tx) > width_ + s) return false;
  auto near = [&](const CoverBox& q, double px, double py) {
    double qx = (q.i + 0.5) * s, qy = (q.j + 0.5) * s;
    return std::hypot(qx - px, qy - py) <= width_ + 2.0 * s;
  };
  return (near(B, -ty / 2, -ty / 2) && near(Cc, ty / 2, -ty / 2)) ||
         (near(B, ty / 2, -ty / 2) && near(Cc, -ty / 2, -ty / 2));
}

bool Covering::admissible(int a, int b, int c) const {
  const auto& A = boxes_[a];
  const auto& B = boxes_[b];
  const auto& Cc = boxes_[c];
  double s = side_;
  // zero must lie in the Minkowski sum, integer rows included
  double xlo = (A.i + B.i + Cc.i) * s, xhi = xlo + 3.0 * s;
  if (xlo > 0 || xhi < 0) return false;
  auto ra = int_rows(A), rb = int_rows(B), rc = int_rows(Cc);
  if (ra[0] + rb[0] + rc[0] > 0 || ra[1] + rb[1] + rc[1] < 0) return false;
  if (top_) return true;
  return near_roles(a, b, c) || near_roles(b, a, c) || near_roles(c, a, b);
}

int Covering::kind(int a, int b, int c) const {
  const auto& A = boxes_[a];
  const auto& B = boxes_[b];
  const auto& Cc = boxes_[c];
  Rng rng(hash_key(0x636f766572ULL, a, static_cast<std::int64_t>(b) * 1000003 + c));
  auto ra = int_rows(A), rb = int_rows(B), rc = int_rows(Cc);
  double s = side_;
  for (int probe = 0; probe < 64; ++probe) {
    double x1 = (A.i + rng.uniform()) * s, x2 = (B.i + rng.uniform()) * s;
    long y1 = rng.integer(ra[0], ra[1]), y2 = rng.integer(rb[0], rb[1]);
    double x3 = -x1 - x2;
    long y3 = -y1 - y2;
    if (x3 < Cc.i * s || x3 >= (Cc.i + 1) * s || y3 < rc[0] || y3 > rc[1]) continue;
    if (max_theta_gap(FrequencyTriple::make(x1, y1, x2, y2)) >= M_) return 2;
  }
  return 1;
}

template <class F>
void Covering::for_neighbours(double x, double y, double r, F&& f) const {
  double s = side_;
  for (long i = static_cast<long>(std::floor((x - r) / s)); i <= static_cast<long>(std::floor((x + r) / s)); ++i)
    for (long j = static_cast<long>(std::floor((y - r) / s)); j <= static_cast<long>(std::floor((y + r) / s)); ++j) {
      auto it = lookup_.find(key_of(i, j));
      if (it != lookup_.end()) f(it->second);
    }
}

long Covering::multiplicity(int a) const {
  if (top_) throw PreconditionError("multiplicity: not available at the top scale");
  const auto& A = boxes_[a];
  double s = side_;
  double ax = (A.i + 0.5) * s, ay = (A.j + 0.5) * s;
  std::set<std::array<int, 3>> found;
  auto close_with = [&](int b) {
    const auto& B = boxes_[b];
    double bx = (B.i + 0.5) * s, by = (B.j + 0.5) * s;
    for_neighbours(-ax - bx, -ay - by, 2.5 * s, [&](int c) {
      std::array<int, 3> key{a, b, c};
      std::sort(key.begin(), key.end());
      if (found.count(key)) return;
      if (admissible(a, b, c)) found.insert(key);
    });
  };
  double r = width_ + 3.0 * s;
  // a as the top vertex
  for_neighbours(-ay / 2, -ay / 2, r, close_with);
  for_neighbours(ay / 2, -ay / 2, r, close_with);
  // a as a side vertex: the top sits near (0, -2 a_y)
  for_neighbours(0.0, -2.0 * ay, 2.0 * r, close_with);
  long count = 0;
  for (const auto& t : found) {
    std::set<std::array<int, 3>> orders;
    std::array<int, 3> p = t;
    do {
      if (admissible(p[0], p[1], p[2])) orders.insert(p);
    } while (std::next_permutation(p.begin(), p.end()));
    count += static_cast<long>(orders.size());
  }
  return count;
}

bool Covering::covers(const FrequencyTriple& t) const {
  int a = box_of(t.nu, t.k2), b = box_of(t.zeta, t.m2), c = box_of(t.xi, t.n2);
  if (a < 0 || b < 0 || c < 0) return false;
  return admissible(a, b, c);
}

std::vector<BoxTriple> Covering::triples(std::size_t limit) const {
  if (top_) throw PreconditionError("triples: not available at the top scale");
  std::set<std::array<int, 3>> sets;
  for (int a = 0; a < static_cast<int>(boxes_.size()); ++a) {
    const auto& A = boxes_[a];
    double s = side_;
    double ax = (A.i + 0.5) * s, ay = (A.j + 0.5) * s;
    if (std::abs(ax) > width_ + s) continue;  // enumerate from the top vertex only
    auto close_with = [&](int b) {
      const auto& B = boxes_[b];
      double bx = (B.i + 0.5) * s, by = (B.j + 0.5) * s;
      for_neighbours(-ax - bx, -ay - by, 2.5 * s, [&](int c) {
        if (!admissible(a, b, c)) return;
        std::array<int, 3> key{a, b, c};
        std::sort(key.begin(), key.end());
        sets.insert(key);
        if (sets.size() * 6 > limit) throw PreconditionError("cover_SM: too many triples to list");
      });
    };
    double r = width_ + 3.0 * s;
    for_neighbours(-ay / 2, -ay / 2, r, close_with);
    for_neighbours(ay / 2, -ay / 2, r, close_with);
  }
  std::vector<BoxTriple> out;
  for (const auto& t : sets) {
    std::array<int, 3> p = t;
    std::set<std::array<int, 3>> seen;
    do {
      if (seen.insert(p).second && admissible(p[0], p[1], p[2])) out.push_back({p, kind(p[0], p[1], p[2])});
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return out;
}

Covering cover_SM(double M, double N_min, const ResonanceConstants& k) { return Covering(M, N_min, k); }

void write_covering_csv(std::ostream& os, const Covering& cov, const std::vector<BoxTriple>& triples) {
  std::map<int, int> kinds;
  for (const auto& t : triples)
    for (int b : t.box) kinds[b] = std::max(kinds[b], t.kind);
  os << "M,box_index,center_x,center_y,kind\n" << std::setprecision(17);
  const auto& boxes = cov.boxes();
  double s = cov.side();
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    auto it = kinds.find(static_cast<int>(i));
    os << cov.M() << ',' << i << ',' << (boxes[i].i + 0.5) * s << ',' << (boxes[i].j + 0.5) * s << ','
       << (it == kinds.end() ? 0 : it->second) << '\n';
  }
}

}  // namespace zk
