#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "zk/resonance.hpp"

namespace zk {

// Lines through the origin carrying the three vertices of the triangle resonance.
enum class Line { vertical = 0, diagonal_up = 1, diagonal_down = 2 };

struct CoverBox {
  long i = 0, j = 0;  // [i s, (i+1) s) x [j s, (j+1) s)
  int line = 0;
};

struct BoxTriple {
  std::array<int, 3> box{};
  int kind = 0;
};

/*
 * cM-box covering of the region carrying S_M: three neighbourhoods of
 * half-width W = (10 + 4 sqrt(3) C) M around the lines (0,t), (-t/2,-t/2),
 * (t/2,-t/2) inside the annulus [N_min, 8 N_min].  At the top scale N_min/C2
 * the whole annulus is used.
 *
 * Boxes are materialized; triples are enumerated on demand because their
 * number is (N_min/M) * (W/cM)^2.
 */
class Covering {
 public:
  Covering(double M, double N_min, const ResonanceConstants& k);

  double M() const { return M_; }
  double side() const { return side_; }
  double width() const { return width_; }
  // implicit constant of the neighbourhoods, W / M
  double neighbourhood_constant() const;
  const std::vector<CoverBox>& boxes() const { return boxes_; }
  std::array<long, 3> boxes_per_line() const { return per_line_; }
  // (2 sqrt2 C_nb / c + 2)(16/c + 2): per-line count is at most this times N_min/M
  double count_constant() const;
  // ceil(2 C_nb / c + 1)^4
  double multiplicity_bound() const;

  // index of the box containing (x, y), or -1 when it is not part of the covering
  int box_of(double x, long y) const;
  bool admissible(int a, int b, int c) const;
  // witness rule: 2 if some sampled sigma in the triple has a theta gap >= M
  int kind(int a, int b, int c) const;
  // number of admissible ordered triples in which box a takes part
  long multiplicity(int a) const;
  // does some admissible triple contain this frequency triple
  bool covers(const FrequencyTriple& t) const;
  // all triples; throws when there would be more than limit
  std::vector<BoxTriple> triples(std::size_t limit) const;

 private:
  void add_box(long i, long j, int line);
  std::array<long, 2> int_rows(const CoverBox& b) const;
  bool near_roles(int top, int b, int c) const;
  template <class F>
  void for_neighbours(double x, double y, double r, F&& f) const;

  double M_, nmin_, side_, width_;
  ResonanceConstants k_;
  bool top_;
  std::vector<CoverBox> boxes_;
  std::unordered_map<std::uint64_t, int> lookup_;
  std::array<long, 3> per_line_{};
};

Covering cover_SM(double M, double N_min, const ResonanceConstants& k);

// covering dump: M,box_index,center_x,center_y,kind (kind = max over triples listed)
void write_covering_csv(std::ostream& os, const Covering& cov, const std::vector<BoxTriple>& triples);

}  // namespace zk
