#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>

#include "zk/rng.hpp"

namespace zk {

// (nu,k2) + (zeta,m2) + (xi,n2) = 0; the third pair is always derived.
struct FrequencyTriple {
  double nu = 0, zeta = 0, xi = 0;
  long k2 = 0, m2 = 0, n2 = 0;

  static FrequencyTriple make(double nu, long k2, double zeta, long m2) {
    return {nu, zeta, -nu - zeta, k2, m2, -k2 - m2};
  }
  std::array<double, 3> firsts() const { return {nu, zeta, xi}; }
  std::array<long, 3> seconds() const { return {k2, m2, n2}; }
  // pairs reordered by perm (perm[i] = source slot of slot i)
  FrequencyTriple permuted(const std::array<int, 3>& perm) const;
};

struct TimeTriple {
  double mu = 0, eta = 0, tau = 0;
  static TimeTriple make(double mu, double eta) { return {mu, eta, -mu - eta}; }
};

// Permutation order used by every rearrangement search; first match wins.
inline constexpr std::array<std::array<int, 3>, 6> kPermutations{
    {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

double triple_delta(const FrequencyTriple& t);
std::array<double, 3> thetas(const FrequencyTriple& t);
double max_theta_gap(const FrequencyTriple& t);
double min_first(const FrequencyTriple& t);
std::array<double, 3> norms(const FrequencyTriple& t);
// mu - phi1, eta - phi2, tau - phi3
std::array<double, 3> modulations(const FrequencyTriple& t, const TimeTriple& tt);

struct DyadicProfile {
  std::array<double, 3> N{1, 1, 1};
  std::array<double, 3> Nstar{1, 1, 1};
  std::array<double, 3> L{1, 1, 1};
  std::array<double, 3> M{1, 1, 1};

  double nmax() const;
  double nmin() const;
  double nmed() const;
  // M_{i,min}
  double mmin(int i) const;
  bool valid() const;
  bool operator==(const DyadicProfile&) const = default;
};

DyadicProfile dyadic_profile(const FrequencyTriple& t, const TimeTriple& tt);
// the M_i-part of a profile: max(d'(theta_j - theta_k), M_{i,min})
double m_scale(double theta_gap, double nstar, double nmax);

struct ResonanceConstants {
  double C = 4096.0;
  double C2 = 512.0 * 4096.0;
  double c = 1.0 / 1024.0;
  // Halving floor.  2^-18 is the largest value for which a Bad verdict forces
  // the triangle box conditions with C = 2^12 (see classify()).
  double beta = 0x1p-18;
};

struct Classification {
  enum class Tag { m_interaction, bad, out_of_range };
  Tag tag = Tag::out_of_range;
  double M = 0;     // stopping scale; last scale examined for Bad
  int kind = 0;     // 1 or 2 for M-interactions
  double N_min = 0;
  double beta = 0;  // floor used
};

// The top scale N_min/C2 is always examined, even when it lies below beta.
Classification classify(const FrequencyTriple& t, const ResonanceConstants& k = {});

// The box conditions of the bad set alone (no modulation clause), any rearrangement.
bool in_bad_box(const FrequencyTriple& t);
bool is_bad(const FrequencyTriple& t, const TimeTriple& tt);

enum class Verdict { holds, violated, precondition_failed };
const char* to_string(Verdict v);

using Vec2 = std::array<double, 2>;
Verdict localization_check(const Vec2& w1, const Vec2& w2, const Vec2& w3, double eps);
Verdict coro_lower_bound_check(const FrequencyTriple& t, double C = 4096.0);

struct BadExpansion {
  double approx = 0, exact = 0, err_bound = 0;
};
// |exact - approx| = 3|nu w (nu + w)| <= 3 (|nu|^3 + |w|^3), hence the default constant
inline constexpr double kBadExpansionConstant = 3.0;
BadExpansion delta_bad_expansion(double nu, double omega, double k);
// max |exact-approx| / (|nu|^3+|w|^3) over random |nu|,|w| in [lo, 1/10], k in [1, kmax]
double measure_bad_expansion_constant(Rng& rng, int samples, double kmax, double lo = 1e-3);

// --- samplers -------------------------------------------------------------

// Uniform in the S0 annulus [N_min, 8 N_min] for all three pairs (rejection).
FrequencyTriple sample_annulus_triple(Rng& rng, double N_min);
// Equal-theta configuration with integer second components near the rotated
// triangle of radius r at angle a (Newton on the two theta equations).
std::optional<FrequencyTriple> equilateral_triple(double r, double angle);
// Axis triangle (0,p), (-p/2,-p/2), (p/2,-p/2) moved by (e1, e2) in (nu, zeta).
FrequencyTriple axis_triangle(long p, double e1, double e2);

// Zero-sum triple of vectors with |w2|, |w3| within 0.999 eps of |w1| = r.
struct LocalizationSample {
  Vec2 w1, w2, w3;
  double eps;
};
LocalizationSample sample_localization(Rng& rng, double r_lo, double r_hi);
// Near-equilateral triple in the S0 annulus, perturbed on the scale min|first| / 10^4.
// The caller still checks the preconditions of the lower bound.
FrequencyTriple sample_coro_triple(Rng& rng, double N_min);
// One third each: annulus, near-equilateral, perturbed (permuted) axis triangle;
// always inside the S0 annulus of N_min.
FrequencyTriple sample_mixture_triple(Rng& rng, double N_min);

struct Census {
  std::map<std::tuple<double, double, std::string>, long> counts;  // (N_min, M, kind)
  void add(const Classification& c);
};
void write_census_csv(std::ostream& os, const Census& c);

}  // namespace zk
