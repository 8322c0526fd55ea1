#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zk/spectrum.hpp"

namespace zk {

/*
 * Binary dump, little endian:
 *   "ZKCF", u32 version, f64 xi_max, u32 n_x1, u32 k_max
 *   version 1: one block of n_x1*(2K+1) (f64 re, f64 im) pairs, row-major (j, n2)
 *   version 2: u32 n_times, f64 times[n_times], then n_times blocks
 */
void write_field(std::ostream& os, const SpectralField& f);
void write_trajectory(std::ostream& os, const std::vector<double>& times,
                      const std::vector<SpectralField>& states);

struct FieldDump {
  FrequencyGrid grid;
  std::vector<double> times;  // empty for a single field
  std::vector<SpectralField> states;
};
FieldDump read_dump(std::istream& is);

void save_dump(const std::string& path, const FieldDump& d);
FieldDump load_dump(const std::string& path);

// columns xi,n2,re,im
void write_field_csv(std::ostream& os, const SpectralField& f);

}  // namespace zk
