#include "zk/field_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "zk/errors.hpp"

namespace zk {
namespace {

static_assert(std::endian::native == std::endian::little, "dump format assumes a little-endian host");

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw Error("dump: truncated input");
  return v;
}

void put_header(std::ostream& os, std::uint32_t version, const FrequencyGrid& g) {
  os.write("ZKCF", 4);
  put<std::uint32_t>(os, version);
  put<double>(os, g.xi_max);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n_x1));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.k_max));
}

void put_block(std::ostream& os, const SpectralField& f) {
  for (auto c : f.coeffs) {
    put<double>(os, c.real());
    put<double>(os, c.imag());
  }
}

}  // namespace

void write_field(std::ostream& os, const SpectralField& f) {
  put_header(os, 1, f.grid);
  put_block(os, f);
}

void write_trajectory(std::ostream& os, const std::vector<double>& times,
                      const std::vector<SpectralField>& states) {
  if (states.empty() || times.size() != states.size()) throw Error("dump: empty or mismatched trajectory");
  put_header(os, 2, states.front().grid);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(times.size()));
  for (double t : times) put<double>(os, t);
  for (const auto& s : states) put_block(os, s);
}

FieldDump read_dump(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "ZKCF", 4) != 0) throw Error("dump: bad magic");
  auto version = get<std::uint32_t>(is);
  double xi_max = get<double>(is);
  auto n_x1 = get<std::uint32_t>(is);
  auto k_max = get<std::uint32_t>(is);
  FieldDump d;
  d.grid = FrequencyGrid(xi_max, static_cast<int>(n_x1), static_cast<int>(k_max));
  std::uint32_t blocks = 1;
  if (version == 2) {
    blocks = get<std::uint32_t>(is);
    for (std::uint32_t i = 0; i < blocks; ++i) d.times.push_back(get<double>(is));
  } else if (version != 1) {
    throw Error("dump: unsupported version " + std::to_string(version));
  }
  for (std::uint32_t b = 0; b < blocks; ++b) {
    SpectralField f(d.grid);
    for (auto& c : f.coeffs) {
      double re = get<double>(is);
      double im = get<double>(is);
      c = {re, im};
    }
    f.real_valued = conjugate_symmetry_defect(f) <= 1e-12 * std::max(1.0, max_abs(f));
    d.states.push_back(std::move(f));
  }
  return d;
}

void save_dump(const std::string& path, const FieldDump& d) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path);
  if (d.times.empty())
    write_field(os, d.states.at(0));
  else
    write_trajectory(os, d.times, d.states);
}

FieldDump load_dump(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  return read_dump(is);
}

void write_field_csv(std::ostream& os, const SpectralField& f) {
  const auto& g = f.grid;
  os << "xi,n2,re,im\n" << std::setprecision(17);
  for (int j = 0; j < g.n_x1; ++j)
    for (int n = -g.k_max; n <= g.k_max; ++n) {
      auto c = f.at(j, n);
      os << g.xi(j) << ',' << n << ',' << c.real() << ',' << c.imag() << '\n';
    }
}

}  // namespace zk
