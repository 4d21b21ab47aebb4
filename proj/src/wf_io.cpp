#include "mzs/wf_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace mzs {

namespace {

constexpr char kMagic[4] = {'M', 'Z', 'W', 'F'};
constexpr std::uint32_t kVersion = 1;

// The format is little-endian by definition; this code targets LE hosts and
// writes raw IEEE doubles. A big-endian port would need byte swaps here.
template <typename T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("mzwf: truncated file");
  return v;
}

} // namespace

void dump_mzwf(const std::string& path, const Wavefunction& u, double eps, double t) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("mzwf: cannot open " + path + " for writing");
  os.write(kMagic, 4);
  put<std::uint32_t>(os, kVersion);
  put<std::uint64_t>(os, static_cast<std::uint64_t>(u.grid->n));
  put<double>(os, eps);
  put<double>(os, t);
  put<double>(os, u.grid->x_min);
  put<double>(os, u.grid->x_max);
  for (Index j = 0; j < u.grid->n; ++j) {
    put<double>(os, u.v[j].real());
    put<double>(os, u.v[j].imag());
  }
  if (!os) throw std::runtime_error("mzwf: write failed for " + path);
}

WfSnapshot load_mzwf(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("mzwf: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("mzwf: bad magic in " + path);
  if (get<std::uint32_t>(is) != kVersion) throw std::runtime_error("mzwf: unsupported version");
  const auto n = static_cast<Index>(get<std::uint64_t>(is));
  if (n < 8 || n % 2 != 0 || n > (Index(1) << 32))
    throw std::runtime_error("mzwf: implausible point count");
  const double eps = get<double>(is);
  const double t = get<double>(is);
  const double x_min = get<double>(is);
  const double x_max = get<double>(is);
  if (!(x_max > x_min)) throw std::runtime_error("mzwf: bad domain");

  ArrayXcd v(n);
  for (Index j = 0; j < n; ++j) {
    const double re = get<double>(is);
    const double im = get<double>(is);
    v[j] = cplx(re, im);
  }
  WfSnapshot snap;
  snap.u = Wavefunction{make_grid(x_min, x_max, n), std::move(v)};
  snap.eps = eps;
  snap.t = t;
  return snap;
}

} // namespace mzs
