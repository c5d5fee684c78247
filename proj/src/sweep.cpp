#include "csets/sweep.hpp"

#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace csets {

void sweep_indexed(std::size_t count, SweepMode mode, const std::function<void(std::size_t)>& body) {
#ifdef _OPENMP
  if (mode == SweepMode::Parallel) {
    const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < n; ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)mode;
#endif
  for (std::size_t i = 0; i < count; ++i) body(i);
}

std::vector<Answer> sweep_queries(const RepName& name,
                                  const std::vector<std::pair<DyadicPoint, Precision>>& queries,
                                  SweepMode mode) {
  std::vector<Answer> out(queries.size(), Answer::empty());
  sweep_indexed(queries.size(), mode, [&](std::size_t i) {
    out[i] = name.query(queries[i].first, queries[i].second);
  });
  return out;
}

std::string raster_bits(const RepName& name, const DyadicPoint& lo, const DyadicPoint& hi,
                        Precision n, SweepMode mode) {
  if (name.dim() != 2) throw std::invalid_argument("raster_bits: dimension must be 2");
  mpz_class x0 = lo[0].ceil_scaled(n), x1 = hi[0].floor_scaled(n);
  mpz_class y0 = lo[1].ceil_scaled(n), y1 = hi[1].floor_scaled(n);
  if (x0 > x1 || y0 > y1) throw std::invalid_argument("raster_bits: empty window");
  long w = mpz_class(x1 - x0 + 1).get_si();
  long h = mpz_class(y1 - y0 + 1).get_si();
  std::vector<char> bits(static_cast<std::size_t>(w) * h, '0');
  sweep_indexed(bits.size(), mode, [&](std::size_t idx) {
    long row = static_cast<long>(idx) / w;
    long col = static_cast<long>(idx) % w;
    // top row = largest y
    mpz_class xi = x0 + col;
    mpz_class yi = y1 - row;
    DyadicPoint q(std::vector<Dyadic>{Dyadic::make(xi, n), Dyadic::make(yi, n)});
    Answer a = name.query(q, n);
    bits[idx] = a.as_bit() ? '1' : '0';
  });
  std::ostringstream os;
  os << "P2\n" << w << ' ' << h << "\n1\n";
  for (long row = 0; row < h; ++row) {
    for (long col = 0; col < w; ++col) {
      if (col) os << ' ';
      os << bits[static_cast<std::size_t>(row) * w + col];
    }
    os << '\n';
  }
  return os.str();
}

std::string point_list_bits(const RepName& name, const Dyadic& lo, const Dyadic& hi, Precision n,
                            SweepMode mode) {
  if (name.dim() != 1) throw std::invalid_argument("point_list_bits: dimension must be 1");
  mpz_class x0 = lo.ceil_scaled(n), x1 = hi.floor_scaled(n);
  if (x0 > x1) return "";
  long w = mpz_class(x1 - x0 + 1).get_si();
  std::vector<char> bits(static_cast<std::size_t>(w), '0');
  sweep_indexed(bits.size(), mode, [&](std::size_t idx) {
    DyadicPoint q(std::vector<Dyadic>{Dyadic::make(x0 + static_cast<long>(idx), n)});
    bits[idx] = name.query(q, n).as_bit() ? '1' : '0';
  });
  std::ostringstream os;
  for (long i = 0; i < w; ++i) {
    if (bits[i] == '1') os << Dyadic::make(x0 + i, n).to_text() << '\n';
  }
  return os.str();
}

}  // namespace csets
