#include "f2lab/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace f2lab::kernels {

namespace {

constexpr std::uint64_t kParallelThreshold = std::uint64_t{1} << 12;

inline double conj_if(double v) { return v; }
inline Complex conj_if(const Complex& v) { return std::conj(v); }
inline double sq_modulus(double v) { return v * v; }
inline double sq_modulus(const Complex& v) { return std::norm(v); }

template <class T>
void butterfly_serial(std::span<T> data) {
  const std::uint64_t size = data.size();
  for (std::uint64_t half = 1; half < size; half <<= 1) {
    for (std::uint64_t base = 0; base < size; base += 2 * half) {
      for (std::uint64_t i = base; i < base + half; ++i) {
        const T a = data[i];
        const T b = data[i + half];
        data[i] = a + b;
        data[i + half] = a - b;
      }
    }
  }
}

template <class T>
void butterfly_parallel(std::span<T> data) {
  const std::uint64_t size = data.size();
  if (size < kParallelThreshold) {
    butterfly_serial(data);
    return;
  }
  const auto pairs = static_cast<std::int64_t>(size / 2);
  T* d = data.data();
  for (std::uint64_t half = 1; half < size; half <<= 1) {
    const int shift = std::countr_zero(half);
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < pairs; ++k) {
      const auto uk = static_cast<std::uint64_t>(k);
      const std::uint64_t i = ((uk >> shift) << (shift + 1)) | (uk & (half - 1));
      const T a = d[i];
      const T b = d[i + half];
      d[i] = a + b;
      d[i + half] = a - b;
    }
  }
}

// Sum over y_1..y_d for a fixed x; the 2^d corner points are built by
// adding one y_i per lowest set bit of the subset mask.
Complex naive_inner(std::span<const Complex> f, int dim, int d, std::uint64_t x,
                    std::vector<std::uint64_t>& corners) {
  const std::uint64_t mask = (std::uint64_t{1} << dim) - 1;
  const std::uint64_t tuples = std::uint64_t{1} << (dim * d);
  const std::uint64_t subsets = std::uint64_t{1} << d;
  Complex acc = 0.0;
  for (std::uint64_t y = 0; y < tuples; ++y) {
    corners[0] = x;
    Complex prod = f[x];
    for (std::uint64_t s = 1; s < subsets; ++s) {
      const int low = std::countr_zero(s);
      corners[s] = corners[s & (s - 1)] ^ ((y >> (low * dim)) & mask);
      const Complex v = f[corners[s]];
      prod *= (std::popcount(s) & 1) ? std::conj(v) : v;
    }
    acc += prod;
  }
  return acc;
}

template <class T>
double recursive_serial(const T* g, int dim, int d, std::vector<std::vector<T>>& scratch, int level) {
  const std::uint64_t size = std::uint64_t{1} << dim;
  if (d == 1) {
    T sum{};
    for (std::uint64_t x = 0; x < size; ++x) sum += g[x];
    return sq_modulus(sum / static_cast<double>(size));
  }
  auto& buf = scratch[static_cast<std::size_t>(level)];
  if (d == 2 && level > 0) {
    // ||g||_{U_2}^4 as the fourth moment of the spectrum
    std::copy(g, g + size, buf.begin());
    butterfly_serial(std::span<T>(buf.data(), size));
    double total = 0.0;
    for (std::uint64_t xi = 0; xi < size; ++xi) {
      const double m = sq_modulus(buf[xi]);
      total += m * m;
    }
    return total / std::ldexp(1.0, 4 * dim);
  }
  double total = 0.0;
  for (std::uint64_t h = 0; h < size; ++h) {
    for (std::uint64_t x = 0; x < size; ++x) buf[x] = g[x ^ h] * conj_if(g[x]);
    total += recursive_serial(buf.data(), dim, d - 1, scratch, level + 1);
  }
  return total / static_cast<double>(size);
}

template <class T>
double recursive_entry_serial(std::span<const T> f, int dim, int d) {
  std::vector<std::vector<T>> scratch(static_cast<std::size_t>(d), std::vector<T>(f.size()));
  return recursive_serial(f.data(), dim, d, scratch, 0);
}

template <class T>
double recursive_entry_parallel(std::span<const T> f, int dim, int d) {
  if (d == 1) return recursive_entry_serial(f, dim, d);
  const std::uint64_t size = f.size();
  std::vector<double> per_direction(size, 0.0);
#pragma omp parallel
  {
    std::vector<std::vector<T>> scratch(static_cast<std::size_t>(d), std::vector<T>(size));
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t hs = 0; hs < static_cast<std::int64_t>(size); ++hs) {
      const auto h = static_cast<std::uint64_t>(hs);
      auto& buf = scratch[0];
      for (std::uint64_t x = 0; x < size; ++x) buf[x] = f[x ^ h] * conj_if(f[x]);
      per_direction[h] = recursive_serial(buf.data(), dim, d - 1, scratch, 1);
    }
  }
  double total = 0.0;
  for (double v : per_direction) total += v;
  return total / static_cast<double>(size);
}

int initial_threads() {
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  if (const char* env = std::getenv("F2LAB_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0 && cap < threads) threads = cap;
    } catch (const std::exception&) {
    }
  }
#ifdef _OPENMP
  omp_set_num_threads(threads);
#endif
  return threads;
}

int& thread_setting() {
  static int threads = initial_threads();
  return threads;
}

}  // namespace

int thread_count() { return thread_setting(); }

void set_thread_count(int threads) {
  if (threads < 1) threads = 1;
  thread_setting() = threads;
#ifdef _OPENMP
  omp_set_num_threads(threads);
#endif
}

namespace serial {

void walsh_butterfly(std::span<Complex> data) { butterfly_serial(data); }
void walsh_butterfly(std::span<std::int64_t> data) { butterfly_serial(data); }

Complex gowers_naive_average(std::span<const Complex> f, int dim, int d) {
  const std::uint64_t size = std::uint64_t{1} << dim;
  std::vector<std::uint64_t> corners(std::size_t{1} << d);
  Complex total = 0.0;
  for (std::uint64_t x = 0; x < size; ++x) total += naive_inner(f, dim, d, x, corners);
  return total / std::ldexp(1.0, dim * (d + 1));
}

double gowers_recursive_power(std::span<const Complex> f, int dim, int d) {
  return recursive_entry_serial(f, dim, d);
}
double gowers_recursive_power(std::span<const double> f, int dim, int d) {
  return recursive_entry_serial(f, dim, d);
}

}  // namespace serial

namespace parallel {

void walsh_butterfly(std::span<Complex> data) {
  thread_count();
  butterfly_parallel(data);
}
void walsh_butterfly(std::span<std::int64_t> data) {
  thread_count();
  butterfly_parallel(data);
}

Complex gowers_naive_average(std::span<const Complex> f, int dim, int d) {
  thread_count();
  const std::uint64_t size = std::uint64_t{1} << dim;
  std::vector<Complex> per_x(size);
#pragma omp parallel
  {
    std::vector<std::uint64_t> corners(std::size_t{1} << d);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t xs = 0; xs < static_cast<std::int64_t>(size); ++xs)
      per_x[static_cast<std::uint64_t>(xs)] =
          naive_inner(f, dim, d, static_cast<std::uint64_t>(xs), corners);
  }
  Complex total = 0.0;
  for (const auto& v : per_x) total += v;
  return total / std::ldexp(1.0, dim * (d + 1));
}

double gowers_recursive_power(std::span<const Complex> f, int dim, int d) {
  thread_count();
  return recursive_entry_parallel(f, dim, d);
}
double gowers_recursive_power(std::span<const double> f, int dim, int d) {
  thread_count();
  return recursive_entry_parallel(f, dim, d);
}

}  // namespace parallel

}  // namespace f2lab::kernels
