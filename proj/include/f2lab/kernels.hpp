#pragma once

// Hot loops over dense tables of length 2^N. Each kernel has a serial
// reference in `serial` and an OpenMP version in `parallel`; the parallel
// versions reduce per-chunk partial results in a fixed order, so their output
// does not depend on the thread count.

#include <complex>
#include <cstdint>
#include <span>

namespace f2lab::kernels {

using Complex = std::complex<double>;

/// Threads used by the parallel kernels (F2LAB_THREADS caps it).
int thread_count();
void set_thread_count(int threads);

namespace serial {

/// In-place unnormalized Walsh-Hadamard butterfly:
/// out[xi] = sum_x in[x] * (-1)^{popcount(x & xi)}.
void walsh_butterfly(std::span<Complex> data);
void walsh_butterfly(std::span<std::int64_t> data);

/// E_{x, y_1..y_d} prod_s C^{|s|} f(x + sum_{i in s} y_i), by direct summation.
Complex gowers_naive_average(std::span<const Complex> f, int dim, int d);

/// ||f||_{U_d}^{2^d} through the multiplicative-derivative recursion, bottoming
/// out at |E g|^2. Below the top level the U_2 step is the fourth moment of
/// the spectrum, so a top-level d = 2 call stays a literal double average.
double gowers_recursive_power(std::span<const Complex> f, int dim, int d);
double gowers_recursive_power(std::span<const double> f, int dim, int d);

}  // namespace serial

namespace parallel {

void walsh_butterfly(std::span<Complex> data);
void walsh_butterfly(std::span<std::int64_t> data);
Complex gowers_naive_average(std::span<const Complex> f, int dim, int d);
double gowers_recursive_power(std::span<const Complex> f, int dim, int d);
double gowers_recursive_power(std::span<const double> f, int dim, int d);

}  // namespace parallel

}  // namespace f2lab::kernels
