#pragma once

#include <array>
#include <cstddef>

namespace ardns {

template <std::size_t N>
using Vec = std::array<double, N>;

// Row-major fixed-size matrix.
template <std::size_t Rows, std::size_t Cols>
using Mat = std::array<std::array<double, Cols>, Rows>;

template <std::size_t N>
constexpr double dot(const Vec<N>& a, const Vec<N>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
  return s;
}

template <std::size_t Rows, std::size_t Cols>
constexpr Vec<Rows> matvec(const Mat<Rows, Cols>& m, const Vec<Cols>& v) {
  Vec<Rows> out{};
  for (std::size_t r = 0; r < Rows; ++r) out[r] = dot(m[r], v);
  return out;
}

template <std::size_t N>
constexpr double squared_norm(const Vec<N>& v) {
  return dot(v, v);
}

}  // namespace ardns
