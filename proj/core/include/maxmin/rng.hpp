#ifndef MAXMIN_RNG_HPP
#define MAXMIN_RNG_HPP

#include <cmath>
#include <cstdint>
#include <string_view>

#include <Eigen/Core>

namespace maxmin {

/// SplitMix64 generator (Steele, Lea, Flood 2014). Chosen because the output
/// sequence is fixed by the algorithm itself, so seeds reproduce bit-for-bit
/// across platforms and standard libraries; std::uniform_real_distribution
/// gives no such guarantee.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  /// Uniform index in [0, n). Lemire multiply-shift; unbiased enough for
  /// selection among a handful of candidates and fully deterministic.
  std::size_t next_below(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  /// Standard normal via Box-Muller (one value per call; the pair's second
  /// member is discarded to keep the consumption pattern simple).
  double next_normal() {
    double u1 = next_unit();
    double u2 = next_unit();
    while (u1 <= 0.0) u1 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  /// Uniform direction on the unit sphere in the given dimension.
  Eigen::VectorXd next_unit_vector(int dim) {
    Eigen::VectorXd v(dim);
    double norm = 0.0;
    do {
      for (int i = 0; i < dim; ++i) v[i] = next_normal();
      norm = v.norm();
    } while (norm < 1e-12);
    return v / norm;
  }

  /// Derives an independent stream for (seed, purpose). Streams for distinct
  /// tags are decorrelated by hashing the tag through the same mixer.
  static std::uint64_t derive_stream(std::uint64_t seed, std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (char c : tag) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    SplitMix64 mix(seed ^ h);
    return mix.next();
  }

 private:
  std::uint64_t state_;
};

}  // namespace maxmin

#endif  // MAXMIN_RNG_HPP
