#include "exadam/rng.hpp"

#include <cmath>

#include "exadam/errors.hpp"

namespace exadam {

std::uint64_t Rng::next_u64() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::next_bounded(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("next_bounded: bound must be >= 1");
  // Rejection keeps the draw unbiased for any bound.
  const std::uint64_t threshold = -bound % bound;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

double Rng::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * next_double() - 1.0;
    v = 2.0 * next_double() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double k = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * k;
  has_spare_ = true;
  return u * k;
}

Rng Rng::derive(std::uint64_t seed, std::uint64_t stream) {
  Rng mixer(seed);
  const std::uint64_t a = mixer.next_u64();
  Rng mixer2(stream ^ a);
  return Rng(mixer2.next_u64());
}

Vec gaussian(Rng& rng, std::size_t n, double mean, double std) {
  if (std < 0.0) throw InvalidArgument("gaussian: std must be >= 0");
  if (n < 1) throw InvalidArgument("gaussian: n must be >= 1");
  Vec out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = mean + std * rng.next_gaussian();
  return out;
}

void shuffle_indices(std::vector<std::size_t>& idx, Rng& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_bounded(i));
    std::swap(idx[i - 1], idx[j]);
  }
}

}  // namespace exadam
