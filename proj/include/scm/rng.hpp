#ifndef SCM_RNG_HPP
#define SCM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace scm {

// Seedable generator used everywhere: std::mt19937_64 with Box-Muller normals
// built on raw uniforms, so streams do not depend on libstdc++ distribution
// internals. Bitwise determinism is promised within one build only.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Derive an independent stream for a named sub-purpose.
  Rng stream(std::uint64_t id) const {
    std::uint64_t s = seed_mix(eng_copy_seed_, id);
    return Rng(s, s);
  }

  double uniform() {  // in (0,1)
    const std::uint64_t u = eng_();
    return (static_cast<double>(u >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
  }

  std::uint64_t raw() { return eng_(); }

  static std::uint64_t seed_mix(std::uint64_t a, std::uint64_t b) {
    // splitmix64 step over a xor rotated b
    std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  Rng(std::uint64_t seed, std::uint64_t tag) : eng_(seed), eng_copy_seed_(tag) {}

  std::mt19937_64 eng_;
  std::uint64_t eng_copy_seed_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;

 public:
  void remember_seed(std::uint64_t s) { eng_copy_seed_ = s; }
};

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  Rng r(Rng::seed_mix(seed, stream));
  r.remember_seed(Rng::seed_mix(seed, stream));
  return r;
}

}  // namespace scm

#endif
