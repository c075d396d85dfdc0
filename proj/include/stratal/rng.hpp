#ifndef STRATAL_RNG_HPP
#define STRATAL_RNG_HPP

#include <cstdint>

#include "stratal/matrix.hpp"

namespace stratal {

/// splitmix64. Fixed algorithm (not std::mt19937) so seeded runs produce
/// identical reports on every platform and compiler.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n).
    int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }

    /// Small integer in [lo, hi].
    int range(int lo, int hi) { return lo + below(hi - lo + 1); }

    Rational rational(int lo = -3, int hi = 3) { return Rational(range(lo, hi)); }

    Matrix matrix(int rows, int cols, int lo = -3, int hi = 3) {
        Matrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m.at(r, c) = rational(lo, hi);
        return m;
    }

    /// Retry until invertible; deterministic given the seed state.
    Matrix invertible(int n, int lo = -3, int hi = 3) {
        for (;;) {
            Matrix m = matrix(n, n, lo, hi);
            if (is_invertible(m)) return m;
        }
    }

private:
    uint64_t state_;
};

}  // namespace stratal

#endif
