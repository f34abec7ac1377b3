#include "pairdiag/rng.hpp"

#include "pairdiag/math.hpp"

namespace pairdiag {

double Rng::normal() {
    return math::normal_quantile(u01());
}

Rng derive_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
    Rng mixer(seed);
    std::uint64_t s = mixer.next_u64();
    for (std::uint64_t t : tags) {
        Rng m2(s ^ (t * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL));
        s = m2.next_u64();
    }
    return Rng(s);
}

} // namespace pairdiag
