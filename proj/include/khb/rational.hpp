#pragma once

// Exact arithmetic. All gradings, filtration levels and breakpoints are
// rationals with small denominators; nothing in this project may touch
// floating point.

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace khb {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline long rat_num_l(const Rat& r) { return mpz_get_si(r.get_num_mpz_t()); }
inline long rat_den_l(const Rat& r) { return mpz_get_si(r.get_den_mpz_t()); }

inline bool rat_is_int(const Rat& r) { return r.get_den() == 1; }

inline std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace khb
