#pragma once

#include <cstdint>

#include "fourcubes/numerics/interval.hpp"

namespace fourcubes {

/// Enclosure of zeta(s) for rational s > 1 from the partial sum over
/// n <= terms plus the integral tail bounds
///   int_{terms+1}^inf x^-s dx  <=  sum_{n > terms} n^-s  <=  int_{terms}^inf x^-s dx.
/// Throws DomainError for s <= 1.
Interval zeta_enclosure(const BigRational& s, std::uint64_t terms);

/// Euler's constant, width below 1e-30 (at least 128 bits are used).
Interval euler_gamma_enclosure();

/// pi at working precision (test oracles only).
Interval pi_enclosure();

}  // namespace fourcubes
