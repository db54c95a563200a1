#pragma once

#include <cstdint>
#include <vector>

#include "qsep/dyadic.hpp"
#include "qsep/truth_table.hpp"

namespace qsep {

// Fourier coefficient f^(S) = 2^-n * sum_x (-1)^{f(x)} chi_S(x) with
// chi_S(x) = prod_{i in S} (-1)^{x_i}. Computed by the exhaustive sum;
// exact dyadic arithmetic throughout, no floating point.
Dyadic walsh_coefficient(const TruthTable& tt, std::uint32_t s_mask);

// All coefficients at once, scaled by 2^n: entry S is sum_x (-1)^{f(x)+x.S},
// computed by the in-place fast transform. Cross-checked against the
// exhaustive sum in tests for n <= 12.
std::vector<std::int32_t> walsh_spectrum_scaled(const TruthTable& tt);

// max over all S of granularity(f^(S)).
int max_granularity(const TruthTable& tt);

// Degree of the unique multilinear real polynomial agreeing with f on the
// cube, via the exact integer Moebius transform
// c_S = sum_{T subseteq S} (-1)^{|S|-|T|} f(T).
int real_poly_degree(const TruthTable& tt);

}  // namespace qsep
