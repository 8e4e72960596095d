/**
 * @file diagonal.hpp
 * @brief Diagonal MRS over groups (2, 2b and 4b filled diagonals), juxtaposition
 *        along a gcd, even parameters, and the mod-4 case split for partial arrays.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "magicrect/array.hpp"

namespace magicrect {

/**
 * @brief Diagonal MRS_gamma(n;2;c): arrays R_i with D_0 = alpha-progression from z_i and
 *        D_1 = omega minus it. NoSuchObject when gamma has no element of order n.
 *
 * alpha defaults to the lexicographically first element of order n.
 */
MRSInstance diagonal_n2c(std::int64_t n, std::int64_t c, const Group& gamma,
                         const std::optional<Element>& alpha = std::nullopt);

/// Diagonal MRS_gamma(n;2b;c) from diagonal_n2c(n, bc): array l takes R_{lb+j} onto D_{2j}, D_{2j+1}.
MRSInstance diagonal_n_2b_c(std::int64_t n, std::int64_t b, std::int64_t c, const Group& gamma);

/// Diagonal MRS_gamma(n;4b;c) for any gamma of order 4nbc, from 2 x 2 arrays; diagonals D_{n-2}..D_{4b-3}.
MRSInstance diagonal_n_4b_c(std::int64_t n, std::int64_t b, std::int64_t c, const Group& gamma);

/// MRS(m,n;s,k;c) from e*c full k1 x s arrays, where d = gcd(s,k), s = d s1, k = d k1, m = e k1, n = e s1.
MRSInstance gcd_compose(const MRSInstance& inst, std::int64_t m, std::int64_t n, std::int64_t s, std::int64_t k);

/// All of m, n, s, k even: t diagonals of the (m/2) x (n/2) grid, each cell a 2 x 2 square.
MRSInstance even_params(std::int64_t m, std::int64_t n, std::int64_t s, std::int64_t k, std::int64_t c,
                        const Group& gamma);

/// Re-lays a diagonal square of size nk/d (d = gcd(s,k) filled diagonals) onto an m x n array.
MRSInstance diagonal_to_rectangle(const MRSInstance& square, std::int64_t m, std::int64_t n, std::int64_t s,
                                  std::int64_t k);

enum class Mod4Case { SK0, S2K0, S0K2, SK2MNEven };
std::string mod4_case_name(Mod4Case c);
/// Which case applies, if any.
std::optional<Mod4Case> mod4_case(std::int64_t m, std::int64_t n, std::int64_t s, std::int64_t k);

/// Dispatch over the four cases; Unsupported when none applies.
MRSInstance mod4_cases(std::int64_t m, std::int64_t n, std::int64_t s, std::int64_t k, std::int64_t c,
                       const Group& gamma);

}  // namespace magicrect
