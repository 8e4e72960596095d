/**
 * @file integer.hpp
 * @brief Integer MRS(2,b;c) from 2x4 and 2x2 blocks, and reduction to Z_{nkc}.
 */
#pragma once

#include "magicrect/array.hpp"

namespace magicrect {

/**
 * @brief Integer MRS(2,b;c) for even b >= 4, as 2 x b arrays with params (2,b;b,2;c).
 *
 * Row sums b(2bc+1)/2, column sums 2bc+1, entries [1,2bc].
 */
MRSInstance build_mrs_2_b_c(std::int64_t b, std::int64_t c);

/// Integer blocks used by build_mrs_2_b_c, exposed for tests.
PFArray int_block_q(std::int64_t b, std::int64_t c, std::int64_t i);
PFArray int_block_s(std::int64_t b, std::int64_t c, std::int64_t j);
PFArray int_block_t(std::int64_t b, std::int64_t c, std::int64_t index);  ///< T_index
PFArray int_block_t_prime(std::int64_t b, std::int64_t c);

/// Reduces a valid integer instance modulo nkc.
MRSInstance to_cyclic_group(const MRSInstance& inst);

}  // namespace magicrect
