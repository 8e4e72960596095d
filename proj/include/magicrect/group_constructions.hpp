/**
 * @file group_constructions.hpp
 * @brief Zero-sum 2 x 2^alpha blocks, the four base cases MRS(r,8;2), direct-sum
 *        extension, cyclic lifting, and the full pipelines for odd x 2^alpha arrays.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "magicrect/array.hpp"

namespace magicrect {

/// Subset of Z_{2a} closed under negation with no element of order <= 2.
struct OmegaSet {
    std::int64_t modulus = 2;  ///< 2a
    std::vector<std::int64_t> elements;
};

void validate_omega(const OmegaSet& omega);

/**
 * @brief One zero-sum 2 x |psi| block per pair {x,-x} of omega, over Z_{2a} + psi.
 *
 * The largest factor of psi plays Z_{2b}; the others, in order, form Phi.
 * Pairs are taken with representative x in [1, a-1], ascending.
 */
std::vector<PFArray> zero_sum_blocks(const OmegaSet& omega, const Group& psi);

enum class BaseCaseKind { Z4Z4, Z2Z8, Z2Z2Z4, Z2Z2Z2Z2 };

BaseCaseKind parse_base_case_kind(const std::string& s);
std::string base_case_kind_name(BaseCaseKind k);
/// Factor list of the group the base case lives in, e.g. [4r,4].
std::vector<std::int64_t> base_case_factors(std::int64_t r, BaseCaseKind kind);
/// Header rows (5, or 3 for Z2Z2Z2Z2) of both arrays, before completion.
std::vector<PFArray> base_case_headers(std::int64_t r, BaseCaseKind kind);
/// Headers stacked over zero-sum 2 x 8 blocks on the unused first coordinates. Not verified.
MRSInstance complete_base_case(std::int64_t r, BaseCaseKind kind, const std::vector<PFArray>& headers);
/// Zero-sum MRS(r,8;2) over base_case_factors(r, kind).
MRSInstance base_case_r8_2(std::int64_t r, BaseCaseKind kind);

/// Three permutations of phi summing to zero pointwise: pi[t][index] is an element index.
std::vector<std::vector<std::int64_t>> zero_sum_permutation_triple(const Group& phi);

/// MRS over gamma0 + phi with c*|phi| arrays; full arrays only.
MRSInstance extend_direct_sum(const MRSInstance& inst, const Group& phi);

/**
 * @brief Replaces component `component` (default: last), a cyclic factor M read as <h> in Z_{Mh},
 *        by Z_{Mh}; multiplies c by h.
 */
MRSInstance lift_cyclic(const MRSInstance& inst, std::int64_t h, std::optional<std::size_t> component = std::nullopt);

/// Integer layers for lift_cyclic: h arrays a x b, values 1..h, cellwise a permutation.
std::vector<std::vector<std::vector<std::int64_t>>> translation_layers(std::size_t a, std::size_t b, std::int64_t h);

/// MRS_psi(p, 2^alpha; 1) by bounded backtracking (budget in search nodes).
MRSInstance base_case_p_2alpha(std::int64_t p, const Group& psi, std::uint64_t budget = 100000000ULL);

struct PipelineOptions {
    std::optional<std::int64_t> prime;  ///< overrides the smallest prime factor choice
    std::uint64_t budget = 100000000ULL;
};

/// MRS_gamma(2l+1, 8; 4h+2).
MRSInstance theorem_main(std::int64_t l, std::int64_t h, const Group& gamma, const PipelineOptions& opt = {});

/// MRS_gamma(2l+1, 2^alpha; c) for odd c.
MRSInstance odd_c_construction(std::int64_t l, std::int64_t alpha, std::int64_t c, const Group& gamma,
                               const PipelineOptions& opt = {});

/// Stacks groups of `per` consecutive arrays vertically; constants re-derived.
MRSInstance stack_arrays(const MRSInstance& inst, std::int64_t per);

/// Fills omega/delta from the verifier and throws ConstructionFailed when it rejects.
MRSInstance certify(MRSInstance inst, const std::string& what);

std::int64_t smallest_prime_factor(std::int64_t n);

}  // namespace magicrect
