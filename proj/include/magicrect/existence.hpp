/**
 * @file existence.hpp
 * @brief Cited existence verdicts for MRS_gamma(m,n;s,k;c), an exhaustive search
 *        oracle for small orders, and the sweep that compares the two.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "magicrect/array.hpp"

namespace magicrect {

enum class Status { Exists, NotExists, Unknown };
std::string status_name(Status s);

/// Citation tags carried by verdicts.
namespace reason {
inline constexpr const char* NEC = "NEC";
inline constexpr const char* COR_SKODD1 = "COR_SKODD1";
inline constexpr const char* PROP_NO_ODD = "PROP_NO_ODD";
inline constexpr const char* THM_ESISTENZA = "THM_ESISTENZA";
inline constexpr const char* THM_MAIN = "THM_MAIN";
inline constexpr const char* PROP_ODD_C = "PROP_ODD_C";
inline constexpr const char* THM_CH_FOUR = "THM_CH_FOUR";  ///< (2l+1, 4; 4h+2), more than one involution
inline constexpr const char* CONJ_CH_FRONTIER = "CONJ_CH_FRONTIER";
inline constexpr const char* PROP_MOD4 = "PROP_MOD4";
inline constexpr const char* COR_MRS2B = "COR_MRS2B";  ///< diagonal MRS(nk/d; d; c) re-laid
inline constexpr const char* LEM_GCD = "LEM_GCD";      ///< full MRS(k1, s; ec) juxtaposed along d
inline constexpr const char* REM_EPI = "REM_EPI";      ///< integer MRS pushed to Z_{nkc}
inline constexpr const char* OPEN_SK2 = "OPEN_SK2";    ///< s = k = 2 mod 4 with m, n odd
inline constexpr const char* OPEN = "OPEN";
inline constexpr const char* ORACLE = "ORACLE";
}  // namespace reason

struct SearchCertificate {
    std::uint64_t nodes = 0;
    bool exhaustive = false;
    std::string method;  ///< "sum-condition" or "backtracking"
};

struct ExistenceVerdict {
    Status status = Status::Unknown;
    std::string reason;
    std::string detail;
    std::optional<MRSInstance> witness;
    std::optional<SearchCertificate> certificate;
};

struct DecideOptions {
    bool construct_witness = true;
    std::uint64_t budget = 100000000ULL;  ///< passed to searching constructions
};

/// Necessary conditions, then nonexistence results, then constructions, then Unknown.
ExistenceVerdict decide(const Params& p, const Group& gamma, const DecideOptions& opt = {});

struct OracleOptions {
    std::uint64_t budget = 50000000ULL;  ///< search nodes
    unsigned jobs = 1;
    bool diagonal = false;  ///< only diagonal MRS(n;k;c): m = n, s = k
    /// Seeded random restarts (Luby schedule) on a quarter of the budget before the exhaustive pass.
    bool restarts = true;
    std::uint64_t seed = 0;
    /// Answer NotExists without searching when no omega or delta satisfies the sum condition.
    bool sum_prefilter = true;
};

/**
 * @brief Exhaustive backtracking. Exists carries a verified witness, NotExists an exhaustive
 *        certificate, Unknown a budget-exhausted certificate.
 *
 * A restart that completes its tree without hitting its node limit is itself exhaustive. For a fixed
 * seed the witness does not depend on the number of jobs.
 */
ExistenceVerdict oracle_search(const Params& p, const Group& gamma, const OracleOptions& opt = {});

/// Every abelian group of the given order, in invariant-factor form, deterministic order.
std::vector<Group> abelian_groups(std::int64_t order);

/// Every (m,n,s,k,c) with 2 <= s <= n, 2 <= k <= m, ms = nk and nkc = order.
std::vector<Params> admissible_params(std::int64_t order);

struct CrossCheckEntry {
    Params params;
    Group group;
    ExistenceVerdict decided, oracle;
    bool contradiction = false;
};

struct ConsistencyReport {
    std::vector<CrossCheckEntry> entries;
    std::size_t contradictions = 0;
    std::size_t frontier = 0;        ///< decide Unknown, oracle definite
    std::size_t unresolved = 0;      ///< both Unknown
    std::size_t witness_failures = 0;  ///< decide Exists whose witness does not verify
    std::size_t conjecture_violations = 0;
};

/// decide vs oracle on every group of order <= cap and every admissible tuple.
ConsistencyReport cross_check(std::int64_t order_cap, const OracleOptions& opt = {},
                              const std::function<void(const CrossCheckEntry&)>& progress = {});

/// Conjectured answer for full arrays: both even, or gamma in Upsilon and {a,b} != {odd, 2}.
bool conjecture_predicts(std::int64_t a, std::int64_t b, const Group& gamma);

nlohmann::json verdict_to_json(const ExistenceVerdict& v, bool with_witness = true);
nlohmann::json report_to_json(const ConsistencyReport& r);

}  // namespace magicrect
