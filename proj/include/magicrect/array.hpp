/**
 * @file array.hpp
 * @brief Partially filled arrays over a group or over Z, magic rectangle set
 *        instances, and their verifier.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "magicrect/group.hpp"

namespace magicrect {

enum class EntryMode { Group, Integer };

/**
 * @brief m x n grid of optional entries. Immutable once built; use PFArray::Builder.
 *
 * In integer mode the entries live in Group::integers().
 */
class PFArray {
public:
    class Builder {
    public:
        Builder(std::size_t m, std::size_t n, Group g);
        Builder& set(std::size_t i, std::size_t j, const Element& e);
        Builder& set(std::size_t i, std::size_t j, const Coords& c);
        Builder& clear(std::size_t i, std::size_t j);
        bool filled(std::size_t i, std::size_t j) const;
        PFArray build() &&;
        PFArray build() const&;

    private:
        std::size_t m_, n_;
        Group group_;
        std::vector<std::optional<Coords>> cells_;
    };

    PFArray() = default;

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    const Group& group() const { return group_; }
    EntryMode mode() const { return group_.is_integer() ? EntryMode::Integer : EntryMode::Group; }

    bool filled(std::size_t i, std::size_t j) const;
    std::optional<Element> at(std::size_t i, std::size_t j) const;
    const std::optional<Coords>& raw(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }

    std::size_t row_count(std::size_t i) const;
    std::size_t col_count(std::size_t j) const;
    std::vector<Element> entries() const;  ///< row-major

    bool operator==(const PFArray& o) const {
        return m_ == o.m_ && n_ == o.n_ && group_ == o.group_ && cells_ == o.cells_;
    }

private:
    std::size_t m_ = 0, n_ = 0;
    Group group_;
    std::vector<std::optional<Coords>> cells_;
};

struct Params {
    std::int64_t m = 0, n = 0, s = 0, k = 0, c = 0;
    bool operator==(const Params&) const = default;
    std::string to_string() const;
};

/// c arrays of size m x n plus claimed constants.
struct MRSInstance {
    Params params;
    Group group;  ///< Group::integers() in integer mode
    std::vector<PFArray> arrays;
    std::optional<Element> omega, delta;

    EntryMode mode() const { return group.is_integer() ? EntryMode::Integer : EntryMode::Group; }
};

struct VerificationReport {
    bool shape_ok = true;
    bool entries_ok = true;  ///< (a)
    bool counts_ok = true;   ///< (b)
    bool sums_ok = true;     ///< (c)
    bool claims_ok = true;
    std::optional<Element> omega, delta;
    std::vector<std::string> messages;

    bool ok() const { return shape_ok && entries_ok && counts_ok && sums_ok && claims_ok; }
    std::string summary() const;
};

Element row_sum(const PFArray& a, std::size_t i);
Element col_sum(const PFArray& a, std::size_t j);
VerificationReport verify_mrs(const MRSInstance& inst);
bool is_zero_sum(const PFArray& a);

PFArray transpose(const PFArray& a);
MRSInstance transpose_instance(const MRSInstance& inst);
PFArray juxtapose_vertical(const std::vector<PFArray>& blocks);
PFArray juxtapose_horizontal(const std::vector<PFArray>& blocks);

/// Cells (i,j) with j - i = l (mod gcd(m,n)), row-major.
std::vector<std::pair<std::size_t, std::size_t>> diagonal_cells(std::size_t m, std::size_t n, std::size_t l);
/// Square arrays whose filled cells are exactly k consecutive diagonals (mod n).
bool is_diagonal_instance(const MRSInstance& inst);
/// Index of the first of the k consecutive filled diagonals, if the array is diagonal.
std::optional<std::size_t> diagonal_start(const PFArray& a, std::size_t k);

struct LabelingReport {
    bool constant = false;
    std::optional<Element> mu;
    std::size_t parts = 0;
};
LabelingReport to_multipartite_labeling(const MRSInstance& inst);

/// Maps every entry through f (e.g. an isomorphism); constants follow.
MRSInstance map_instance(const MRSInstance& inst, const GroupHom& f);

/// Entry-wise constructor from a dense grid (nullopt = empty).
PFArray make_array(const Group& g, const std::vector<std::vector<std::optional<Coords>>>& grid);

}  // namespace magicrect
