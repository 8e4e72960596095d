/**
 * @file group.hpp
 * @brief Finite abelian groups as direct sums of cyclic groups, their elements,
 *        homomorphisms, quotients and isomorphisms between factor lists.
 */
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "magicrect/error.hpp"

namespace magicrect {

using Coords = std::vector<std::int64_t>;

/// Least nonnegative residue of x modulo m (m > 0).
inline std::int64_t mod(std::int64_t x, std::int64_t m) {
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

class Element;

/**
 * @brief Z_{d_1} + ... + Z_{d_s}. Cheap to copy; the factor list is shared and immutable.
 *
 * A factor of 0 denotes Z with no reduction and is only used by the internal
 * integer group that backs integer-mode arrays.
 */
class Group {
public:
    Group();  ///< trivial group
    explicit Group(std::vector<std::int64_t> factors);

    static Group integers();

    const std::vector<std::int64_t>& factors() const { return *factors_; }
    std::size_t rank() const { return factors_->size(); }
    bool is_integer() const { return integer_; }
    bool canonical() const { return canonical_; }
    std::int64_t order() const;

    Element zero() const;
    Element element(Coords coords) const;  ///< reduces coordinates

    /// Mixed-radix index in lexicographic order (first coordinate most significant).
    std::int64_t index_of(const Coords& coords) const;
    Element at(std::int64_t index) const;

    std::string to_string() const;  ///< e.g. "Z12+Z4"; "Z" for the integer group; "0" for trivial

    bool operator==(const Group& o) const;
    bool operator!=(const Group& o) const { return !(*this == o); }

private:
    std::shared_ptr<const std::vector<std::int64_t>> factors_;
    bool canonical_ = true;
    bool integer_ = false;
};

class Element {
public:
    Element() = default;
    Element(Group g, Coords c) : group_(std::move(g)), coords_(std::move(c)) {}

    const Group& group() const { return group_; }
    const Coords& coords() const { return coords_; }
    std::int64_t operator[](std::size_t i) const { return coords_[i]; }
    bool is_zero() const;
    std::string to_string() const;  ///< "(7,3)"; integers render bare

    bool operator==(const Element& o) const { return group_ == o.group_ && coords_ == o.coords_; }
    bool operator!=(const Element& o) const { return !(*this == o); }
    bool operator<(const Element& o) const { return coords_ < o.coords_; }

private:
    Group group_;
    Coords coords_;
};

Group group_from_factors(const std::vector<std::int64_t>& factors);

/// Parses "Z12+Z4" (case-insensitive, '+' or '⊕' separated; "0" or "" for trivial).
Group parse_group(const std::string& text);

Element add(const Element& a, const Element& b);
Element neg(const Element& a);
Element sub(const Element& a, const Element& b);
Element scalar_mul(std::int64_t k, const Element& a);

inline Element operator+(const Element& a, const Element& b) { return add(a, b); }
inline Element operator-(const Element& a, const Element& b) { return sub(a, b); }
inline Element operator-(const Element& a) { return neg(a); }
inline Element operator*(std::int64_t k, const Element& a) { return scalar_mul(k, a); }

std::int64_t element_order(const Element& a);
std::vector<Element> enumerate(const Group& g);
std::vector<Element> involutions(const Group& g);
std::size_t involution_count(const Group& g);
Element group_sum(const Group& g);
std::int64_t exponent(const Group& g);
std::optional<Element> element_of_order(const Group& g, std::int64_t n);
std::vector<Element> cyclic_subgroup(const Element& a);

/// Odd order or more than one involution.
bool in_upsilon(const Group& g);

/// Invariant factors d_1 | d_2 | ... (1s dropped).
std::vector<std::int64_t> invariant_factors(const Group& g);
/// Prime-power factors sorted by (p, p^e).
std::vector<std::int64_t> primary_factors(const Group& g);
bool isomorphic(const Group& a, const Group& b);

/**
 * @brief Homomorphism x -> x * matrix, reduced modulo the target factors.
 * matrix has source.rank() rows and target.rank() columns.
 */
class GroupHom {
public:
    GroupHom() = default;
    GroupHom(Group source, Group target, std::vector<Coords> matrix);

    const Group& source() const { return source_; }
    const Group& target() const { return target_; }
    const std::vector<Coords>& matrix() const { return matrix_; }

    Element operator()(const Element& x) const;
    GroupHom then(const GroupHom& next) const;  ///< next o this

    /// Exhaustive check of f(a+b)=f(a)+f(b) (generator images suffice, but small groups are cheap).
    bool is_homomorphism() const;

private:
    Group source_, target_;
    std::vector<Coords> matrix_;
};

/// Some isomorphism a -> b; throws GroupMismatch when the groups are not isomorphic.
GroupHom isomorphism(const Group& a, const Group& b);

/**
 * @brief Result of quotient_with_iso.
 *
 * The section is a lookup table giving the lexicographically first preimage of each
 * element of Q. It is not a homomorphism in general, so it is not a GroupHom.
 */
struct Quotient {
    Group q;
    GroupHom proj;
    std::vector<Element> section_table;  ///< indexed by q.index_of

    Element section(const Element& y) const;
};

bool is_subgroup(const Group& g, const std::vector<Element>& h);
Quotient quotient_with_iso(const Group& g, const std::vector<Element>& h);

/// Smith normal form of an integer matrix: U*A*V = D (diagonal, d_i | d_{i+1}).
struct SmithForm {
    std::vector<Coords> d;  ///< rows x cols
    std::vector<Coords> v;  ///< cols x cols, unimodular
};
SmithForm smith_normal_form(std::vector<Coords> a);

/// Direct sum G + H with H's factors appended.
Group direct_sum(const Group& a, const Group& b);
Element concat(const Element& a, const Element& b, const Group& sum);

}  // namespace magicrect
