#include <catch_amalgamated.hpp>

#include <set>

#include "magicrect/existence.hpp"
#include "magicrect/group.hpp"

using namespace magicrect;

namespace {

std::vector<Group> groups_up_to(std::int64_t cap) {
    std::vector<Group> out;
    for (std::int64_t n = 1; n <= cap; ++n)
        for (auto& g : abelian_groups(n)) out.push_back(g);
    return out;
}

}  // namespace

TEST_CASE("group orders and involution counts from factor lists", "[group]") {
    Group g({12, 4});
    CHECK(g.order() == 48);
    CHECK(involution_count(g) == 3);

    Group trivial(std::vector<std::int64_t>{});
    CHECK(trivial.order() == 1);
    CHECK(involution_count(trivial) == 0);

    CHECK(Group({2, 2, 2}).order() == 8);
    CHECK(involution_count(Group({2, 2, 2})) == 7);
}

TEST_CASE("bad factors are rejected", "[group]") {
    CHECK_THROWS_AS(Group({0}), MagicRectError);
    CHECK_THROWS_AS(Group({-3}), MagicRectError);
    CHECK_THROWS_AS(parse_group("Q8"), MagicRectError);
}

TEST_CASE("element arithmetic", "[group]") {
    Group g({6, 2, 4});
    CHECK((g.element({5, 1, 2}) + g.element({1, 1, 2})).is_zero());
    Group h({12, 4});
    CHECK(2 * h.element({7, 3}) == h.element({2, 2}));
    Group z8({8});
    CHECK(z8.element({7}) + z8.element({2}) == z8.element({1}));
    CHECK(-z8.element({3}) == z8.element({5}));
    CHECK(z8.element({3}) - z8.element({5}) == z8.element({6}));
}

TEST_CASE("mixing elements of different groups is an error", "[group]") {
    Group a({4}), b({2, 2});
    CHECK_THROWS_AS(a.element({1}) + b.element({1, 0}), MagicRectError);
    CHECK_THROWS_AS(add(Group({4}).element({1}), Group({8}).element({1})), MagicRectError);
}

TEST_CASE("element orders", "[group]") {
    Group g({4, 8});
    CHECK(element_order(g.element({1, 2})) == 4);
    CHECK(element_order(g.zero()) == 1);
    CHECK(element_order(g.element({0, 1})) == 8);
}

TEST_CASE("group sums and involutions", "[group]") {
    CHECK(group_sum(Group({6})) == Group({6}).element({3}));
    CHECK(involution_count(Group({6})) == 1);
    CHECK(group_sum(Group({2, 2})).is_zero());
    CHECK(involution_count(Group({2, 2})) == 3);
    Group g({4, 4, 3});
    CHECK(involution_count(g) == 3);
    CHECK(group_sum(g).is_zero());
}

TEST_CASE("element_of_order", "[group]") {
    auto a = element_of_order(Group({4, 8}), 4);
    REQUIRE(a);
    CHECK(element_order(*a) == 4);
    CHECK_FALSE(element_of_order(Group({2, 2, 2}), 4));
    auto b = element_of_order(Group({6}), 3);
    REQUIRE(b);
    CHECK(element_order(*b) == 3);
}

TEST_CASE("cyclic subgroups", "[group]") {
    Group g({4, 8});
    auto h = cyclic_subgroup(g.element({1, 2}));
    std::set<Coords> got;
    for (auto& e : h) got.insert(e.coords());
    CHECK(got == std::set<Coords>{{0, 0}, {1, 2}, {2, 4}, {3, 6}});
    CHECK(cyclic_subgroup(g.zero()).size() == 1);
    CHECK(cyclic_subgroup(Group({5}).element({1})).size() == 5);
}

TEST_CASE("quotients", "[group]") {
    Group g({4, 8});
    auto h = cyclic_subgroup(g.element({1, 2}));
    auto q = quotient_with_iso(g, h);
    CHECK(isomorphic(q.q, Group({8})));
    // kernel is exactly H, and proj(x, y) depends only on y - 2x
    for (auto& x : enumerate(g)) {
        bool in_h = std::find(h.begin(), h.end(), x) != h.end();
        CHECK(q.proj(x).is_zero() == in_h);
        CHECK(q.proj(x) == q.proj(g.element({0, mod(x[1] - 2 * x[0], 8)})));
    }

    auto trivial = quotient_with_iso(g, {g.zero()});
    CHECK(trivial.q.order() == g.order());
    std::set<Coords> images;
    for (auto& x : enumerate(g)) images.insert(trivial.proj(x).coords());
    CHECK(images.size() == std::size_t(g.order()));

    Group z12({12});
    auto q3 = quotient_with_iso(z12, cyclic_subgroup(z12.element({4})));
    CHECK(isomorphic(q3.q, Group({4})));

    CHECK_THROWS_AS(quotient_with_iso(z12, {z12.element({1}), z12.zero()}), MagicRectError);
}

TEST_CASE("enumeration is lexicographic and complete", "[group]") {
    auto e = enumerate(Group({2, 2}));
    REQUIRE(e.size() == 4);
    CHECK(e[0].coords() == Coords{0, 0});
    CHECK(e[1].coords() == Coords{0, 1});
    CHECK(e[2].coords() == Coords{1, 0});
    CHECK(e[3].coords() == Coords{1, 1});
    auto z3 = enumerate(Group({3}));
    CHECK(z3[2].coords() == Coords{2});
    auto big = enumerate(Group({6, 2, 4}));
    CHECK(std::set<Element>(big.begin(), big.end()).size() == 48);
}

TEST_CASE("invariant and primary factors", "[group]") {
    CHECK(invariant_factors(Group({6, 4})) == std::vector<std::int64_t>{2, 12});
    CHECK(primary_factors(Group({12, 4})) == std::vector<std::int64_t>{4, 4, 3});
    CHECK(isomorphic(Group({6, 8}), Group({2, 24})));
    CHECK_FALSE(isomorphic(Group({4, 4}), Group({2, 8})));
}

TEST_CASE("isomorphisms are bijective homomorphisms", "[group]") {
    for (auto [a, b] : std::vector<std::pair<Group, Group>>{
             {Group({6, 8}), Group({2, 24})}, {Group({12, 4}), Group({4, 4, 3})}, {Group({30}), Group({2, 3, 5})}}) {
        auto f = isomorphism(a, b);
        CHECK(f.is_homomorphism());
        std::set<Coords> img;
        for (auto& x : enumerate(a)) img.insert(f(x).coords());
        CHECK(img.size() == std::size_t(a.order()));
    }
    CHECK_THROWS_AS(isomorphism(Group({4}), Group({2, 2})), MagicRectError);
}

TEST_CASE("smith normal form", "[group]") {
    auto sf = smith_normal_form({{2, 4}, {6, 8}});
    CHECK(sf.d[0][0] == 2);
    CHECK(sf.d[1][1] == 4);
    CHECK(sf.d[0][1] == 0);
    CHECK(sf.d[1][0] == 0);
}

TEST_CASE("abelian group enumeration", "[group]") {
    CHECK(abelian_groups(16).size() == 5);
    CHECK(abelian_groups(24).size() == 3);
    CHECK(abelian_groups(64).size() == 11);
    CHECK(abelian_groups(1).size() == 1);
    for (auto& g : abelian_groups(48)) CHECK(g.order() == 48);
}

TEST_CASE("involution count and group sum for every group of order at most 64", "[group][property]") {
    for (const auto& g : groups_up_to(64)) {
        std::size_t even = 0;
        for (auto f : g.factors()) even += f % 2 == 0;
        CHECK(involution_count(g) == (std::size_t{1} << even) - 1);

        Element sum = g.zero();
        for (auto& x : enumerate(g)) sum = sum + x;
        CHECK(sum == group_sum(g));
        if (involution_count(g) == 1)
            CHECK(sum == involutions(g).front());
        else
            CHECK(sum.is_zero());
    }
}

TEST_CASE("orders divide the exponent", "[group][property]") {
    for (const auto& g : groups_up_to(40)) {
        const auto ex = exponent(g);
        auto elems = enumerate(g);
        CHECK(std::set<Element>(elems.begin(), elems.end()).size() == std::size_t(g.order()));
        for (auto& x : elems) {
            const auto o = element_order(x);
            CHECK(ex % o == 0);
            CHECK(scalar_mul(o, x).is_zero());
        }
    }
}

TEST_CASE("quotient invariants on every cyclic subgroup", "[group][property]") {
    for (const auto& g : groups_up_to(32)) {
        for (auto& a : enumerate(g)) {
            auto h = cyclic_subgroup(a);
            auto q = quotient_with_iso(g, h);
            CHECK(q.q.order() * std::int64_t(h.size()) == g.order());
            std::set<Coords> image;
            for (auto& x : enumerate(g)) {
                image.insert(q.proj(x).coords());
                bool in_h = std::find(h.begin(), h.end(), x) != h.end();
                CHECK(q.proj(x).is_zero() == in_h);
            }
            CHECK(image.size() == std::size_t(q.q.order()));
            for (auto& y : enumerate(q.q)) CHECK(q.proj(q.section(y)) == y);
        }
    }
}
