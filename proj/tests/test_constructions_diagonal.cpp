#include <catch_amalgamated.hpp>

#include <array>
#include <functional>
#include <set>

#include "magicrect/diagonal.hpp"
#include "magicrect/existence.hpp"
#include "magicrect/fixtures.hpp"

using namespace magicrect;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const MagicRectError& e) {
        return e.code();
    }
    FAIL("no exception");
    return ErrorCode::InvalidInput;
}

std::vector<Group> groups_of(std::int64_t order) { return abelian_groups(order); }

void check(const MRSInstance& inst, const Params& p, bool diagonal) {
    CHECK(inst.params == p);
    CHECK(verify_mrs(inst).ok());
    if (diagonal) CHECK(is_diagonal_instance(inst));
}

}  // namespace

TEST_CASE("diagonal MRS(4;2;4) over Z4+Z8", "[diagonal]") {
    Group g({4, 8});
    auto inst = diagonal_n2c(4, 4, g, g.element({1, 2}));
    check(inst, {4, 4, 2, 2, 4}, true);
    auto rep = verify_mrs(inst);
    CHECK(*rep.omega == g.element({0, 1}));
    CHECK(*rep.delta == g.element({1, 3}));

    // the stored example is the same set, array i shifted by i along its diagonals
    auto fx = fixture_instance("diag_z4_z8");
    REQUIRE(fx.arrays.size() == 4);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) {
                auto want = inst.arrays[a].raw((r + a) % 4, (c + a) % 4);
                auto got = fx.arrays[a].raw(r, c);
                CHECK(bool(want) == bool(got));
                if (want && got) CHECK(*want == *got);
            }
}

TEST_CASE("diagonal_n2c rejects groups without an element of order n", "[diagonal]") {
    CHECK(code_of([] { diagonal_n2c(4, 1, Group({2, 2, 2})); }) == ErrorCode::NoSuchObject);
    CHECK(code_of([] { diagonal_n2c(4, 1, Group({12})); }) == ErrorCode::InvalidParams);
    CHECK(code_of([&] { diagonal_n2c(4, 1, Group({4, 2}), Group({4, 2}).element({1, 0}) + Group({4, 2}).element({1, 0})); }) ==
          ErrorCode::InvalidInput);
    check(diagonal_n2c(3, 1, Group({6})), {3, 3, 2, 2, 1}, true);
}

TEST_CASE("diagonal_n2c exists for every group with an element of order n", "[diagonal][property]") {
    for (std::int64_t n = 2; n <= 16; ++n)
        for (std::int64_t c = 1; 2 * n * c <= 32; ++c)
            for (auto& g : groups_of(2 * n * c)) {
                INFO("n=" << n << " c=" << c << " " << g.to_string());
                if (!element_of_order(g, n)) {
                    CHECK(code_of([&] { diagonal_n2c(n, c, g); }) == ErrorCode::NoSuchObject);
                    continue;
                }
                check(diagonal_n2c(n, c, g), {n, n, 2, 2, c}, true);
            }
}

TEST_CASE("diagonal MRS(n;2b;c)", "[diagonal]") {
    auto six = diagonal_n_2b_c(6, 2, 2, Group({6, 2, 4}));
    check(six, {6, 6, 4, 4, 2}, true);
    check(diagonal_n_2b_c(8, 2, 1, Group({32})), {8, 8, 4, 4, 1}, true);
    check(diagonal_n_2b_c(6, 3, 1, Group({2, 18})), {6, 6, 6, 6, 1}, true);
    CHECK(code_of([] { diagonal_n_2b_c(4, 3, 1, Group({24})); }) == ErrorCode::InvalidParams);
    // the stored 6x6 example has the same shape and group
    auto fx = fixture_instance("diag_z6_z2_z4");
    CHECK(fx.params == six.params);
    CHECK(fx.group == six.group);
}

TEST_CASE("diagonal MRS(n;4b;c) reproduces the 8x8 example", "[diagonal]") {
    Group g({4, 4, 2});
    auto inst = diagonal_n_4b_c(8, 1, 1, g);
    check(inst, {8, 8, 4, 4, 1}, true);
    auto fx = fixture_instance("diag_z4_z4_z2");
    REQUIRE(fx.arrays.size() == 1);
    CHECK(inst.arrays[0] == fx.arrays[0]);
    CHECK(*verify_mrs(inst).omega == g.element({2, 2, 0}));

    auto blocks = diagonal_n2c(2, 8, g);
    auto bf = fixture_instance("blocks_z4_z4_z2");
    REQUIRE(blocks.arrays.size() == bf.arrays.size());
    for (std::size_t a = 0; a < bf.arrays.size(); ++a) CHECK(blocks.arrays[a] == bf.arrays[a]);
}

TEST_CASE("diagonal MRS(n;4b;c) over every group of its order", "[diagonal][property]") {
    std::size_t built = 0;
    for (std::int64_t n = 4; n <= 12; ++n)
        for (std::int64_t b = 1; 4 * b <= n; ++b)
            for (std::int64_t c = 1; c <= 2; ++c)
                for (auto& g : groups_of(4 * n * b * c)) {
                    INFO("n=" << n << " b=" << b << " c=" << c << " " << g.to_string());
                    check(diagonal_n_4b_c(n, b, c, g), {n, n, 4 * b, 4 * b, c}, true);
                    ++built;
                }
    CHECK(built > 50);
    CHECK(code_of([] { diagonal_n_4b_c(6, 2, 1, Group({48})); }) == ErrorCode::InvalidParams);
}

TEST_CASE("gcd juxtaposition reassembles the Z8+Z3 example", "[diagonal]") {
    // cut the stored MRS(6,3;2,4;2) into its six 2x2 blocks and put them back
    auto fx = fixture_instance("gcd_z8_z3");
    const std::int64_t k1 = 2, s = 2, s1 = 1, e = 3, n = 3;
    MRSInstance in;
    in.params = {2, 2, 2, 2, 6};
    in.group = fx.group;
    for (auto& arr : fx.arrays)
        for (std::int64_t f = 0; f < e; ++f) {
            PFArray::Builder b(2, 2, fx.group);
            for (std::int64_t i = 0; i < k1; ++i)
                for (std::int64_t j = 0; j < s; ++j)
                    b.set(std::size_t(i), std::size_t(j), *arr.raw(std::size_t(k1 * f + i), std::size_t((s1 * f + j) % n)));
            in.arrays.push_back(std::move(b).build());
        }
    REQUIRE(verify_mrs(in).ok());
    auto out = gcd_compose(in, 6, 3, 2, 4);
    check(out, {6, 3, 2, 4, 2}, false);
    for (std::size_t a = 0; a < 2; ++a) CHECK(out.arrays[a] == fx.arrays[a]);
    auto rep = verify_mrs(out);
    CHECK(*rep.omega == fx.group.element({7, 0}));
    CHECK(*rep.delta == fx.group.element({6, 0}));

    check(gcd_compose(diagonal_n2c(2, 6, Group({8, 3})), 6, 3, 2, 4), {6, 3, 2, 4, 2}, false);
    CHECK(code_of([&] { gcd_compose(in, 6, 3, 2, 5); }) == ErrorCode::InvalidParams);
    CHECK(code_of([&] { gcd_compose(in, 8, 4, 2, 4); }) == ErrorCode::InvalidParams);
}

TEST_CASE("all-even parameters", "[diagonal]") {
    check(even_params(2, 2, 2, 2, 1, Group({4})), {2, 2, 2, 2, 1}, false);
    check(even_params(2, 2, 2, 2, 1, Group({2, 2})), {2, 2, 2, 2, 1}, false);
    for (auto g : {Group({4, 2}), Group({8}), Group({2, 2, 2})}) {
        INFO(g.to_string());
        check(even_params(4, 4, 2, 2, 1, g), {4, 4, 2, 2, 1}, false);
    }
    for (auto& g : groups_of(16)) {
        INFO(g.to_string());
        check(even_params(4, 8, 4, 2, 1, g), {4, 8, 4, 2, 1}, false);
    }
    CHECK(code_of([] { even_params(3, 6, 4, 2, 1, Group({24})); }) == ErrorCode::UnsupportedParams);
}

TEST_CASE("diagonal squares re-laid as rectangles", "[diagonal]") {
    for (auto& g : groups_of(24)) {
        if (!element_of_order(g, 12)) continue;
        INFO(g.to_string());
        auto sq = diagonal_n2c(12, 1, g);
        check(diagonal_to_rectangle(sq, 12, 6, 2, 4), {12, 6, 2, 4, 1}, false);
        check(diagonal_to_rectangle(sq, 6, 12, 4, 2), {6, 12, 4, 2, 1}, false);
        auto same = diagonal_to_rectangle(sq, 12, 12, 2, 2);
        check(same, {12, 12, 2, 2, 1}, true);
    }
    auto sq = diagonal_n2c(6, 2, Group({24}));
    check(diagonal_to_rectangle(sq, 6, 3, 2, 4), {6, 3, 2, 4, 2}, false);
    CHECK(code_of([&] { diagonal_to_rectangle(fixture_instance("gcd_z8_z3"), 6, 3, 2, 4); }) == ErrorCode::InvalidParams);
}

TEST_CASE("mod-4 case split", "[diagonal]") {
    CHECK(mod4_case(8, 8, 4, 4) == Mod4Case::SK0);
    CHECK(mod4_case(8, 4, 2, 4) == Mod4Case::S2K0);
    CHECK(mod4_case(4, 8, 4, 2) == Mod4Case::S0K2);
    CHECK(mod4_case(6, 6, 2, 2) == Mod4Case::SK2MNEven);
    CHECK(mod4_case(3, 6, 4, 2) == Mod4Case::S0K2);
    CHECK_FALSE(mod4_case(5, 5, 3, 3));
    CHECK_FALSE(mod4_case(5, 5, 2, 2));
    CHECK(code_of([] { mod4_cases(5, 5, 2, 2, 1, Group({10})); }) == ErrorCode::Unsupported);

    const std::vector<std::array<std::int64_t, 5>> cases = {
        {8, 8, 4, 4, 1}, {4, 4, 4, 4, 1}, {8, 4, 2, 4, 1}, {4, 8, 4, 2, 1}, {6, 6, 2, 2, 1},
        {6, 6, 2, 2, 2}, {3, 6, 4, 2, 1}, {12, 6, 2, 4, 1}, {6, 12, 4, 2, 1}, {10, 10, 2, 2, 1}, {4, 4, 2, 2, 1}};
    for (auto [m, n, s, k, c] : cases)
        for (auto& g : groups_of(m * s * c)) {
            INFO((Params{m, n, s, k, c}).to_string() << " " << g.to_string());
            check(mod4_cases(m, n, s, k, c, g), {m, n, s, k, c}, false);
        }
}
