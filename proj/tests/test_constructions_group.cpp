#include <catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "magicrect/existence.hpp"
#include "magicrect/fixtures.hpp"
#include "magicrect/group_constructions.hpp"

using namespace magicrect;

namespace {

const std::vector<BaseCaseKind> kKinds = {BaseCaseKind::Z4Z4, BaseCaseKind::Z2Z8, BaseCaseKind::Z2Z2Z4,
                                          BaseCaseKind::Z2Z2Z2Z2};

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const MagicRectError& e) {
        return e.code();
    }
    FAIL("no exception");
    return ErrorCode::InvalidInput;
}

// Every block: zero row and column sums, entries exactly {x,-x} x psi.
void check_blocks(const OmegaSet& omega, const Group& psi) {
    auto blocks = zero_sum_blocks(omega, psi);
    REQUIRE(blocks.size() == omega.elements.size() / 2);
    std::set<Coords> all;
    std::set<std::int64_t> firsts;
    for (auto& b : blocks) {
        CHECK(b.rows() == 2);
        CHECK(b.cols() == std::size_t(psi.order()));
        CHECK(is_zero_sum(b));
        std::set<std::int64_t> f;
        for (auto& e : b.entries()) {
            f.insert(e[0]);
            all.insert(e.coords());
        }
        REQUIRE(f.size() == 2);
        CHECK((*f.begin() + *f.rbegin()) % omega.modulus == 0);
        firsts.insert(f.begin(), f.end());
    }
    CHECK(all.size() == omega.elements.size() * std::size_t(psi.order()));
    CHECK(firsts == std::set<std::int64_t>(omega.elements.begin(), omega.elements.end()));
}

MRSInstance patched(const std::vector<PFArray>& headers, std::int64_t r, std::size_t a, std::size_t i, std::size_t j,
                    Coords v) {
    auto hs = headers;
    const auto& h = hs[a];
    PFArray::Builder b(h.rows(), h.cols(), h.group());
    for (std::size_t x = 0; x < h.rows(); ++x)
        for (std::size_t y = 0; y < h.cols(); ++y) b.set(x, y, *h.raw(x, y));
    b.set(i, j, v);
    hs[a] = std::move(b).build();
    return complete_base_case(r, BaseCaseKind::Z2Z2Z4, hs);
}

}  // namespace

TEST_CASE("omega sets are validated", "[group_constructions]") {
    CHECK_NOTHROW(validate_omega({14, {1, 13, 3, 11}}));
    CHECK(code_of([] { validate_omega({14, {7}}); }) == ErrorCode::InvalidOmega);
    CHECK(code_of([] { validate_omega({14, {0}}); }) == ErrorCode::InvalidOmega);
    CHECK(code_of([] { validate_omega({14, {2}}); }) == ErrorCode::InvalidOmega);
    CHECK(code_of([] { validate_omega({14, {2, 12, 2}}); }) == ErrorCode::InvalidOmega);
    CHECK(code_of([] { validate_omega({14, {15}}); }) == ErrorCode::InvalidOmega);
}

TEST_CASE("zero-sum blocks on the worked groups", "[group_constructions]") {
    check_blocks({14, {1, 13, 2, 12, 3, 11, 4, 10, 5, 9, 6, 8}}, Group({4}));
    check_blocks({10, {1, 9, 3, 7}}, Group({2, 2}));
    check_blocks({6, {1, 5}}, Group({2, 8}));
    CHECK(code_of([] { zero_sum_blocks({6, {1, 5}}, Group({2})); }) == ErrorCode::UnsupportedParams);
    CHECK(code_of([] { zero_sum_blocks({6, {1, 5}}, Group({12})); }) == ErrorCode::UnsupportedParams);
}

TEST_CASE("zero-sum blocks on random omega and psi", "[group_constructions][property]") {
    std::mt19937_64 rng(20261016);
    const std::vector<Group> psis = {Group({4}),    Group({2, 2}),       Group({8}),       Group({2, 4}),
                                     Group({2, 2, 2}), Group({16}),      Group({4, 4}),    Group({2, 8}),
                                     Group({2, 2, 4}), Group({2, 2, 2, 2}), Group({32}), Group({2, 4, 4})};
    for (int trial = 0; trial < 50; ++trial) {
        const std::int64_t a = 2 + std::int64_t(rng() % 19);
        OmegaSet omega{2 * a, {}};
        for (std::int64_t x = 1; x < a; ++x)
            if (rng() % 2) {
                omega.elements.push_back(x);
                omega.elements.push_back(2 * a - x);
            }
        if (omega.elements.empty()) omega.elements = {1, 2 * a - 1};
        const auto& psi = psis[rng() % psis.size()];
        INFO("a=" << a << " psi=" << psi.to_string());
        check_blocks(omega, psi);
    }
}

TEST_CASE("base cases MRS(r,8;2) are zero-sum", "[group_constructions]") {
    for (std::int64_t r : {3, 5, 7, 9})
        for (auto kind : kKinds) {
            INFO("r=" << r << " kind=" << base_case_kind_name(kind));
            auto inst = base_case_r8_2(r, kind);
            CHECK(inst.params == Params{r, 8, 8, r, 2});
            CHECK(inst.group == Group(base_case_factors(r, kind)));
            REQUIRE(verify_mrs(inst).ok());
            for (auto& a : inst.arrays) CHECK(is_zero_sum(a));
        }
    CHECK(code_of([] { base_case_r8_2(4, BaseCaseKind::Z4Z4); }) == ErrorCode::UnsupportedParams);
    CHECK(code_of([] { parse_base_case_kind("z3z3"); }) == ErrorCode::ParseError);
    CHECK(parse_base_case_kind("z2z8") == BaseCaseKind::Z2Z8);
}

TEST_CASE("the stored Z2+Z2+Z4 header cell is the only completion", "[group_constructions]") {
    // array 0, row 3, column 4: first coordinate 2, the (Z2, Z4) part searched over all 8 values
    const std::int64_t r = 5;
    auto headers = base_case_headers(r, BaseCaseKind::Z2Z2Z4);
    REQUIRE(*headers[0].raw(3, 4) == Coords{2, 1, 1});
    std::vector<Coords> good;
    for (std::int64_t x = 0; x < 2; ++x)
        for (std::int64_t y = 0; y < 4; ++y) {
            Coords v{2, x, y};
            if (verify_mrs(patched(headers, r, 0, 3, 4, v)).ok()) good.push_back(v);
        }
    CHECK(good == std::vector<Coords>{{2, 1, 1}});
}

TEST_CASE("zero-sum permutation triples", "[group_constructions]") {
    for (auto g : {Group({3}), Group({5}), Group({3, 3}), Group({2, 2}), Group({9}), Group({15})}) {
        INFO(g.to_string());
        auto pi = zero_sum_permutation_triple(g);
        REQUIRE(pi.size() == 3);
        for (auto& p : pi) CHECK(std::set<std::int64_t>(p.begin(), p.end()).size() == std::size_t(g.order()));
        for (std::int64_t i = 0; i < g.order(); ++i)
            CHECK((g.at(pi[0][i]) + g.at(pi[1][i]) + g.at(pi[2][i])).is_zero());
    }
}

TEST_CASE("direct-sum extension", "[group_constructions]") {
    auto base = base_case_r8_2(3, BaseCaseKind::Z4Z4);
    for (auto phi : {Group({3}), Group({5})}) {
        auto ext = extend_direct_sum(base, phi);
        CHECK(ext.params.c == 2 * phi.order());
        CHECK(ext.group.order() == base.group.order() * phi.order());
        CHECK(verify_mrs(ext).ok());
    }
    CHECK(code_of([] { extend_direct_sum(fixture_instance("gcd_z8_z3"), Group({3})); }) ==
          ErrorCode::UnsupportedParams);
}

TEST_CASE("cyclic lifting", "[group_constructions]") {
    auto ext = extend_direct_sum(base_case_r8_2(3, BaseCaseKind::Z4Z4), Group({3}));
    const auto last = ext.group.factors().size() - 1;
    auto same = lift_cyclic(ext, 1, last);
    CHECK(same.params.c == ext.params.c);
    CHECK(verify_mrs(same).ok());
    auto lifted = lift_cyclic(ext, 3, last);
    CHECK(lifted.params.c == 3 * ext.params.c);
    CHECK(lifted.group.factors()[last] == 9);
    CHECK(verify_mrs(lifted).ok());
    CHECK(code_of([&] { lift_cyclic(ext, 3, 0); }) == ErrorCode::InvalidDivisor);
    CHECK(code_of([&] { lift_cyclic(ext, 3, 7); }) == ErrorCode::IndexError);

    auto layers = translation_layers(3, 4, 5);
    REQUIRE(layers.size() == 5);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            std::set<std::int64_t> cell;
            for (auto& l : layers) cell.insert(l[i][j]);
            CHECK(cell == std::set<std::int64_t>{1, 2, 3, 4, 5});
        }
    CHECK(code_of([] { translation_layers(2, 2, 4); }) == ErrorCode::InvalidDivisor);
}

TEST_CASE("MRS(p;2^alpha;1) over groups with three involutions", "[group_constructions]") {
    for (auto psi : {Group({2, 12}), Group({2, 2, 6})}) {
        INFO(psi.to_string());
        auto inst = base_case_p_2alpha(3, psi);
        CHECK(inst.params == Params{3, 8, 8, 3, 1});
        CHECK(verify_mrs(inst).ok());
    }
    auto five = base_case_p_2alpha(5, Group({20, 2}));
    CHECK(five.params == Params{5, 8, 8, 5, 1});
    CHECK(verify_mrs(five).ok());
    CHECK(code_of([] { base_case_p_2alpha(3, Group({24})); }) == ErrorCode::NoSuchObject);
    CHECK(code_of([] { base_case_p_2alpha(9, Group({2, 36})); }) == ErrorCode::UnsupportedParams);
}

TEST_CASE("MRS(2l+1;8;4h+2) for every order-48 group with several involutions", "[group_constructions]") {
    std::size_t built = 0;
    for (auto& g : abelian_groups(48)) {
        INFO(g.to_string());
        if (involution_count(g) == 1) {
            CHECK(code_of([&] { theorem_main(1, 0, g); }) == ErrorCode::NoSuchObject);
            continue;
        }
        auto inst = theorem_main(1, 0, g);
        CHECK(inst.params == Params{3, 8, 8, 3, 2});
        CHECK(verify_mrs(inst).ok());
        ++built;
    }
    CHECK(built == 4);
    CHECK(code_of([] { theorem_main(1, 0, Group({3, 16})); }) == ErrorCode::NoSuchObject);
    CHECK(code_of([] { theorem_main(1, 0, Group({12, 2})); }) == ErrorCode::InvalidParams);
}

TEST_CASE("MRS(2l+1;8;4h+2) with larger l and h", "[group_constructions]") {
    auto a = theorem_main(2, 0, Group({20, 4}));
    CHECK(a.params == Params{5, 8, 8, 5, 2});
    CHECK(verify_mrs(a).ok());
    auto b = theorem_main(1, 1, Group({12, 2, 6}));
    CHECK(b.params == Params{3, 8, 8, 3, 6});
    CHECK(verify_mrs(b).ok());
}

TEST_CASE("choice of prime when 2l+1 has two prime factors", "[group_constructions]") {
    const Group g({30, 2, 4});
    for (std::int64_t p : {3, 5}) {
        INFO("p=" << p);
        PipelineOptions opt;
        opt.prime = p;
        auto inst = theorem_main(7, 0, g, opt);
        CHECK(inst.params == Params{15, 8, 8, 15, 2});
        CHECK(verify_mrs(inst).ok());
    }
    PipelineOptions bad;
    bad.prime = 7;
    CHECK(code_of([&] { theorem_main(7, 0, g, bad); }) == ErrorCode::InvalidParams);
}

TEST_CASE("odd c", "[group_constructions]") {
    auto a = odd_c_construction(1, 2, 1, Group({2, 6}));
    CHECK(a.params == Params{3, 4, 4, 3, 1});
    CHECK(verify_mrs(a).ok());
    auto b = odd_c_construction(1, 3, 3, Group({2, 2, 18}));
    CHECK(b.params == Params{3, 8, 8, 3, 3});
    CHECK(verify_mrs(b).ok());
    auto c = odd_c_construction(2, 2, 1, Group({10, 2}));
    CHECK(verify_mrs(c).ok());
    CHECK(code_of([] { odd_c_construction(1, 2, 2, Group({2, 12})); }) == ErrorCode::UnsupportedParams);
    CHECK(code_of([] { odd_c_construction(1, 2, 1, Group({12})); }) == ErrorCode::NoSuchObject);
}

TEST_CASE("transposes of constructed arrays are magic rectangle sets", "[group_constructions][property]") {
    std::vector<MRSInstance> built = {base_case_r8_2(5, BaseCaseKind::Z2Z8), theorem_main(1, 0, Group({12, 4})),
                                      odd_c_construction(1, 2, 1, Group({2, 6}))};
    for (auto& inst : built) {
        auto t = transpose_instance(inst);
        auto rep = verify_mrs(t);
        REQUIRE(rep.ok());
        CHECK(*rep.omega == *verify_mrs(inst).delta);
    }
}

TEST_CASE("stacking arrays", "[group_constructions]") {
    auto inst = base_case_r8_2(3, BaseCaseKind::Z2Z8);
    auto st = stack_arrays(inst, 2);
    CHECK(st.params == Params{6, 8, 8, 6, 1});
    CHECK(verify_mrs(st).ok());
    CHECK(code_of([&] { stack_arrays(inst, 3); }) == ErrorCode::InvalidParams);
}
