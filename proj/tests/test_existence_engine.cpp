#include <catch_amalgamated.hpp>

#include <set>

#include "magicrect/existence.hpp"

using namespace magicrect;

namespace {

struct Row {
    Params p;
    std::vector<std::int64_t> group;
    Status status;
    const char* reason;
    bool witness;
};

OracleOptions exhaustive(std::uint64_t budget = 50000000ULL) {
    OracleOptions o;
    o.budget = budget;
    o.restarts = false;
    return o;
}

}  // namespace

TEST_CASE("decide on worked cases", "[existence]") {
    const std::vector<Row> rows = {
        {{2, 3, 3, 2, 1}, {6}, Status::NotExists, reason::COR_SKODD1, false},
        {{2, 3, 3, 2, 2}, {2, 6}, Status::NotExists, reason::PROP_NO_ODD, false},
        {{2, 3, 3, 2, 1}, {4}, Status::NotExists, reason::NEC, false},
        {{3, 3, 4, 2, 1}, {6}, Status::NotExists, reason::NEC, false},
        {{3, 4, 4, 3, 1}, {12}, Status::NotExists, reason::COR_SKODD1, false},
        {{3, 8, 8, 3, 2}, {12, 4}, Status::Exists, reason::THM_MAIN, true},
        {{8, 3, 3, 8, 2}, {2, 2, 12}, Status::Exists, reason::THM_MAIN, true},
        {{3, 4, 4, 3, 1}, {2, 6}, Status::Exists, reason::PROP_ODD_C, true},
        {{3, 4, 4, 3, 2}, {2, 12}, Status::Exists, reason::THM_CH_FOUR, false},
        {{3, 16, 16, 3, 2}, {24, 4}, Status::Unknown, reason::CONJ_CH_FRONTIER, false},
        {{4, 4, 4, 4, 1}, {16}, Status::Exists, reason::PROP_MOD4, true},
        {{3, 5, 5, 3, 1}, {15}, Status::Exists, reason::THM_ESISTENZA, false},
        {{8, 4, 2, 4, 1}, {2, 2, 4}, Status::Exists, reason::PROP_MOD4, true},
        {{6, 6, 2, 2, 1}, {12}, Status::Exists, reason::PROP_MOD4, true},
        {{5, 5, 2, 2, 1}, {10}, Status::Exists, reason::COR_MRS2B, true},
        {{6, 16, 8, 3, 1}, {12, 4}, Status::Exists, reason::LEM_GCD, true},
        {{16, 6, 3, 8, 1}, {12, 4}, Status::Exists, reason::LEM_GCD, true},
        {{5, 5, 3, 3, 1}, {15}, Status::Exists, reason::REM_EPI, false},
        {{9, 9, 2, 2, 1}, {3, 6}, Status::Unknown, reason::OPEN_SK2, false},
        {{9, 9, 3, 3, 1}, {3, 9}, Status::Unknown, reason::OPEN, false},
    };
    for (const auto& r : rows) {
        Group g(r.group);
        INFO(r.p.to_string() << " " << g.to_string());
        auto v = decide(r.p, g);
        CHECK(v.status == r.status);
        CHECK(v.reason == r.reason);
        CHECK(bool(v.witness) == r.witness);
        if (v.witness) {
            CHECK(v.witness->params == r.p);
            CHECK(verify_mrs(*v.witness).ok());
        }
    }
}

TEST_CASE("decide without witnesses keeps the verdict", "[existence]") {
    DecideOptions o;
    o.construct_witness = false;
    auto v = decide({3, 8, 8, 3, 2}, Group({12, 4}), o);
    CHECK(v.status == Status::Exists);
    CHECK(v.reason == reason::THM_MAIN);
    CHECK_FALSE(v.witness);
}

TEST_CASE("oracle confirms the nonexistence results", "[existence][oracle]") {
    auto a = oracle_search({2, 3, 3, 2, 1}, Group({6}));
    CHECK(a.status == Status::NotExists);
    REQUIRE(a.certificate);
    CHECK(a.certificate->exhaustive);

    auto b = oracle_search({2, 3, 3, 2, 2}, Group({2, 6}));
    CHECK(b.status == Status::NotExists);
    REQUIRE(b.certificate);
    CHECK(b.certificate->exhaustive);

    OracleOptions diag;
    diag.diagonal = true;
    auto c = oracle_search({4, 4, 2, 2, 1}, Group({2, 2, 2}), diag);
    CHECK(c.status == Status::NotExists);
    CHECK(c.certificate->exhaustive);
}

TEST_CASE("oracle finds verified witnesses", "[existence][oracle]") {
    for (auto opt : {OracleOptions{}, exhaustive()}) {
        auto v = oracle_search({3, 4, 4, 3, 1}, Group({2, 6}), opt);
        REQUIRE(v.status == Status::Exists);
        REQUIRE(v.witness);
        CHECK(verify_mrs(*v.witness).ok());
        CHECK(v.reason == reason::ORACLE);
    }
    OracleOptions diag;
    diag.diagonal = true;
    auto d = oracle_search({4, 4, 2, 2, 1}, Group({8}), diag);
    REQUIRE(d.status == Status::Exists);
    CHECK(is_diagonal_instance(*d.witness));
    CHECK(verify_mrs(*d.witness).ok());
}

TEST_CASE("two partial 6x4 shapes over Z2+Z6 have no MRS", "[existence][oracle]") {
    // Z2+Z6 has three involutions and neither s nor k is 2 with an odd side, yet the search is exhaustive and empty
    for (Params p : {Params{6, 4, 2, 3, 1}, Params{4, 6, 3, 2, 1}}) {
        INFO(p.to_string());
        auto v = oracle_search(p, Group({2, 6}));
        CHECK(v.status == Status::NotExists);
        REQUIRE(v.certificate);
        CHECK(v.certificate->exhaustive);
        CHECK(decide(p, Group({2, 6})).status != Status::Exists);
    }
}

TEST_CASE("sum-condition prefilter", "[existence][oracle]") {
    // one involution, odd c*m: no omega with cm*omega = sum
    auto v = oracle_search({2, 3, 3, 2, 1}, Group({6}));
    REQUIRE(v.certificate);
    CHECK(v.certificate->method == "sum-condition");
    CHECK(v.certificate->nodes == 0);

    OracleOptions raw;
    raw.sum_prefilter = false;
    raw.restarts = false;
    auto w = oracle_search({2, 3, 3, 2, 1}, Group({6}), raw);
    CHECK(w.status == Status::NotExists);
    REQUIRE(w.certificate);
    CHECK(w.certificate->method == "backtracking");
    CHECK(w.certificate->exhaustive);
    CHECK(w.certificate->nodes > 0);
}

TEST_CASE("oracle budget exhaustion is Unknown", "[existence][oracle]") {
    auto v = oracle_search({6, 4, 2, 3, 1}, Group({2, 6}), exhaustive(10));
    CHECK(v.status == Status::Unknown);
    REQUIRE(v.certificate);
    CHECK_FALSE(v.certificate->exhaustive);
}

TEST_CASE("oracle witness does not depend on the number of jobs", "[existence][oracle]") {
    for (bool restarts : {false, true}) {
        OracleOptions one, two;
        one.restarts = two.restarts = restarts;
        two.jobs = 2;
        for (auto [p, g] : std::vector<std::pair<Params, Group>>{{{3, 4, 4, 3, 1}, Group({2, 6})},
                                                                 {{4, 4, 2, 2, 2}, Group({2, 8})},
                                                                 {{6, 6, 2, 2, 1}, Group({2, 6})}}) {
            INFO(p.to_string() << " restarts=" << restarts);
            auto a = oracle_search(p, g, one), b = oracle_search(p, g, two);
            REQUIRE(a.status == Status::Exists);
            REQUIRE(b.status == Status::Exists);
            for (std::size_t i = 0; i < a.witness->arrays.size(); ++i) CHECK(a.witness->arrays[i] == b.witness->arrays[i]);
        }
    }
}

TEST_CASE("admissible parameters", "[existence]") {
    for (std::int64_t order : {6, 12, 16, 24}) {
        auto ps = admissible_params(order);
        CHECK_FALSE(ps.empty());
        std::set<std::string> seen;
        for (auto& p : ps) {
            CHECK(p.m * p.s == p.n * p.k);
            CHECK(p.n * p.k * p.c == order);
            CHECK(p.s >= 2);
            CHECK(p.k >= 2);
            CHECK(p.s <= p.n);
            CHECK(p.k <= p.m);
            CHECK(seen.insert(p.to_string()).second);
        }
    }
    auto six = admissible_params(6);
    CHECK(std::find(six.begin(), six.end(), Params{2, 3, 3, 2, 1}) != six.end());
}

TEST_CASE("conjectured answer for full arrays", "[existence]") {
    CHECK(conjecture_predicts(4, 4, Group({16})));
    CHECK_FALSE(conjecture_predicts(3, 4, Group({12})));
    CHECK(conjecture_predicts(3, 4, Group({2, 6})));
    CHECK_FALSE(conjecture_predicts(2, 3, Group({2, 6})));
    CHECK(conjecture_predicts(3, 5, Group({15})));
}

TEST_CASE("transposed parameters get the same verdict", "[existence][property]") {
    for (std::int64_t order = 4; order <= 24; ++order)
        for (auto& g : abelian_groups(order))
            for (auto& p : admissible_params(order)) {
                INFO(p.to_string() << " " << g.to_string());
                DecideOptions o;
                o.construct_witness = false;
                const Params t{p.n, p.m, p.k, p.s, p.c};
                auto a = decide(p, g, o), b = decide(t, g, o);
                CHECK(a.status == b.status);
            }
}

TEST_CASE("every constructed witness verifies", "[existence][property]") {
    std::size_t witnesses = 0;
    for (std::int64_t order = 4; order <= 48; ++order)
        for (auto& g : abelian_groups(order))
            for (auto& p : admissible_params(order)) {
                auto v = decide(p, g);
                if (!v.witness) continue;
                INFO(p.to_string() << " " << g.to_string() << " " << v.reason);
                CHECK(v.witness->params == p);
                CHECK(v.witness->group == g);
                CHECK(verify_mrs(*v.witness).ok());
                ++witnesses;
            }
    CHECK(witnesses > 100);
}

TEST_CASE("full-array verdicts agree with the conjecture", "[existence][property]") {
    for (std::int64_t order = 4; order <= 96; ++order)
        for (auto& g : abelian_groups(order))
            for (auto& p : admissible_params(order)) {
                if (p.s != p.n || p.k != p.m) continue;
                DecideOptions o;
                o.construct_witness = false;
                auto v = decide(p, g, o);
                if (v.status == Status::Unknown) continue;
                INFO(p.to_string() << " " << g.to_string() << " " << v.reason);
                CHECK((v.status == Status::Exists) == conjecture_predicts(p.m, p.n, g));
            }
}

TEST_CASE("decide and oracle agree up to order 12", "[existence][oracle]") {
    OracleOptions o;
    o.budget = 20000000;
    auto rep = cross_check(12, o);
    CHECK(rep.contradictions == 0);
    CHECK(rep.witness_failures == 0);
    CHECK(rep.conjecture_violations == 0);
    CHECK(rep.entries.size() > 20);
    auto j = report_to_json(rep);
    CHECK(j.at("contradictions") == 0);
    CHECK(j.at("entries").size() == rep.entries.size());
}

TEST_CASE("verdict JSON", "[existence]") {
    auto v = decide({3, 4, 4, 3, 1}, Group({2, 6}));
    auto j = verdict_to_json(v);
    CHECK(j.at("status") == "Exists");
    CHECK(j.at("reason") == reason::PROP_ODD_C);
    CHECK(j.contains("witness"));
    CHECK_FALSE(verdict_to_json(v, false).contains("witness"));
    CHECK(status_name(Status::Unknown) == "Unknown");
}
