// magicrect: construct, verify, decide, sweep and export magic rectangle sets.
//
// Exit codes: 0 success / Exists, 1 NotExists, 2 Unknown, 3 usage error,
// 4 a construction failed its own verifier.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "magicrect/diagonal.hpp"
#include "magicrect/existence.hpp"
#include "magicrect/group_constructions.hpp"
#include "magicrect/integer.hpp"
#include "magicrect/io.hpp"

using namespace magicrect;

namespace {

enum Exit { kOk = 0, kNotExists = 1, kUnknown = 2, kUsage = 3, kVerifyFailed = 4 };

struct Config {
    std::string format = "json";
    bool compact = false;
    bool json_errors = false;
    bool deterministic = false;
    bool no_verify = false;
    unsigned jobs = 1;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> budget;
};

struct VerifyFailure {
    std::string what;
};

std::uint64_t oracle_budget(const Config& cfg) {
    if (cfg.budget) return *cfg.budget;
    if (const char* env = std::getenv("MAGICRECT_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            fail(ErrorCode::ParseError, "MAGICRECT_BUDGET is not a number");
        }
    }
    return OracleOptions{}.budget;
}

OracleOptions oracle_options(const Config& cfg) {
    OracleOptions o;
    o.budget = oracle_budget(cfg);
    o.jobs = cfg.deterministic ? 1 : cfg.jobs;
    o.seed = cfg.seed;
    return o;
}

void emit(const MRSInstance& inst, const Config& cfg) {
    if (!cfg.no_verify) {
        auto rep = verify_mrs(inst);
        if (!rep.ok()) throw VerifyFailure{rep.summary()};
    }
    std::cout << export_instance(inst, parse_format(cfg.format), cfg.compact);
    if (cfg.format == "json") std::cout << "\n";
}

int report_error(const Config& cfg, const std::string& kind, const std::string& msg) {
    if (cfg.json_errors)
        std::cerr << nlohmann::json{{"error", kind}, {"message", msg}}.dump() << "\n";
    else
        std::cerr << "magicrect: " << msg << "\n";
    return kind == "verification" ? kVerifyFailed : kUsage;
}

int exit_for(Status s) {
    switch (s) {
        case Status::Exists: return kOk;
        case Status::NotExists: return kNotExists;
        case Status::Unknown: return kUnknown;
    }
    return kUnknown;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Magic rectangle sets over finite abelian groups"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--format", cfg.format, "json|csv|latex|pretty")
        ->check(CLI::IsMember({"json", "csv", "latex", "pretty"}));
    app.add_flag("--compact", cfg.compact, "LaTeX entries as concatenated digits");
    app.add_flag("--json", cfg.json_errors, "errors as JSON on stderr");
    app.add_flag("--deterministic", cfg.deterministic, "single worker");
    app.add_flag("--no-verify", cfg.no_verify, "skip verification of constructed output");
    app.add_option("--jobs", cfg.jobs, "oracle workers")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "seed for randomized oracle restarts");
    app.add_option("--budget", cfg.budget, "oracle node budget (else MAGICRECT_BUDGET)");

    // construct
    auto* construct = app.add_subcommand("construct", "build an instance");
    construct->require_subcommand(1);
    std::int64_t b = 0, c = 1, r = 3, l = 1, h = 0, n = 0, m = 0, s = 0, k = 0, alpha = 2;
    std::string group, kind = "z4z4";
    std::optional<std::int64_t> prime;
    bool cyclic = false;

    auto* int2bc = construct->add_subcommand("int-2bc", "integer MRS(2,b;c)");
    int2bc->add_option("--b", b)->required();
    int2bc->add_option("--c", c)->required();
    int2bc->add_flag("--cyclic", cyclic, "reduce entries into Z_{2bc}");

    auto* r8 = construct->add_subcommand("group-r8", "MRS_gamma(r,8;2) base case");
    r8->add_option("--r", r)->required();
    r8->add_option("--kind", kind, "z4z4|z2z8|z2z2z4|z2z2z2z2");

    auto* thm = construct->add_subcommand("thm-main", "MRS_gamma(2l+1,8;4h+2)");
    thm->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
    thm->add_option("--l", l)->required();
    thm->add_option("--h", h)->required();
    thm->add_option("--group", group)->required();
    thm->add_option("--prime", prime, "odd prime dividing 2l+1");

    auto* oddc = construct->add_subcommand("odd-c", "MRS_gamma(2l+1,2^alpha;c), c odd");
    oddc->add_option("--l", l)->required();
    oddc->add_option("--alpha", alpha)->required();
    oddc->add_option("--c", c)->required();
    oddc->add_option("--group", group)->required();

    auto* diag = construct->add_subcommand("diagonal", "diagonal MRS_gamma(n;k;c)");
    diag->add_option("--n", n)->required();
    diag->add_option("--k", k, "filled diagonals: 2, 2b or 4b")->default_val(2);
    diag->add_option("--c", c)->required();
    diag->add_option("--group", group)->required();

    auto* rect = construct->add_subcommand("rect", "MRS_gamma(m,n;s,k;c) from the partial-array constructions");
    for (auto* sc : {rect}) {
        sc->add_option("--m", m)->required();
        sc->add_option("--n", n)->required();
        sc->add_option("--s", s)->required();
        sc->add_option("--k", k)->required();
        sc->add_option("--c", c)->required();
        sc->add_option("--group", group)->required();
    }

    // verify / export
    std::string in_path;
    auto* verify = app.add_subcommand("verify", "check an instance file");
    verify->add_option("--in", in_path)->required()->check(CLI::ExistingFile);
    auto* exp = app.add_subcommand("export", "re-serialize an instance file");
    exp->add_option("--in", in_path)->required()->check(CLI::ExistingFile);

    // decide
    Params dp;
    bool use_oracle = false, diagonal_only = false;
    auto* dec = app.add_subcommand("decide", "existence verdict");
    dec->add_option("--m", dp.m)->required();
    dec->add_option("--n", dp.n)->required();
    dec->add_option("--s", dp.s)->required();
    dec->add_option("--k", dp.k)->required();
    dec->add_option("--c", dp.c)->required();
    dec->add_option("--group", group)->required();
    dec->add_flag("--oracle", use_oracle, "exhaustive search instead of citations");
    dec->add_flag("--diagonal", diagonal_only, "oracle: diagonal arrays only");

    // sweep
    std::int64_t max_order = 12;
    std::string out_path;
    auto* sweep = app.add_subcommand("sweep", "decide vs oracle on every small case");
    sweep->add_option("--max-order", max_order)->required()->check(CLI::Range(1, 64));
    sweep->add_option("--out", out_path, "report JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        parse_format(cfg.format);
        if (*construct) {
            if (*int2bc) {
                auto inst = build_mrs_2_b_c(b, c);
                emit(cyclic ? to_cyclic_group(inst) : inst, cfg);
            } else if (*r8) {
                emit(base_case_r8_2(r, parse_base_case_kind(kind)), cfg);
            } else if (*thm) {
                PipelineOptions po;
                po.prime = prime;
                emit(theorem_main(l, h, parse_group(group), po), cfg);
            } else if (*oddc) {
                emit(odd_c_construction(l, alpha, c, parse_group(group)), cfg);
            } else if (*diag) {
                const Group g = parse_group(group);
                if (k == 2)
                    emit(diagonal_n2c(n, c, g), cfg);
                else if (k % 4 == 0)
                    emit(diagonal_n_4b_c(n, k / 4, c, g), cfg);
                else if (k % 2 == 0)
                    emit(diagonal_n_2b_c(n, k / 2, c, g), cfg);
                else
                    fail(ErrorCode::UnsupportedParams, "k must be even");
            } else if (*rect) {
                auto v = decide({m, n, s, k, c}, parse_group(group));
                if (!v.witness) {
                    std::cerr << "magicrect: no construction (" << status_name(v.status) << ", " << v.reason
                              << ")\n";
                    return v.status == Status::NotExists ? kNotExists : kUnknown;
                }
                emit(*v.witness, cfg);
            }
            return kOk;
        }
        if (*verify) {
            auto inst = read_instance_file(in_path);
            auto rep = verify_mrs(inst);
            if (cfg.format == "json") {
                nlohmann::json j{{"ok", rep.ok()}, {"shape", rep.shape_ok}, {"entries", rep.entries_ok},
                                 {"counts", rep.counts_ok}, {"sums", rep.sums_ok}, {"claims", rep.claims_ok},
                                 {"messages", rep.messages}};
                if (rep.omega) j["omega"] = element_to_json(*rep.omega);
                if (rep.delta) j["delta"] = element_to_json(*rep.delta);
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << rep.summary() << "\n";
            }
            return rep.ok() ? kOk : kVerifyFailed;
        }
        if (*exp) {
            Config plain = cfg;
            plain.no_verify = true;
            emit(read_instance_file(in_path), plain);
            return kOk;
        }
        if (*dec) {
            const Group g = parse_group(group);
            ExistenceVerdict v;
            if (use_oracle) {
                auto o = oracle_options(cfg);
                o.diagonal = diagonal_only;
                v = oracle_search(dp, g, o);
            } else {
                DecideOptions d;
                v = decide(dp, g, d);
            }
            if (v.witness && !verify_mrs(*v.witness).ok()) throw VerifyFailure{"witness failed verification"};
            auto j = verdict_to_json(v, cfg.format == "json");
            j["params"] = dp.to_string();
            j["group"] = g.to_string();
            if (cfg.format == "json") {
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << status_name(v.status) << " " << v.reason;
                if (!v.detail.empty()) std::cout << " (" << v.detail << ")";
                std::cout << "\n";
                if (v.witness) std::cout << export_instance(*v.witness, parse_format(cfg.format), cfg.compact);
            }
            return exit_for(v.status);
        }
        if (*sweep) {
            auto rep = cross_check(max_order, oracle_options(cfg), [](const CrossCheckEntry& e) {
                if (!e.contradiction) return;
                const auto& p = e.params;
                std::cerr << "contradiction: magicrect decide --oracle --m " << p.m << " --n " << p.n << " --s " << p.s
                          << " --k " << p.k << " --c " << p.c << " --group " << e.group.to_string() << "\n";
            });
            const auto text = report_to_json(rep).dump(2) + "\n";
            if (out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream(out_path) << text;
                std::cout << "cases " << rep.entries.size() << ", contradictions " << rep.contradictions
                          << ", frontier " << rep.frontier << ", unresolved " << rep.unresolved << "\n";
            }
            return rep.witness_failures || rep.contradictions ? kVerifyFailed : kOk;
        }
    } catch (const VerifyFailure& e) {
        return report_error(cfg, "verification", e.what);
    } catch (const MagicRectError& e) {
        if (e.code() == ErrorCode::ConstructionFailed) return report_error(cfg, "verification", e.what());
        return report_error(cfg, error_code_name(e.code()), e.what());
    } catch (const nlohmann::json::exception& e) {
        return report_error(cfg, "ParseError", e.what());
    }
    return kUsage;
}
