/**
 * @file group_constructions.cpp
 * @brief Zero-sum blocks, base cases, direct-sum extension, cyclic lifting and pipelines.
 */
#include "magicrect/group_constructions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <regex>
#include <set>

#include "magicrect/fixtures.hpp"
#include "magicrect/io.hpp"

namespace magicrect {

namespace {

bool is_power_of_two(std::int64_t x) { return x >= 1 && (x & (x - 1)) == 0; }

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Sizes 2 and 3 covering n >= 2: a single 3 first when n is odd.
std::vector<std::size_t> chunk_sizes(std::size_t n) {
    if (n < 2) fail(ErrorCode::UnsupportedParams, "dimension must be at least 2");
    std::vector<std::size_t> out;
    if (n % 2) {
        out.push_back(3);
        n -= 3;
    }
    for (; n; n -= 2) out.push_back(2);
    return out;
}

struct ChunkPos {
    std::size_t size, local;
};

std::vector<ChunkPos> chunk_positions(std::size_t n) {
    std::vector<ChunkPos> out;
    for (auto s : chunk_sizes(n))
        for (std::size_t l = 0; l < s; ++l) out.push_back({s, l});
    return out;
}

void require_full(const MRSInstance& inst, const char* op) {
    const auto& p = inst.params;
    if (p.s != p.n || p.k != p.m) fail(ErrorCode::UnsupportedParams, std::string(op) + " needs fully filled arrays");
    if (inst.mode() != EntryMode::Group) fail(ErrorCode::ModeError, std::string(op) + " needs a group-mode instance");
}

/// Primary factors of g split into the 2-part and the odd part.
std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> split_two_part(const Group& g) {
    std::vector<std::int64_t> two, odd;
    for (auto q : primary_factors(g)) (q % 2 == 0 ? two : odd).push_back(q);
    return {two, odd};
}

std::int64_t eval_r_expr(const std::string& e, std::int64_t r) {
    static const std::regex re(R"(^(\d*)(r?)([+-]\d+)?$)");
    std::smatch m;
    if (!std::regex_match(e, m, re)) fail(ErrorCode::ParseError, "bad header expression '" + e + "'");
    std::int64_t v = 0;
    if (m[2].length()) v = (m[1].length() ? std::stoll(m[1]) : 1) * r;
    else v = std::stoll(m[1]);
    if (m[3].length()) v += std::stoll(m[3]);
    return v;
}

const char* fixture_for(BaseCaseKind kind) {
    switch (kind) {
        case BaseCaseKind::Z4Z4: return "header_z4z4";
        case BaseCaseKind::Z2Z8: return "header_z2z8";
        case BaseCaseKind::Z2Z2Z4: return "header_z2z2z4";
        case BaseCaseKind::Z2Z2Z2Z2: return "header_z2z2z2z2";
    }
    return "";
}

}  // namespace

std::int64_t smallest_prime_factor(std::int64_t n) {
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return d;
    return n;
}

MRSInstance certify(MRSInstance inst, const std::string& what) {
    auto rep = verify_mrs(inst);
    if (!rep.ok()) fail(ErrorCode::ConstructionFailed, what + " failed verification: " + rep.summary());
    inst.omega = rep.omega;
    inst.delta = rep.delta;
    return inst;
}

MRSInstance stack_arrays(const MRSInstance& inst, std::int64_t per) {
    if (per < 1 || inst.params.c % per) fail(ErrorCode::InvalidParams, "cannot stack in groups of " + std::to_string(per));
    if (per == 1) return inst;
    MRSInstance out;
    out.group = inst.group;
    out.params = {inst.params.m * per, inst.params.n, inst.params.s, inst.params.k * per, inst.params.c / per};
    for (std::int64_t t = 0; t < out.params.c; ++t) {
        std::vector<PFArray> blocks(inst.arrays.begin() + t * per, inst.arrays.begin() + (t + 1) * per);
        out.arrays.push_back(juxtapose_vertical(blocks));
    }
    return certify(out, "vertical juxtaposition");
}

// ---------------------------------------------------------------- zero-sum blocks

void validate_omega(const OmegaSet& omega) {
    const auto q = omega.modulus;
    if (q < 2) fail(ErrorCode::InvalidOmega, "modulus must be at least 2");
    std::set<std::int64_t> s;
    for (auto x : omega.elements) {
        if (x < 0 || x >= q) fail(ErrorCode::InvalidOmega, std::to_string(x) + " is not a residue mod " + std::to_string(q));
        if ((2 * x) % q == 0) fail(ErrorCode::InvalidOmega, std::to_string(x) + " has order at most 2");
        if (!s.insert(x).second) fail(ErrorCode::InvalidOmega, std::to_string(x) + " repeated");
    }
    for (auto x : s)
        if (!s.count((q - x) % q)) fail(ErrorCode::InvalidOmega, "not closed under negation at " + std::to_string(x));
}

std::vector<PFArray> zero_sum_blocks(const OmegaSet& omega, const Group& psi) {
    validate_omega(omega);
    if (psi.order() < 4 || !is_power_of_two(psi.order()))
        fail(ErrorCode::UnsupportedParams, "psi must be a 2-group of order at least 4");
    const auto& pf = psi.factors();
    const auto t = static_cast<std::size_t>(std::max_element(pf.begin(), pf.end()) - pf.begin());
    const std::int64_t two_b = pf[t], b = two_b / 2;
    std::vector<std::int64_t> phi_f;
    for (std::size_t i = 0; i < pf.size(); ++i)
        if (i != t) phi_f.push_back(pf[i]);
    const Group phi(phi_f);
    const auto phis = enumerate(phi);
    const std::int64_t h = phi.order();

    Group full = direct_sum(Group({omega.modulus}), psi);
    std::vector<std::int64_t> reps;
    for (auto x : omega.elements)
        if (2 * x < omega.modulus) reps.push_back(x);
    std::sort(reps.begin(), reps.end());

    std::vector<PFArray> out;
    const auto width = static_cast<std::size_t>(two_b * h);
    for (auto x : reps) {
        PFArray::Builder blk(2, width, full);
        for (std::int64_t j = 0; j < two_b; ++j)
            for (std::int64_t gi = 0; gi < h; ++gi) {
                Coords c{x};
                std::size_t k = 0;
                for (std::size_t i = 0; i < pf.size(); ++i) c.push_back(i == t ? j : phis[gi][k++]);
                auto e = full.element(c);
                auto col = static_cast<std::size_t>(j * h + gi);
                blk.set(j < b ? 0 : 1, col, e);
                blk.set(j < b ? 1 : 0, col, -e);
            }
        out.push_back(std::move(blk).build());
    }
    return out;
}

// ---------------------------------------------------------------- base cases MRS(r,8;2)

BaseCaseKind parse_base_case_kind(const std::string& s) {
    std::string t;
    for (char ch : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (t == "z4z4") return BaseCaseKind::Z4Z4;
    if (t == "z2z8") return BaseCaseKind::Z2Z8;
    if (t == "z2z2z4") return BaseCaseKind::Z2Z2Z4;
    if (t == "z2z2z2z2") return BaseCaseKind::Z2Z2Z2Z2;
    fail(ErrorCode::ParseError, "unknown base case kind '" + s + "'");
}

std::string base_case_kind_name(BaseCaseKind k) {
    switch (k) {
        case BaseCaseKind::Z4Z4: return "z4z4";
        case BaseCaseKind::Z2Z8: return "z2z8";
        case BaseCaseKind::Z2Z2Z4: return "z2z2z4";
        case BaseCaseKind::Z2Z2Z2Z2: return "z2z2z2z2";
    }
    return "";
}

std::vector<std::int64_t> base_case_factors(std::int64_t r, BaseCaseKind kind) {
    switch (kind) {
        case BaseCaseKind::Z4Z4: return {4 * r, 4};
        case BaseCaseKind::Z2Z8: return {2 * r, 8};
        case BaseCaseKind::Z2Z2Z4: return {2 * r, 2, 4};
        case BaseCaseKind::Z2Z2Z2Z2: return {2 * r, 2, 2, 2};
    }
    return {};
}

std::vector<PFArray> base_case_headers(std::int64_t r, BaseCaseKind kind) {
    const auto j = fixture_json(fixture_for(kind));
    const Group g(base_case_factors(r, kind));
    std::vector<PFArray> out;
    for (auto& arr : j.at("arrays")) {
        const std::size_t rows = arr.size(), cols = arr[0].size();
        PFArray::Builder b(rows, cols, g);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k) {
                const auto& cell = arr[i][k];
                Coords c{eval_r_expr(cell[0].get<std::string>(), r)};
                for (std::size_t t = 1; t < cell.size(); ++t) c.push_back(cell[t].get<std::int64_t>());
                b.set(i, k, c);
            }
        out.push_back(std::move(b).build());
    }
    return out;
}

MRSInstance base_case_r8_2(std::int64_t r, BaseCaseKind kind) {
    if (r < 3 || r % 2 == 0) fail(ErrorCode::UnsupportedParams, "r must be odd and at least 3");
    if (r == 3 && kind != BaseCaseKind::Z2Z2Z2Z2) {
        const char* name = kind == BaseCaseKind::Z4Z4 ? "base_z12_z4" : kind == BaseCaseKind::Z2Z8 ? "base_z6_z8" : "base_z6_z2_z4";
        return certify(fixture_instance(name), "base case fixture");
    }
    return certify(complete_base_case(r, kind, base_case_headers(r, kind)), "base case MRS(r,8;2)");
}

MRSInstance complete_base_case(std::int64_t r, BaseCaseKind kind, const std::vector<PFArray>& headers) {
    const Group g(base_case_factors(r, kind));
    const std::int64_t mod = g.factors()[0];
    std::set<std::int64_t> used;
    for (auto& h : headers)
        for (auto& e : h.entries()) used.insert(e[0]);
    OmegaSet omega{mod, {}};
    for (std::int64_t x = 0; x < mod; ++x)
        if (!used.count(x)) omega.elements.push_back(x);
    const Group psi(std::vector<std::int64_t>(g.factors().begin() + 1, g.factors().end()));
    auto blocks = zero_sum_blocks(omega, psi);

    // rows of width 8: pairs of 2x4 blocks for Z4Z4, single 2x8 blocks otherwise
    std::vector<PFArray> rows;
    if (kind == BaseCaseKind::Z4Z4) {
        for (std::size_t i = 0; i + 1 < blocks.size(); i += 2) rows.push_back(juxtapose_horizontal({blocks[i], blocks[i + 1]}));
    } else {
        rows = blocks;
    }
    const std::size_t per = static_cast<std::size_t>(r - static_cast<std::int64_t>(headers[0].rows())) / 2;
    if (rows.size() != 2 * per) fail(ErrorCode::ConstructionFailed, "unexpected number of completion blocks");

    MRSInstance inst;
    inst.params = {r, 8, 8, r, 2};
    inst.group = g;
    for (std::size_t t = 0; t < 2; ++t) {
        std::vector<PFArray> parts{headers[t]};
        for (std::size_t u = 0; u < per; ++u) parts.push_back(rows[t * per + u]);
        inst.arrays.push_back(juxtapose_vertical(parts));
    }
    return inst;
}

// ---------------------------------------------------------------- extension by Phi

namespace {

/// Orthomorphism of a group of order n given by its addition table; searched by DFS.
std::optional<std::vector<std::int64_t>> find_orthomorphism(const Group& g, std::uint64_t budget, std::uint64_t seed = 0) {
    const auto n = g.order();
    std::vector<std::vector<std::int64_t>> addt(n, std::vector<std::int64_t>(n));
    for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = 0; b < n; ++b) addt[a][b] = g.index_of((g.at(a) + g.at(b)).coords());
    std::vector<std::int64_t> theta(n, -1), order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    if (seed) std::shuffle(order.begin(), order.end(), rng);
    std::vector<char> used(n, 0), used_sum(n, 0);
    std::uint64_t nodes = 0;
    // most-constrained domain element first
    std::function<bool(std::int64_t)> dfs = [&](std::int64_t placed) -> bool {
        if (placed == n) return true;
        if (++nodes > budget) return false;
        std::int64_t best = -1, best_count = n + 1;
        for (auto i : order) {
            if (theta[i] >= 0) continue;
            std::int64_t cnt = 0;
            for (std::int64_t v = 0; v < n; ++v) cnt += !used[v] && !used_sum[addt[i][v]];
            if (cnt < best_count) best = i, best_count = cnt;
            if (cnt == 0) return false;
        }
        for (auto v : order) {
            auto s = addt[best][v];
            if (used[v] || used_sum[s]) continue;
            used[v] = used_sum[s] = 1;
            theta[best] = v;
            if (dfs(placed + 1)) return true;
            used[v] = used_sum[s] = 0;
            theta[best] = -1;
            if (nodes > budget) return false;
        }
        return false;
    };
    if (dfs(0)) return theta;
    return std::nullopt;
}

}  // namespace

std::vector<std::vector<std::int64_t>> zero_sum_permutation_triple(const Group& phi) {
    const auto n = phi.order();
    std::vector<std::vector<std::int64_t>> pi(3, std::vector<std::int64_t>(n));
    std::vector<std::int64_t> theta(n);
    if (n % 2 == 1) {
        std::iota(theta.begin(), theta.end(), 0);
    } else {
        if (!in_upsilon(phi)) fail(ErrorCode::PhiNotInUpsilon, phi.to_string() + " has exactly one involution");
        // identity on the odd part, searched on the 2-part
        auto [two, odd] = split_two_part(phi);
        const Group tg(two), og(odd);
        auto t_theta = find_orthomorphism(tg, 50000000ULL);
        if (!t_theta) fail(ErrorCode::ConstructionFailed, "no orthomorphism found for " + tg.to_string());
        auto prim = direct_sum(tg, og);
        auto to_p = isomorphism(phi, prim), from_p = isomorphism(prim, phi);
        for (std::int64_t i = 0; i < n; ++i) {
            auto y = to_p(phi.at(i)).coords();
            Coords tc(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(two.size()));
            auto mapped = tg.at((*t_theta)[tg.index_of(tc)]).coords();
            std::copy(mapped.begin(), mapped.end(), y.begin());
            theta[i] = phi.index_of(from_p(prim.element(y)).coords());
        }
    }
    for (std::int64_t i = 0; i < n; ++i) {
        auto x = phi.at(i), tx = phi.at(theta[i]);
        pi[0][i] = i;
        pi[1][i] = theta[i];
        pi[2][i] = phi.index_of((-(x + tx)).coords());
    }
    return pi;
}

MRSInstance extend_direct_sum(const MRSInstance& inst, const Group& phi) {
    require_full(inst, "extend_direct_sum");
    if (phi.order() == 1) return inst;
    if (!in_upsilon(phi)) fail(ErrorCode::PhiNotInUpsilon, phi.to_string() + " is not of odd order and has one involution");
    const auto pi = zero_sum_permutation_triple(phi);
    const auto rows = chunk_positions(static_cast<std::size_t>(inst.params.m));
    const auto cols = chunk_positions(static_cast<std::size_t>(inst.params.n));
    const Group out_g = direct_sum(inst.group, phi);
    const auto n_phi = phi.order();

    auto phi_value = [&](std::size_t i, std::size_t j, std::int64_t t) -> Element {
        const auto& R = rows[i];
        const auto& C = cols[j];
        if (R.size == 2 && C.size == 2) {
            auto e = phi.at(t);
            return R.local == C.local ? e : -e;
        }
        if (R.size == 3 && C.size == 3) return phi.at(pi[(R.local + C.local) % 3][t]);
        // a 2x3 or 3x2 block: the length-3 side carries the triple, the other side negates it
        const std::size_t along = R.size == 2 ? C.local : R.local;
        const std::size_t across = R.size == 2 ? R.local : C.local;
        auto e = phi.at(pi[along][t]);
        return across == 0 ? e : -e;
    };

    MRSInstance out;
    out.params = inst.params;
    out.params.c = inst.params.c * n_phi;
    out.group = out_g;
    for (auto& a : inst.arrays)
        for (std::int64_t t = 0; t < n_phi; ++t) {
            PFArray::Builder b(a.rows(), a.cols(), out_g);
            for (std::size_t i = 0; i < a.rows(); ++i)
                for (std::size_t j = 0; j < a.cols(); ++j) b.set(i, j, concat(*a.at(i, j), phi_value(i, j, t), out_g));
            out.arrays.push_back(std::move(b).build());
        }
    return certify(out, "direct-sum extension");
}

// ---------------------------------------------------------------- cyclic lifting

std::vector<std::vector<std::vector<std::int64_t>>> translation_layers(std::size_t a, std::size_t b, std::int64_t h) {
    if (h < 1 || h % 2 == 0) fail(ErrorCode::InvalidDivisor, "translation layers need odd h");
    const auto rows = chunk_positions(a), cols = chunk_positions(b);
    const std::int64_t m = (h - 1) / 2;
    auto P = [&](std::size_t which, std::int64_t t) -> std::int64_t {
        const std::int64_t p1 = t, p2 = (t + m) % h;
        switch (which) {
            case 0: return p1 + 1;
            case 1: return p2 + 1;
            default: return 3 * m - p1 - p2 + 1;
        }
    };
    auto comp = [h](std::int64_t u) { return h + 1 - u; };
    std::vector<std::vector<std::vector<std::int64_t>>> layers(
        static_cast<std::size_t>(h), std::vector<std::vector<std::int64_t>>(a, std::vector<std::int64_t>(b)));
    for (std::int64_t t = 0; t < h; ++t)
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t j = 0; j < b; ++j) {
                const auto& R = rows[i];
                const auto& C = cols[j];
                std::int64_t v;
                if (R.size == 2 && C.size == 2) v = R.local == C.local ? t + 1 : comp(t + 1);
                else if (R.size == 3 && C.size == 3) v = P((R.local + C.local) % 3, t);
                else {
                    const std::size_t along = R.size == 2 ? C.local : R.local;
                    const std::size_t across = R.size == 2 ? R.local : C.local;
                    v = across == 0 ? P(along, t) : comp(P(along, t));
                }
                layers[static_cast<std::size_t>(t)][i][j] = v;
            }
    return layers;
}

MRSInstance lift_cyclic(const MRSInstance& inst, std::int64_t h, std::optional<std::size_t> component) {
    require_full(inst, "lift_cyclic");
    const auto& f = inst.group.factors();
    if (f.empty()) fail(ErrorCode::InvalidInput, "lift_cyclic needs a nontrivial group");
    const std::size_t comp = component.value_or(f.size() - 1);
    if (comp >= f.size()) fail(ErrorCode::IndexError, "component " + std::to_string(comp));
    if (h < 1) fail(ErrorCode::InvalidDivisor, "h must be positive");
    const std::int64_t big = f[comp] * h;
    if (big % 2 == 0) fail(ErrorCode::InvalidDivisor, "h must divide an odd cyclic order; got Z" + std::to_string(big));
    if (h == 1) return certify(inst, "lift by h=1");

    auto nf = f;
    nf[comp] = big;
    const Group out_g(nf);
    const auto layers = translation_layers(static_cast<std::size_t>(inst.params.m), static_cast<std::size_t>(inst.params.n), h);
    MRSInstance out;
    out.params = inst.params;
    out.params.c = inst.params.c * h;
    out.group = out_g;
    for (auto& a : inst.arrays)
        for (std::int64_t t = 0; t < h; ++t) {
            PFArray::Builder b(a.rows(), a.cols(), out_g);
            for (std::size_t i = 0; i < a.rows(); ++i)
                for (std::size_t j = 0; j < a.cols(); ++j) {
                    Coords c = *a.raw(i, j);
                    c[comp] = c[comp] * h + layers[static_cast<std::size_t>(t)][i][j];
                    b.set(i, j, c);
                }
            out.arrays.push_back(std::move(b).build());
        }
    return certify(out, "cyclic lift");
}

// ---------------------------------------------------------------- MRS(p, 2^alpha; 1)

namespace {

/// Zero-sum 3 x |T| array over {-1,0,1} x T: each column has x-coefficients {0,1,-1},
/// each row equally many +1 and -1, and each coefficient class carries T exactly once.
/// Cells are (coefficient, T-index).
using HeaderCell = std::pair<int, std::int64_t>;
using Header = std::vector<std::vector<HeaderCell>>;

std::optional<Header> header_from_orthomorphism(const Group& t, std::uint64_t budget) {
    const auto n = t.order();
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
        auto theta = find_orthomorphism(t, budget, seed);
        if (!theta) continue;
        std::vector<std::int64_t> psi(n), psi_inv(n), kappa(n);
        for (std::int64_t i = 0; i < n; ++i) {
            psi[i] = t.index_of((-(t.at(i) + t.at((*theta)[i]))).coords());
            psi_inv[psi[i]] = i;
        }
        for (std::int64_t i = 0; i < n; ++i) kappa[i] = psi_inv[(*theta)[i]];
        // cycles of kappa; need a union of cycles of total size n/2
        std::vector<std::vector<std::int64_t>> cycles;
        std::vector<char> seen(n, 0);
        for (std::int64_t i = 0; i < n; ++i) {
            if (seen[i]) continue;
            std::vector<std::int64_t> cyc;
            for (auto x = i; !seen[x]; x = kappa[x]) {
                seen[x] = 1;
                cyc.push_back(x);
            }
            cycles.push_back(cyc);
        }
        const auto half = static_cast<std::size_t>(n / 2);
        std::vector<std::vector<int>> reach(cycles.size() + 1, std::vector<int>(half + 1, -1));
        reach[0][0] = 0;
        for (std::size_t c = 0; c < cycles.size(); ++c)
            for (std::size_t s = 0; s <= half; ++s) {
                if (reach[c][s] < 0) continue;
                reach[c + 1][s] = 0;
                if (s + cycles[c].size() <= half) reach[c + 1][s + cycles[c].size()] = 1;
            }
        if (reach[cycles.size()][half] < 0) continue;
        std::vector<char> in_e(n, 0);
        for (std::size_t c = cycles.size(), s = half; c > 0; --c) {
            // walk back: prefer skipping the cycle when possible
            if (reach[c - 1][s] >= 0) continue;
            for (auto x : cycles[c - 1]) in_e[x] = 1;
            s -= cycles[c - 1].size();
        }
        Header hd(3, std::vector<HeaderCell>(static_cast<std::size_t>(n)));
        for (std::int64_t i = 0; i < n; ++i) {
            const int eps = in_e[i] ? 1 : -1;
            hd[0][i] = {0, i};
            hd[1][i] = {eps, (*theta)[i]};
            hd[2][i] = {-eps, psi[i]};
        }
        return hd;
    }
    return std::nullopt;
}

/// Cell-by-cell DFS for an R x |T| header over {-h..h} x T (R = 2h+1). Coefficient sums are
/// taken modulo `modulus` when it is nonzero and as plain integers otherwise.
std::optional<Header> header_by_search(const Group& t, int rows, std::int64_t modulus, std::uint64_t budget) {
    const auto n = t.order();
    const int h = (rows - 1) / 2;
    std::vector<std::vector<std::int64_t>> addt(n, std::vector<std::int64_t>(n));
    std::vector<std::int64_t> negt(n);
    for (std::int64_t a = 0; a < n; ++a) {
        negt[a] = t.index_of((-t.at(a)).coords());
        for (std::int64_t b = 0; b < n; ++b) addt[a][b] = t.index_of((t.at(a) + t.at(b)).coords());
    }
    auto coef_for = [&](std::int64_t x) -> int {  // index into -h..h, or -1
        if (modulus) {
            for (int ci = 0; ci < rows; ++ci)
                if (mod(ci - h - x, modulus) == 0) return ci;
            return -1;
        }
        return std::abs(x) <= h ? static_cast<int>(x) + h : -1;
    };
    const auto R = static_cast<std::size_t>(rows), N = static_cast<std::size_t>(n);
    std::vector<std::vector<char>> used(R, std::vector<char>(N, 0));
    std::vector<std::int64_t> rx(R, 0), ry(R, 0), cx(N, 0), cy(N, 0);
    Header hd(R, std::vector<HeaderCell>(N));
    std::uint64_t nodes = 0;
    std::function<bool(std::size_t)> dfs = [&](std::size_t pos) -> bool {
        if (pos == R * N) return true;
        if (++nodes > budget) return false;
        const std::size_t i = pos / N, j = pos % N;
        auto place = [&](int ci, std::int64_t y) -> bool {
            if (used[ci][y]) return false;
            const int x = ci - h;
            used[ci][y] = 1;
            rx[i] += x, cx[j] += x;
            const auto sry = ry[i], scy = cy[j];
            ry[i] = addt[ry[i]][y], cy[j] = addt[cy[j]][y];
            hd[i][j] = {x, y};
            if (dfs(pos + 1)) return true;
            used[ci][y] = 0;
            rx[i] -= x, cx[j] -= x;
            ry[i] = sry, cy[j] = scy;
            return false;
        };
        const bool last_col = j + 1 == N, last_row = i + 1 == R;
        if (last_col || last_row) {
            int ci;
            std::int64_t y;
            if (last_col) ci = coef_for(-rx[i]), y = negt[ry[i]];
            else ci = coef_for(-cx[j]), y = negt[cy[j]];
            if (ci < 0) return false;
            if (last_col && last_row) {
                const int c2 = coef_for(-cx[j]);
                if (c2 != ci || negt[cy[j]] != y) return false;
            }
            return place(ci, y);
        }
        for (int ci = 0; ci < rows; ++ci)
            for (std::int64_t y = 0; y < n; ++y) {
                if (place(ci, y)) return true;
                if (nodes > budget) return false;
            }
        return false;
    };
    if (dfs(0)) return hd;
    return std::nullopt;
}

/// Headers with integer coefficient sums, found once with header_by_search and kept here
/// since the search takes seconds. Keyed by the 2-part's factor list; y is a lex index.
std::optional<Header> stored_header(const std::vector<std::int64_t>& two) {
    static const std::map<std::vector<std::int64_t>, std::vector<std::vector<HeaderCell>>> table{
        {{2, 2, 2},
         {{{-1, 0}, {-1, 1}, {-1, 2}, {-1, 3}, {1, 0}, {1, 1}, {1, 4}, {1, 5}},
          {{0, 2}, {0, 6}, {0, 1}, {0, 5}, {0, 4}, {0, 7}, {0, 3}, {0, 0}},
          {{1, 2}, {1, 7}, {1, 3}, {1, 6}, {-1, 4}, {-1, 6}, {-1, 7}, {-1, 5}}}},
        {{2, 4},
         {{{-1, 0}, {-1, 1}, {-1, 2}, {-1, 3}, {1, 0}, {1, 1}, {1, 4}, {1, 5}},
          {{0, 1}, {0, 4}, {0, 0}, {0, 7}, {0, 5}, {0, 6}, {0, 2}, {0, 3}},
          {{1, 3}, {1, 7}, {1, 2}, {1, 6}, {-1, 7}, {-1, 5}, {-1, 6}, {-1, 4}}}},
        // five rows: no three-row header exists for Z2+Z2
        {{2, 2},
         {{{-2, 0}, {-2, 1}, {2, 0}, {2, 1}},
          {{-2, 2}, {1, 0}, {0, 0}, {1, 2}},
          {{0, 3}, {1, 1}, {0, 2}, {-1, 0}},
          {{2, 2}, {1, 3}, {-2, 3}, {-1, 2}},
          {{2, 3}, {-1, 3}, {0, 1}, {-1, 1}}}},
    };
    auto it = table.find(two);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

}  // namespace

MRSInstance base_case_p_2alpha(std::int64_t p, const Group& psi, std::uint64_t budget) {
    if (p < 3 || !is_prime(p)) fail(ErrorCode::UnsupportedParams, "p must be an odd prime");
    const auto ord = psi.order();
    if (ord % p != 0 || !is_power_of_two(ord / p) || ord / p < 4)
        fail(ErrorCode::UnsupportedParams, "psi must have order p * 2^alpha with alpha >= 2");
    if (involution_count(psi) < 2) fail(ErrorCode::NoSuchObject, psi.to_string() + " has exactly one involution");

    auto [two, odd] = split_two_part(psi);
    const Group t(two);
    const std::int64_t n = t.order();
    if (two.size() >= 4) {
        // Z_p + T1 base, extended by the noncyclic rest T2, arrays laid side by side
        const std::vector<std::int64_t> t1(two.begin(), two.begin() + 2), t2(two.begin() + 2, two.end());
        auto w1 = t1;
        w1.insert(w1.begin(), p);
        auto ext = extend_direct_sum(base_case_p_2alpha(p, Group(w1), budget), Group(t2));
        MRSInstance inst;
        inst.params = {p, n, n, p, 1};
        inst.group = ext.group;
        inst.arrays.push_back(juxtapose_horizontal(ext.arrays));
        inst = certify(inst, "side-by-side extension");
        return certify(map_instance(inst, isomorphism(inst.group, psi)), "transport to psi");
    }
    std::optional<Header> hd = stored_header(two);
    if (hd && static_cast<std::int64_t>(hd->size()) > p) hd.reset();
    // when the header is the whole array its coefficient sums only matter mod p
    if (!hd) hd = header_by_search(t, 3, p == 3 ? 3 : 0, std::min<std::uint64_t>(budget, 200000ULL));
    if (!hd && n >= 8) hd = header_from_orthomorphism(t, std::min<std::uint64_t>(budget, 10000000ULL));
    if (!hd) hd = header_by_search(t, 3, p == 3 ? 3 : 0, budget);
    if (!hd && p >= 5) hd = header_by_search(t, 5, p == 5 ? 5 : 0, budget);
    if (!hd) fail(ErrorCode::BudgetExceeded, "no header found within budget for " + t.to_string());
    const auto rows = hd->size();

    // over Z_p + T: header rows, then one zero-sum 2-row block per pair {x,-x} not in the header
    const Group work = direct_sum(Group({p}), t);
    PFArray::Builder head(rows, static_cast<std::size_t>(n), work);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
            auto [coef, y] = (*hd)[r][j];
            Coords c{mod(coef, p)};
            auto yc = t.at(y).coords();
            c.insert(c.end(), yc.begin(), yc.end());
            head.set(r, j, c);
        }
    std::vector<PFArray> parts{std::move(head).build()};
    OmegaSet omega{p, {}};
    const auto hh = static_cast<std::int64_t>(rows / 2);
    for (std::int64_t x = hh + 1; x <= p - hh - 1; ++x) omega.elements.push_back(x);
    for (auto& blk : zero_sum_blocks(omega, t)) parts.push_back(blk);

    MRSInstance inst;
    inst.params = {p, n, n, p, 1};
    inst.group = work;
    inst.arrays.push_back(juxtapose_vertical(parts));
    inst = certify(inst, "MRS(p,2^alpha;1) over Z_p + T");
    return certify(map_instance(inst, isomorphism(work, psi)), "transport to psi");
}

// ---------------------------------------------------------------- pipelines

namespace {

/// Removes one occurrence of q from v.
std::vector<std::int64_t> without(std::vector<std::int64_t> v, std::int64_t q) {
    v.erase(std::find(v.begin(), v.end(), q));
    return v;
}

/// Largest power of p among the odd primary factors.
std::int64_t largest_p_component(const std::vector<std::int64_t>& odd, std::int64_t p) {
    std::int64_t best = 0;
    for (auto q : odd)
        if (q % p == 0 && smallest_prime_factor(q) == p) best = std::max(best, q);
    return best;
}

}  // namespace

MRSInstance theorem_main(std::int64_t l, std::int64_t h, const Group& gamma, const PipelineOptions& opt) {
    if (l < 1 || h < 0) fail(ErrorCode::InvalidParams, "need l >= 1 and h >= 0");
    const std::int64_t a = 2 * l + 1, c = 4 * h + 2;
    if (gamma.order() != 16 * a * (2 * h + 1))
        fail(ErrorCode::InvalidParams, "group order must be 16(2l+1)(2h+1) = " + std::to_string(16 * a * (2 * h + 1)));
    if (involution_count(gamma) == 1) fail(ErrorCode::NoSuchObject, gamma.to_string() + " has exactly one involution");

    auto [two, odd] = split_two_part(gamma);
    BaseCaseKind kind;
    if (two == std::vector<std::int64_t>{4, 4}) kind = BaseCaseKind::Z4Z4;
    else if (two == std::vector<std::int64_t>{2, 8}) kind = BaseCaseKind::Z2Z8;
    else if (two == std::vector<std::int64_t>{2, 2, 4}) kind = BaseCaseKind::Z2Z2Z4;
    else kind = BaseCaseKind::Z2Z2Z2Z2;

    const std::int64_t q1 = opt.prime.value_or(smallest_prime_factor(a));
    if (q1 < 3 || !is_prime(q1) || a % q1) fail(ErrorCode::InvalidParams, "chosen prime must divide 2l+1");
    const std::int64_t qa = largest_p_component(odd, q1);

    auto base = base_case_r8_2(q1, kind);
    auto delta_q = two;
    delta_q.push_back(q1);
    auto inst = map_instance(base, isomorphism(base.group, Group(delta_q)));
    inst = lift_cyclic(inst, qa / q1);
    auto rest = without(odd, qa);
    if (!rest.empty()) inst = extend_direct_sum(inst, Group(rest));
    inst = certify(map_instance(inst, isomorphism(inst.group, gamma)), "transport to gamma");
    auto out = stack_arrays(inst, a / q1);
    if (out.params != Params{a, 8, 8, a, c}) fail(ErrorCode::ConstructionFailed, "unexpected parameters " + out.params.to_string());
    return out;
}

MRSInstance odd_c_construction(std::int64_t l, std::int64_t alpha, std::int64_t c, const Group& gamma,
                               const PipelineOptions& opt) {
    if (l < 1) fail(ErrorCode::InvalidParams, "need l >= 1");
    if (alpha < 2) fail(ErrorCode::UnsupportedParams, "need alpha >= 2");
    if (c < 1 || c % 2 == 0) fail(ErrorCode::UnsupportedParams, "c must be odd");
    const std::int64_t a = 2 * l + 1, b = std::int64_t{1} << alpha;
    if (gamma.order() != a * b * c) fail(ErrorCode::InvalidParams, "group order must be (2l+1) 2^alpha c");
    if (!in_upsilon(gamma)) fail(ErrorCode::NoSuchObject, gamma.to_string() + " has exactly one involution");

    auto [two, odd] = split_two_part(gamma);
    const std::int64_t p = opt.prime.value_or(smallest_prime_factor(a));
    if (p < 3 || !is_prime(p) || a % p) fail(ErrorCode::InvalidParams, "chosen prime must divide 2l+1");
    const std::int64_t pb = largest_p_component(odd, p);

    auto psi_f = two;
    psi_f.insert(psi_f.begin(), p);
    auto inst = base_case_p_2alpha(p, Group(psi_f), opt.budget);
    inst = lift_cyclic(inst, pb / p, 0);
    auto rest = without(odd, pb);
    if (!rest.empty()) inst = extend_direct_sum(inst, Group(rest));
    inst = certify(map_instance(inst, isomorphism(inst.group, gamma)), "transport to gamma");
    return stack_arrays(inst, a / p);
}

}  // namespace magicrect
