/**
 * @file diagonal.cpp
 * @brief Diagonal constructions and the partial-array dispatch.
 */
#include "magicrect/diagonal.hpp"

#include <numeric>

#include "magicrect/group_constructions.hpp"

namespace magicrect {

namespace {

std::size_t to_size(std::int64_t x) { return static_cast<std::size_t>(x); }

void check_order(const Group& g, std::int64_t want, const char* what) {
    if (g.order() != want)
        fail(ErrorCode::InvalidParams, std::string(what) + ": group order " + std::to_string(g.order()) +
                                           ", expected " + std::to_string(want));
}

}  // namespace

MRSInstance diagonal_n2c(std::int64_t n, std::int64_t c, const Group& gamma, const std::optional<Element>& alpha_in) {
    if (n < 2 || c < 1) fail(ErrorCode::InvalidParams, "need n >= 2 and c >= 1");
    check_order(gamma, 2 * n * c, "diagonal_n2c");
    std::optional<Element> alpha = alpha_in;
    if (alpha) {
        if (alpha->group() != gamma || element_order(*alpha) != n)
            fail(ErrorCode::InvalidInput, "alpha must be an element of order n in " + gamma.to_string());
    } else {
        alpha = element_of_order(gamma, n);
    }
    if (!alpha) fail(ErrorCode::NoSuchObject, gamma.to_string() + " has no element of order " + std::to_string(n));

    const auto quo = quotient_with_iso(gamma, cyclic_subgroup(*alpha));
    const Group& psi = quo.q;
    const auto& qf = psi.factors();
    const std::int64_t ex = exponent(psi);
    std::size_t big = qf.size() - 1;
    while (qf[big] != ex) --big;
    const std::int64_t a = ex / 2;
    std::vector<std::int64_t> phi_f;
    for (std::size_t i = 0; i < qf.size(); ++i)
        if (i != big) phi_f.push_back(qf[i]);
    const auto phis = enumerate(Group(phi_f));

    Coords xi(qf.size());
    for (std::size_t i = 0; i < qf.size(); ++i) xi[i] = qf[i] - 1;
    const Element omega = quo.section(psi.element(xi));

    MRSInstance inst;
    inst.params = {n, n, 2, 2, c};
    inst.group = gamma;
    for (std::int64_t t = 0; t < a; ++t)
        for (auto& g : phis) {
            Coords y;
            for (std::size_t i = 0, k = 0; i < qf.size(); ++i) y.push_back(i == big ? t : g[k++]);
            const Element z = quo.section(psi.element(y));
            PFArray::Builder b(to_size(n), to_size(n), gamma);
            for (std::int64_t j = 0; j < n; ++j) {
                const Element v = j * *alpha + z;
                b.set(to_size(j), to_size(j), v);
                b.set(to_size(j), to_size((j + 1) % n), omega - v);
            }
            inst.arrays.push_back(std::move(b).build());
        }
    return certify(inst, "diagonal MRS(n;2;c)");
}

MRSInstance diagonal_n_2b_c(std::int64_t n, std::int64_t b, std::int64_t c, const Group& gamma) {
    if (b < 1 || 2 * b > n || c < 1) fail(ErrorCode::InvalidParams, "need 2 <= 2b <= n");
    check_order(gamma, 2 * n * b * c, "diagonal_n_2b_c");
    const auto base = diagonal_n2c(n, b * c, gamma);
    if (b == 1) return base;
    MRSInstance inst;
    inst.params = {n, n, 2 * b, 2 * b, c};
    inst.group = gamma;
    for (std::int64_t l = 0; l < c; ++l) {
        PFArray::Builder out(to_size(n), to_size(n), gamma);
        for (std::int64_t j = 0; j < b; ++j) {
            const auto& r = base.arrays[to_size(l * b + j)];
            for (std::int64_t i = 0; i < n; ++i) {
                out.set(to_size(i), to_size((i + 2 * j) % n), *r.at(to_size(i), to_size(i)));
                out.set(to_size(i), to_size((i + 2 * j + 1) % n), *r.at(to_size(i), to_size((i + 1) % n)));
            }
        }
        inst.arrays.push_back(std::move(out).build());
    }
    return certify(inst, "diagonal MRS(n;2b;c)");
}

MRSInstance diagonal_n_4b_c(std::int64_t n, std::int64_t b, std::int64_t c, const Group& gamma) {
    if (b < 1 || 4 * b > n || c < 1) fail(ErrorCode::InvalidParams, "need 4 <= 4b <= n");
    check_order(gamma, 4 * n * b * c, "diagonal_n_4b_c");
    const auto seeds = diagonal_n2c(2, n * b * c, gamma);
    MRSInstance inst;
    inst.params = {n, n, 4 * b, 4 * b, c};
    inst.group = gamma;
    auto md = [n](std::int64_t x) { return to_size(mod(x, n)); };
    for (std::int64_t l = 0; l < c; ++l) {
        PFArray::Builder out(to_size(n), to_size(n), gamma);
        for (std::int64_t u = 0; u < b; ++u)
            for (std::int64_t i = 0; i < n; ++i) {
                const auto& sq = seeds.arrays[to_size(l * b * n + u * n + i)];
                out.set(md(i), md(i + 4 * u), *sq.at(0, 0));
                out.set(md(i), md(i + 4 * u + 1), *sq.at(0, 1));
                out.set(md(i + 2), md(i + 4 * u), *sq.at(1, 0));
                out.set(md(i + 2), md(i + 4 * u + 1), *sq.at(1, 1));
            }
        inst.arrays.push_back(std::move(out).build());
    }
    return certify(inst, "diagonal MRS(n;4b;c)");
}

MRSInstance gcd_compose(const MRSInstance& in, std::int64_t m, std::int64_t n, std::int64_t s, std::int64_t k) {
    if (s < 1 || k < 1 || m < 1 || n < 1 || m * s != n * k) fail(ErrorCode::InvalidParams, "need ms = nk");
    const std::int64_t d = std::gcd(s, k), s1 = s / d, k1 = k / d;
    if (m % k1 || n % s1 || m / k1 != n / s1) fail(ErrorCode::InvalidParams, "m/k1 and n/s1 must agree");
    const std::int64_t e = m / k1;
    const auto& p = in.params;
    if (p.m != k1 || p.n != s || p.s != s || p.k != k1 || p.c % e)
        fail(ErrorCode::InvalidParams, "input must be full " + std::to_string(k1) + "x" + std::to_string(s) +
                                           " arrays, a multiple of " + std::to_string(e) + " of them");
    const std::int64_t c = p.c / e;
    MRSInstance out;
    out.params = {m, n, s, k, c};
    out.group = in.group;
    for (std::int64_t b = 0; b < c; ++b) {
        PFArray::Builder arr(to_size(m), to_size(n), in.group);
        for (std::int64_t f = 0; f < e; ++f) {
            const auto& r = in.arrays[to_size(b * e + f)];
            for (std::int64_t i = 0; i < k1; ++i)
                for (std::int64_t j = 0; j < s; ++j)
                    arr.set(to_size(k1 * f + i), to_size((s1 * f + j) % n), *r.raw(to_size(i), to_size(j)));
        }
        out.arrays.push_back(std::move(arr).build());
    }
    return certify(out, "gcd juxtaposition");
}

MRSInstance even_params(std::int64_t m, std::int64_t n, std::int64_t s, std::int64_t k, std::int64_t c,
                        const Group& gamma) {
    if (m % 2 || n % 2 || s % 2 || k % 2) fail(ErrorCode::UnsupportedParams, "m, n, s, k must all be even");
    if (s < 2 || s > n || k < 2 || k > m || m * s != n * k || c < 1)
        fail(ErrorCode::InvalidParams, "need 2 <= s <= n, 2 <= k <= m, ms = nk");
    check_order(gamma, n * k * c, "even_params");
    const std::int64_t M = m / 2, N = n / 2, S = s / 2;
    const std::int64_t g = std::gcd(M, N), t = S / (N / g);
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::int64_t i = 0; i < M; ++i)
        for (std::int64_t j = 0; j < N; ++j)
            if (mod(j - i, g) < t) cells.emplace_back(to_size(i), to_size(j));
    const auto per = static_cast<std::int64_t>(cells.size());  // = nk/4
    const auto seeds = diagonal_n2c(2, per * c, gamma);
    MRSInstance out;
    out.params = {m, n, s, k, c};
    out.group = gamma;
    for (std::int64_t l = 0; l < c; ++l) {
        PFArray::Builder arr(to_size(m), to_size(n), gamma);
        for (std::int64_t h = 0; h < per; ++h) {
            const auto& sq = seeds.arrays[to_size(l * per + h)];
            auto [i, j] = cells[to_size(h)];
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b) arr.set(2 * i + a, 2 * j + b, *sq.raw(a, b));
        }
        out.arrays.push_back(std::move(arr).build());
    }
    return certify(out, "even parameters");
}

MRSInstance diagonal_to_rectangle(const MRSInstance& sq, std::int64_t m, std::int64_t n, std::int64_t s,
                                  std::int64_t k) {
    if (s < 1 || k < 1 || m * s != n * k) fail(ErrorCode::InvalidParams, "need ms = nk");
    const std::int64_t d = std::gcd(s, k), s1 = s / d, k1 = k / d;
    if (m % k1 || n % s1 || m / k1 != n / s1) fail(ErrorCode::InvalidParams, "m/k1 and n/s1 must agree");
    const std::int64_t big = n * k / d;
    const auto& p = sq.params;
    if (p.m != big || p.n != big || p.s != d || p.k != d)
        fail(ErrorCode::InvalidParams, "need a diagonal square of size nk/d with d diagonals");
    MRSInstance out;
    out.params = {m, n, s, k, p.c};
    out.group = sq.group;
    for (auto& a : sq.arrays) {
        auto l0 = diagonal_start(a, to_size(d));
        if (!l0) fail(ErrorCode::InvalidParams, "input array is not diagonal");
        PFArray::Builder arr(to_size(m), to_size(n), sq.group);
        for (std::int64_t i = 0; i < big; ++i)
            for (std::int64_t t = 0; t < d; ++t) {
                const auto col = to_size((i + static_cast<std::int64_t>(*l0) + t) % big);
                const auto r = to_size(i % m), cc = to_size((i + t) % n);
                if (arr.filled(r, cc)) fail(ErrorCode::ConstructionFailed, "re-laying collided");
                arr.set(r, cc, *a.raw(to_size(i), col));
            }
        out.arrays.push_back(std::move(arr).build());
    }
    return certify(out, "diagonal re-laying");
}

std::string mod4_case_name(Mod4Case c) {
    switch (c) {
        case Mod4Case::SK0: return "s=k=0 mod 4";
        case Mod4Case::S2K0: return "s=2, k=0 mod 4";
        case Mod4Case::S0K2: return "s=0, k=2 mod 4";
        case Mod4Case::SK2MNEven: return "s=k=2 mod 4, m and n even";
    }
    return "";
}

std::optional<Mod4Case> mod4_case(std::int64_t m, std::int64_t n, std::int64_t s, std::int64_t k) {
    const auto s4 = s % 4, k4 = k % 4;
    if (s4 == 0 && k4 == 0) return Mod4Case::SK0;
    if (s4 == 2 && k4 == 0) return Mod4Case::S2K0;
    if (s4 == 0 && k4 == 2) return Mod4Case::S0K2;
    if (s4 == 2 && k4 == 2 && m % 2 == 0 && n % 2 == 0) return Mod4Case::SK2MNEven;
    return std::nullopt;
}

MRSInstance mod4_cases(std::int64_t m, std::int64_t n, std::int64_t s, std::int64_t k, std::int64_t c,
                       const Group& gamma) {
    if (s < 2 || s > n || k < 2 || k > m || m * s != n * k || c < 1)
        fail(ErrorCode::InvalidParams, "need 2 <= s <= n, 2 <= k <= m, ms = nk");
    check_order(gamma, n * k * c, "mod4_cases");
    const auto which = mod4_case(m, n, s, k);
    if (!which) fail(ErrorCode::Unsupported, "no mod-4 case covers " + Params{m, n, s, k, c}.to_string());
    const std::int64_t d = std::gcd(s, k);
    switch (*which) {
        case Mod4Case::SK0:
            return diagonal_to_rectangle(diagonal_n_4b_c(n * k / d, d / 4, c, gamma), m, n, s, k);
        case Mod4Case::S2K0: {
            const std::int64_t k1 = k / d, e = m / k1;
            return gcd_compose(even_params(k1, s, s, k1, e * c, gamma), m, n, s, k);
        }
        case Mod4Case::S0K2:
            return certify(transpose_instance(mod4_cases(n, m, k, s, c, gamma)), "transposed case");
        case Mod4Case::SK2MNEven:
            return even_params(m, n, s, k, c, gamma);
    }
    fail(ErrorCode::Unsupported, "unreachable");
}

}  // namespace magicrect
