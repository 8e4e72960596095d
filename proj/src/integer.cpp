/**
 * @file integer.cpp
 * @brief Integer MRS(2,b;c).
 */
#include "magicrect/integer.hpp"

namespace magicrect {

namespace {

PFArray int_grid(const std::vector<std::vector<std::int64_t>>& rows) {
    PFArray::Builder b(rows.size(), rows[0].size(), Group::integers());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) b.set(i, j, Coords{rows[i][j]});
    return std::move(b).build();
}

}  // namespace

PFArray int_block_q(std::int64_t b, std::int64_t c, std::int64_t i) {
    const auto N = 2 * b * c;
    return int_grid({{4 * i + 1, N - 4 * i - 1, N - 4 * i - 2, 4 * i + 4},
                     {N - 4 * i, 4 * i + 2, 4 * i + 3, N - 4 * i - 3}});
}

PFArray int_block_s(std::int64_t b, std::int64_t c, std::int64_t j) {
    const auto lo = (b - 6) * c, hi = (b + 6) * c;
    return int_grid({{lo + 4 * j + 1, hi - 4 * j - 1, lo + 4 * j + 3, hi - 4 * j - 3},
                     {hi - 4 * j, lo + 4 * j + 2, hi - 4 * j - 2, lo + 4 * j + 4}});
}

PFArray int_block_t(std::int64_t b, std::int64_t c, std::int64_t index) {
    const auto hi = (b + 2) * c, lo = (b - 2) * c, h = index / 2;
    if (index % 2 == 0) return int_grid({{hi - 4 * h, lo + 4 * h + 3}, {lo + 4 * h + 1, hi - 4 * h - 2}});
    return int_grid({{hi - 4 * h - 1, lo + 4 * h + 4}, {lo + 4 * h + 2, hi - 4 * h - 3}});
}

PFArray int_block_t_prime(std::int64_t b, std::int64_t c) {
    return int_grid({{b * c + 2, b * c + 1}, {b * c - 1, b * c}});
}

MRSInstance build_mrs_2_b_c(std::int64_t b, std::int64_t c) {
    if (b < 4 || b % 2 != 0 || c < 1)
        fail(ErrorCode::UnsupportedParams, "need even b >= 4 and c >= 1, got b=" + std::to_string(b) + " c=" + std::to_string(c));
    MRSInstance inst;
    inst.params = {2, b, b, 2, c};
    inst.group = Group::integers();
    std::int64_t next_q = 0;
    for (std::int64_t t = 0; t < c; ++t) {
        std::vector<PFArray> row;
        if (b % 4 == 0) {
            for (std::int64_t u = 0; u < b / 4; ++u) row.push_back(int_block_q(b, c, next_q++));
        } else {
            for (std::int64_t u = 0; u < (b - 6) / 4; ++u) row.push_back(int_block_q(b, c, next_q++));
            row.push_back(int_block_s(b, c, t));
            // odd c: T' first, then T_0, T_1, ...
            if (c % 2 == 1) row.push_back(t == 0 ? int_block_t_prime(b, c) : int_block_t(b, c, t - 1));
            else row.push_back(int_block_t(b, c, t));
        }
        inst.arrays.push_back(juxtapose_horizontal(row));
    }
    inst.omega = Element(Group::integers(), {b * (2 * b * c + 1) / 2});
    inst.delta = Element(Group::integers(), {2 * b * c + 1});
    return inst;
}

MRSInstance to_cyclic_group(const MRSInstance& inst) {
    if (inst.mode() != EntryMode::Integer) fail(ErrorCode::InvalidInput, "integer instance expected");
    auto rep = verify_mrs(inst);
    if (!rep.ok()) fail(ErrorCode::InvalidInput, "input is not an MRS: " + rep.summary());
    const auto N = inst.params.n * inst.params.k * inst.params.c;
    Group zn({N});
    MRSInstance out;
    out.params = inst.params;
    out.group = zn;
    for (auto& a : inst.arrays) {
        PFArray::Builder b(a.rows(), a.cols(), zn);
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (auto e = a.at(i, j)) b.set(i, j, Coords{(*e)[0]});
        out.arrays.push_back(std::move(b).build());
    }
    out.omega = zn.element({(*rep.omega)[0]});
    out.delta = zn.element({(*rep.delta)[0]});
    return out;
}

}  // namespace magicrect
