/**
 * @file array.cpp
 * @brief PFArray, instance transforms and the MRS verifier.
 */
#include "magicrect/array.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace magicrect {

// ---------------------------------------------------------------- PFArray

PFArray::Builder::Builder(std::size_t m, std::size_t n, Group g)
    : m_(m), n_(n), group_(std::move(g)), cells_(m * n) {}

PFArray::Builder& PFArray::Builder::set(std::size_t i, std::size_t j, const Element& e) {
    if (e.group() != group_) fail(ErrorCode::GroupMismatch, "entry " + e.to_string() + " not in " + group_.to_string());
    return set(i, j, e.coords());
}

PFArray::Builder& PFArray::Builder::set(std::size_t i, std::size_t j, const Coords& c) {
    if (i >= m_ || j >= n_) fail(ErrorCode::IndexError, "cell (" + std::to_string(i) + "," + std::to_string(j) + ")");
    cells_[i * n_ + j] = group_.element(c).coords();
    return *this;
}

PFArray::Builder& PFArray::Builder::clear(std::size_t i, std::size_t j) {
    if (i >= m_ || j >= n_) fail(ErrorCode::IndexError, "cell (" + std::to_string(i) + "," + std::to_string(j) + ")");
    cells_[i * n_ + j].reset();
    return *this;
}

bool PFArray::Builder::filled(std::size_t i, std::size_t j) const { return cells_.at(i * n_ + j).has_value(); }

PFArray PFArray::Builder::build() && {
    PFArray a;
    a.m_ = m_;
    a.n_ = n_;
    a.group_ = std::move(group_);
    a.cells_ = std::move(cells_);
    return a;
}

PFArray PFArray::Builder::build() const& { return Builder(*this).build(); }

bool PFArray::filled(std::size_t i, std::size_t j) const {
    if (i >= m_ || j >= n_) fail(ErrorCode::IndexError, "cell (" + std::to_string(i) + "," + std::to_string(j) + ")");
    return cells_[i * n_ + j].has_value();
}

std::optional<Element> PFArray::at(std::size_t i, std::size_t j) const {
    if (!filled(i, j)) return std::nullopt;
    return Element(group_, *cells_[i * n_ + j]);
}

std::size_t PFArray::row_count(std::size_t i) const {
    std::size_t c = 0;
    for (std::size_t j = 0; j < n_; ++j) c += filled(i, j);
    return c;
}

std::size_t PFArray::col_count(std::size_t j) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < m_; ++i) c += filled(i, j);
    return c;
}

std::vector<Element> PFArray::entries() const {
    std::vector<Element> out;
    for (auto& c : cells_)
        if (c) out.emplace_back(group_, *c);
    return out;
}

PFArray make_array(const Group& g, const std::vector<std::vector<std::optional<Coords>>>& grid) {
    const std::size_t m = grid.size(), n = m ? grid[0].size() : 0;
    PFArray::Builder b(m, n, g);
    for (std::size_t i = 0; i < m; ++i) {
        if (grid[i].size() != n) fail(ErrorCode::ShapeError, "ragged grid");
        for (std::size_t j = 0; j < n; ++j)
            if (grid[i][j]) b.set(i, j, *grid[i][j]);
    }
    return std::move(b).build();
}

std::string Params::to_string() const {
    std::ostringstream os;
    os << "(" << m << "," << n << ";" << s << "," << k << ";" << c << ")";
    return os.str();
}

// ---------------------------------------------------------------- sums

Element row_sum(const PFArray& a, std::size_t i) {
    if (i >= a.rows()) fail(ErrorCode::IndexError, "row " + std::to_string(i));
    Element s = a.group().zero();
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (auto e = a.at(i, j)) s = s + *e;
    return s;
}

Element col_sum(const PFArray& a, std::size_t j) {
    if (j >= a.cols()) fail(ErrorCode::IndexError, "column " + std::to_string(j));
    Element s = a.group().zero();
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (auto e = a.at(i, j)) s = s + *e;
    return s;
}

bool is_zero_sum(const PFArray& a) {
    if (a.mode() != EntryMode::Group) fail(ErrorCode::ModeError, "zero-sum is a group-mode notion");
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (!row_sum(a, i).is_zero()) return false;
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (!col_sum(a, j).is_zero()) return false;
    return true;
}

std::string VerificationReport::summary() const {
    std::ostringstream os;
    os << (ok() ? "PASS" : "FAIL") << " shape=" << shape_ok << " entries=" << entries_ok << " counts=" << counts_ok
       << " sums=" << sums_ok << " claims=" << claims_ok;
    if (omega) os << " omega=" << omega->to_string();
    if (delta) os << " delta=" << delta->to_string();
    for (auto& m : messages) os << "\n  " << m;
    return os.str();
}

VerificationReport verify_mrs(const MRSInstance& inst) {
    VerificationReport r;
    const auto& p = inst.params;
    auto note = [&](bool& flag, const std::string& msg) {
        flag = false;
        if (r.messages.size() < 20) r.messages.push_back(msg);
    };

    if (p.c < 1 || p.m < 1 || p.n < 1 || static_cast<std::int64_t>(inst.arrays.size()) != p.c)
        note(r.shape_ok, "expected " + std::to_string(p.c) + " arrays, got " + std::to_string(inst.arrays.size()));
    for (auto& a : inst.arrays) {
        if (static_cast<std::int64_t>(a.rows()) != p.m || static_cast<std::int64_t>(a.cols()) != p.n)
            note(r.shape_ok, "array of shape " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
        if (a.group() != inst.group) note(r.shape_ok, "array group " + a.group().to_string());
    }
    if (!r.shape_ok) {
        r.entries_ok = r.counts_ok = r.sums_ok = false;
        return r;
    }

    // (a)
    const std::int64_t total = p.n * p.k * p.c;
    std::vector<int> seen;
    if (inst.mode() == EntryMode::Integer) {
        seen.assign(static_cast<std::size_t>(total), 0);
        for (auto& a : inst.arrays)
            for (auto& e : a.entries()) {
                auto v = e[0];
                if (v < 1 || v > total) note(r.entries_ok, "entry " + std::to_string(v) + " outside [1,nkc]");
                else if (seen[static_cast<std::size_t>(v - 1)]++) note(r.entries_ok, "entry " + std::to_string(v) + " repeated");
            }
    } else {
        if (inst.group.order() != total)
            note(r.entries_ok, "group order " + std::to_string(inst.group.order()) + " != nkc = " + std::to_string(total));
        seen.assign(static_cast<std::size_t>(inst.group.order()), 0);
        for (auto& a : inst.arrays)
            for (auto& e : a.entries())
                if (seen[static_cast<std::size_t>(inst.group.index_of(e.coords()))]++)
                    note(r.entries_ok, "entry " + e.to_string() + " repeated");
    }
    if (std::count(seen.begin(), seen.end(), 0) > 0) note(r.entries_ok, "some group elements are missing");

    // (b)
    for (std::size_t t = 0; t < inst.arrays.size(); ++t) {
        auto& a = inst.arrays[t];
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (static_cast<std::int64_t>(a.row_count(i)) != p.s)
                note(r.counts_ok, "array " + std::to_string(t) + " row " + std::to_string(i) + " has " +
                                      std::to_string(a.row_count(i)) + " cells");
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (static_cast<std::int64_t>(a.col_count(j)) != p.k)
                note(r.counts_ok, "array " + std::to_string(t) + " column " + std::to_string(j) + " has " +
                                      std::to_string(a.col_count(j)) + " cells");
    }

    // (c): constants from the first nonempty row/column of the first array
    const auto& first = inst.arrays.front();
    for (std::size_t i = 0; i < first.rows() && !r.omega; ++i)
        if (first.row_count(i)) r.omega = row_sum(first, i);
    for (std::size_t j = 0; j < first.cols() && !r.delta; ++j)
        if (first.col_count(j)) r.delta = col_sum(first, j);
    for (std::size_t t = 0; t < inst.arrays.size(); ++t) {
        auto& a = inst.arrays[t];
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (r.omega && row_sum(a, i) != *r.omega)
                note(r.sums_ok, "array " + std::to_string(t) + " row " + std::to_string(i) + " sums to " +
                                    row_sum(a, i).to_string());
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (r.delta && col_sum(a, j) != *r.delta)
                note(r.sums_ok, "array " + std::to_string(t) + " column " + std::to_string(j) + " sums to " +
                                    col_sum(a, j).to_string());
    }
    if (!r.omega || !r.delta) note(r.sums_ok, "no filled cells");

    if (inst.omega && r.omega && *inst.omega != *r.omega)
        note(r.claims_ok, "claimed omega " + inst.omega->to_string() + " but rows sum to " + r.omega->to_string());
    if (inst.delta && r.delta && *inst.delta != *r.delta)
        note(r.claims_ok, "claimed delta " + inst.delta->to_string() + " but columns sum to " + r.delta->to_string());
    return r;
}

// ---------------------------------------------------------------- transforms

PFArray transpose(const PFArray& a) {
    PFArray::Builder b(a.cols(), a.rows(), a.group());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a.filled(i, j)) b.set(j, i, *a.raw(i, j));
    return std::move(b).build();
}

MRSInstance transpose_instance(const MRSInstance& inst) {
    MRSInstance out;
    out.params = {inst.params.n, inst.params.m, inst.params.k, inst.params.s, inst.params.c};
    out.group = inst.group;
    for (auto& a : inst.arrays) out.arrays.push_back(transpose(a));
    out.omega = inst.delta;
    out.delta = inst.omega;
    return out;
}

PFArray juxtapose_vertical(const std::vector<PFArray>& blocks) {
    if (blocks.empty()) fail(ErrorCode::ShapeError, "nothing to juxtapose");
    std::size_t m = 0;
    for (auto& b : blocks) {
        if (b.cols() != blocks[0].cols()) fail(ErrorCode::ShapeError, "column counts differ");
        if (b.group() != blocks[0].group()) fail(ErrorCode::GroupMismatch, "blocks over different groups");
        m += b.rows();
    }
    PFArray::Builder out(m, blocks[0].cols(), blocks[0].group());
    std::size_t off = 0;
    for (auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b.filled(i, j)) out.set(off + i, j, *b.raw(i, j));
        off += b.rows();
    }
    return std::move(out).build();
}

PFArray juxtapose_horizontal(const std::vector<PFArray>& blocks) {
    std::vector<PFArray> t;
    for (auto& b : blocks) t.push_back(transpose(b));
    for (auto& b : t)
        if (b.cols() != t[0].cols()) fail(ErrorCode::ShapeError, "row counts differ");
    return transpose(juxtapose_vertical(t));
}

std::vector<std::pair<std::size_t, std::size_t>> diagonal_cells(std::size_t m, std::size_t n, std::size_t l) {
    const auto e = static_cast<std::size_t>(std::gcd(m, n));
    if (m == 0 || n == 0 || l >= e) fail(ErrorCode::IndexError, "diagonal " + std::to_string(l));
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if ((j + e - i % e) % e == l) out.emplace_back(i, j);
    return out;
}

std::optional<std::size_t> diagonal_start(const PFArray& a, std::size_t k) {
    const std::size_t n = a.cols();
    if (a.rows() != n || k == 0 || k > n) return std::nullopt;
    std::vector<std::size_t> full;  // diagonals fully filled
    for (std::size_t l = 0; l < n; ++l) {
        std::size_t cnt = 0;
        for (std::size_t i = 0; i < n; ++i) cnt += a.filled(i, (i + l) % n);
        if (cnt == n) full.push_back(l);
        else if (cnt != 0) return std::nullopt;
    }
    if (full.size() != k) return std::nullopt;
    if (k == n) return 0;
    for (std::size_t start : full) {
        bool ok = true;
        for (std::size_t t = 0; t < k && ok; ++t)
            ok = std::find(full.begin(), full.end(), (start + t) % n) != full.end();
        if (ok) return start;
    }
    return std::nullopt;
}

bool is_diagonal_instance(const MRSInstance& inst) {
    const auto& p = inst.params;
    if (p.m != p.n || p.s != p.k || inst.arrays.empty()) return false;
    for (auto& a : inst.arrays)
        if (!diagonal_start(a, static_cast<std::size_t>(p.k))) return false;
    return true;
}

LabelingReport to_multipartite_labeling(const MRSInstance& inst) {
    const auto& p = inst.params;
    if (p.s != p.n || p.k != p.m) fail(ErrorCode::Unsupported, "labeling needs fully filled arrays");
    LabelingReport rep;
    Element total = inst.group.zero();
    std::vector<Element> parts;
    for (auto& a : inst.arrays) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.col_count(j) != a.rows()) fail(ErrorCode::Unsupported, "labeling needs fully filled arrays");
            parts.push_back(col_sum(a, j));
            total = total + parts.back();
        }
    }
    rep.parts = parts.size();
    rep.constant = true;
    for (auto& ps : parts) {
        Element w = total - ps;
        if (!rep.mu) rep.mu = w;
        else if (w != *rep.mu) rep.constant = false;
    }
    if (!rep.constant) rep.mu.reset();
    return rep;
}

MRSInstance map_instance(const MRSInstance& inst, const GroupHom& f) {
    MRSInstance out;
    out.params = inst.params;
    out.group = f.target();
    for (auto& a : inst.arrays) {
        PFArray::Builder b(a.rows(), a.cols(), f.target());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (auto e = a.at(i, j)) b.set(i, j, f(*e));
        out.arrays.push_back(std::move(b).build());
    }
    if (inst.omega) out.omega = f(*inst.omega);
    if (inst.delta) out.delta = f(*inst.delta);
    return out;
}

}  // namespace magicrect
