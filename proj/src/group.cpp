/**
 * @file group.cpp
 * @brief Group arithmetic, Smith normal form, quotients and isomorphisms.
 */
#include "magicrect/group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

namespace magicrect {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidFactor: return "InvalidFactor";
        case ErrorCode::GroupMismatch: return "GroupMismatch";
        case ErrorCode::NotASubgroup: return "NotASubgroup";
        case ErrorCode::IndexError: return "IndexError";
        case ErrorCode::ShapeError: return "ShapeError";
        case ErrorCode::ModeError: return "ModeError";
        case ErrorCode::Unsupported: return "Unsupported";
        case ErrorCode::UnsupportedParams: return "UnsupportedParams";
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::InvalidOmega: return "InvalidOmega";
        case ErrorCode::PhiNotInUpsilon: return "PhiNotInUpsilon";
        case ErrorCode::InvalidDivisor: return "InvalidDivisor";
        case ErrorCode::NoSuchObject: return "NoSuchObject";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::ConstructionFailed: return "ConstructionFailed";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

namespace {

const std::shared_ptr<const std::vector<std::int64_t>>& empty_factors() {
    static const auto e = std::make_shared<const std::vector<std::int64_t>>();
    return e;
}

void require_same(const Group& a, const Group& b) {
    if (a != b) fail(ErrorCode::GroupMismatch, a.to_string() + " vs " + b.to_string());
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    std::int64_t g = m, x = 0, x1 = 1, a1 = mod(a, m);
    while (a1) {
        std::int64_t q = g / a1;
        std::tie(g, a1) = std::make_tuple(a1, g - q * a1);
        std::tie(x, x1) = std::make_tuple(x1, x - q * x1);
    }
    return mod(x, m);
}

}  // namespace

// ---------------------------------------------------------------- Group

Group::Group() : factors_(empty_factors()) {}

Group::Group(std::vector<std::int64_t> factors) {
    for (auto d : factors)
        if (d < 2) fail(ErrorCode::InvalidFactor, "factor " + std::to_string(d) + " < 2");
    for (std::size_t i = 0; i + 1 < factors.size(); ++i)
        if (factors[i + 1] % factors[i] != 0) canonical_ = false;
    factors_ = std::make_shared<const std::vector<std::int64_t>>(std::move(factors));
}

Group Group::integers() {
    static const Group z = [] {
        Group g;
        g.factors_ = std::make_shared<const std::vector<std::int64_t>>(std::vector<std::int64_t>{0});
        g.integer_ = true;
        g.canonical_ = false;
        return g;
    }();
    return z;
}

std::int64_t Group::order() const {
    if (integer_) fail(ErrorCode::ModeError, "integer group has no finite order");
    std::int64_t o = 1;
    for (auto d : *factors_) o *= d;
    return o;
}

Element Group::zero() const { return Element(*this, Coords(rank(), 0)); }

Element Group::element(Coords coords) const {
    if (coords.size() != rank())
        fail(ErrorCode::ShapeError, "element of length " + std::to_string(coords.size()) + " in " + to_string());
    if (!integer_)
        for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = mod(coords[i], (*factors_)[i]);
    return Element(*this, std::move(coords));
}

std::int64_t Group::index_of(const Coords& coords) const {
    if (integer_) fail(ErrorCode::ModeError, "integer group is not indexable");
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) idx = idx * (*factors_)[i] + coords[i];
    return idx;
}

Element Group::at(std::int64_t index) const {
    const auto& f = *factors_;
    Coords c(f.size());
    for (std::size_t i = f.size(); i-- > 0;) {
        c[i] = index % f[i];
        index /= f[i];
    }
    return Element(*this, std::move(c));
}

std::string Group::to_string() const {
    if (integer_) return "Z";
    if (factors_->empty()) return "0";
    std::string s;
    for (auto d : *factors_) {
        if (!s.empty()) s += "+";
        s += "Z" + std::to_string(d);
    }
    return s;
}

bool Group::operator==(const Group& o) const {
    return integer_ == o.integer_ && (factors_ == o.factors_ || *factors_ == *o.factors_);
}

bool Element::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t x) { return x == 0; });
}

std::string Element::to_string() const {
    if (group_.is_integer()) return std::to_string(coords_.at(0));
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(coords_[i]);
    }
    return s + ")";
}

Group group_from_factors(const std::vector<std::int64_t>& factors) { return Group(factors); }

Group parse_group(const std::string& text) {
    std::string t;
    for (std::size_t i = 0; i < text.size(); ++i) {
        unsigned char ch = static_cast<unsigned char>(text[i]);
        if (std::isspace(ch)) continue;
        // U+2295 CIRCLED PLUS in UTF-8
        if (ch == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x8A &&
            static_cast<unsigned char>(text[i + 2]) == 0x95) {
            t += '+';
            i += 2;
            continue;
        }
        t += static_cast<char>(std::tolower(ch));
    }
    if (t.empty() || t == "0" || t == "trivial") return Group();
    std::vector<std::int64_t> f;
    std::stringstream ss(t);
    std::string tok;
    while (std::getline(ss, tok, '+')) {
        if (tok.size() < 2 || tok[0] != 'z') fail(ErrorCode::ParseError, "bad group token '" + tok + "'");
        auto digits = tok.substr(tok[1] == '_' ? 2 : 1);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
            fail(ErrorCode::ParseError, "bad group token '" + tok + "'");
        f.push_back(std::stoll(digits));
    }
    return Group(f);
}

// ---------------------------------------------------------------- arithmetic

Element add(const Element& a, const Element& b) {
    require_same(a.group(), b.group());
    const auto& f = a.group().factors();
    Coords c(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        c[i] = a[i] + b[i];
        if (f[i] && c[i] >= f[i]) c[i] -= f[i];
    }
    return Element(a.group(), std::move(c));
}

Element neg(const Element& a) {
    const auto& f = a.group().factors();
    Coords c(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) c[i] = f[i] ? mod(-a[i], f[i]) : -a[i];
    return Element(a.group(), std::move(c));
}

Element sub(const Element& a, const Element& b) { return add(a, neg(b)); }

Element scalar_mul(std::int64_t k, const Element& a) {
    const auto& f = a.group().factors();
    Coords c(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) c[i] = f[i] ? mod(mod(k, f[i]) * a[i], f[i]) : k * a[i];
    return Element(a.group(), std::move(c));
}

std::int64_t element_order(const Element& a) {
    if (a.group().is_integer()) fail(ErrorCode::ModeError, "order in Z");
    std::int64_t o = 1;
    const auto& f = a.group().factors();
    for (std::size_t i = 0; i < f.size(); ++i) o = std::lcm(o, f[i] / std::gcd(f[i], a[i]));
    return o;
}

std::vector<Element> enumerate(const Group& g) {
    std::vector<Element> out;
    const auto n = g.order();
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) out.push_back(g.at(i));
    return out;
}

std::vector<Element> involutions(const Group& g) {
    std::vector<Element> out;
    for (auto& e : enumerate(g))
        if (element_order(e) == 2) out.push_back(e);
    return out;
}

std::size_t involution_count(const Group& g) {
    std::size_t r = 0;
    for (auto d : g.factors()) r += (d % 2 == 0);
    return (std::size_t{1} << r) - 1;
}

Element group_sum(const Group& g) {
    // Each factor pairs x with -x, so only the elements of order 2 can survive.
    if (involution_count(g) != 1) return g.zero();
    Coords c(g.rank(), 0);
    for (std::size_t i = 0; i < g.rank(); ++i)
        if (g.factors()[i] % 2 == 0) c[i] = g.factors()[i] / 2;
    return Element(g, c);
}

std::int64_t exponent(const Group& g) {
    std::int64_t e = 1;
    for (auto d : g.factors()) e = std::lcm(e, d);
    return e;
}

std::optional<Element> element_of_order(const Group& g, std::int64_t n) {
    if (n < 1 || exponent(g) % n != 0) return std::nullopt;
    const auto ord = g.order();
    for (std::int64_t i = 0; i < ord; ++i) {
        auto e = g.at(i);
        if (element_order(e) == n) return e;
    }
    return std::nullopt;
}

std::vector<Element> cyclic_subgroup(const Element& a) {
    std::vector<Element> out{a.group().zero()};
    for (auto x = a; !x.is_zero(); x = x + a) out.push_back(x);
    return out;
}

bool in_upsilon(const Group& g) { return g.order() % 2 == 1 || involution_count(g) > 1; }

std::vector<std::int64_t> primary_factors(const Group& g) {
    std::vector<std::pair<std::int64_t, std::int64_t>> pq;
    for (auto d : g.factors())
        for (auto [p, e] : factorize(d)) {
            std::int64_t q = 1;
            for (int i = 0; i < e; ++i) q *= p;
            pq.emplace_back(p, q);
        }
    std::sort(pq.begin(), pq.end());
    std::vector<std::int64_t> out;
    for (auto& [p, q] : pq) out.push_back(q);
    return out;
}

std::vector<std::int64_t> invariant_factors(const Group& g) {
    // group prime powers by prime, then stack the largest of each prime into the last factor
    std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> by_prime;
    for (auto d : g.factors())
        for (auto [p, e] : factorize(d)) {
            std::int64_t q = 1;
            for (int i = 0; i < e; ++i) q *= p;
            auto it = std::find_if(by_prime.begin(), by_prime.end(), [p = p](auto& x) { return x.first == p; });
            if (it == by_prime.end()) by_prime.push_back({p, {q}});
            else it->second.push_back(q);
        }
    std::size_t len = 0;
    for (auto& [p, qs] : by_prime) {
        std::sort(qs.begin(), qs.end(), std::greater<>());
        len = std::max(len, qs.size());
    }
    std::vector<std::int64_t> out(len, 1);
    for (auto& [p, qs] : by_prime)
        for (std::size_t i = 0; i < qs.size(); ++i) out[len - 1 - i] *= qs[i];
    return out;
}

bool isomorphic(const Group& a, const Group& b) { return primary_factors(a) == primary_factors(b); }

Group direct_sum(const Group& a, const Group& b) {
    auto f = a.factors();
    f.insert(f.end(), b.factors().begin(), b.factors().end());
    return Group(f);
}

Element concat(const Element& a, const Element& b, const Group& sum) {
    Coords c = a.coords();
    c.insert(c.end(), b.coords().begin(), b.coords().end());
    return sum.element(std::move(c));
}

// ---------------------------------------------------------------- homomorphisms

GroupHom::GroupHom(Group source, Group target, std::vector<Coords> matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.size() != source_.rank())
        fail(ErrorCode::ShapeError, "hom matrix rows != source rank");
    for (auto& row : matrix_) {
        if (row.size() != target_.rank()) fail(ErrorCode::ShapeError, "hom matrix cols != target rank");
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = mod(row[j], target_.factors()[j]);
    }
}

Element GroupHom::operator()(const Element& x) const {
    require_same(x.group(), source_);
    const auto& tf = target_.factors();
    Coords y(tf.size(), 0);
    for (std::size_t i = 0; i < matrix_.size(); ++i) {
        if (!x[i]) continue;
        for (std::size_t j = 0; j < tf.size(); ++j) y[j] = (y[j] + x[i] * matrix_[i][j]) % tf[j];
    }
    return Element(target_, std::move(y));
}

GroupHom GroupHom::then(const GroupHom& next) const {
    require_same(target_, next.source_);
    std::vector<Coords> m;
    for (std::size_t i = 0; i < source_.rank(); ++i) {
        Coords row = next(Element(target_, matrix_[i])).coords();
        m.push_back(row);
    }
    return GroupHom(source_, next.target_, m);
}

bool GroupHom::is_homomorphism() const {
    // a well-defined hom needs ord(e_i) * image(e_i) = 0 for every generator
    for (std::size_t i = 0; i < source_.rank(); ++i)
        if (!scalar_mul(source_.factors()[i], Element(target_, matrix_[i])).is_zero()) return false;
    const auto n = source_.order();
    if (n > 4096) return true;
    for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = 0; b < n; ++b) {
            auto x = source_.at(a), y = source_.at(b);
            if ((*this)(x + y) != (*this)(x) + (*this)(y)) return false;
        }
    return true;
}

GroupHom isomorphism(const Group& a, const Group& b) {
    struct Comp {
        std::int64_t p, q;
        std::size_t factor;
    };
    auto comps = [](const Group& g) {
        std::vector<Comp> out;
        for (std::size_t i = 0; i < g.rank(); ++i)
            for (auto [p, e] : factorize(g.factors()[i])) {
                std::int64_t q = 1;
                for (int k = 0; k < e; ++k) q *= p;
                out.push_back({p, q, i});
            }
        std::stable_sort(out.begin(), out.end(),
                         [](const Comp& x, const Comp& y) { return std::tie(x.p, x.q) < std::tie(y.p, y.q); });
        return out;
    };
    auto ca = comps(a), cb = comps(b);
    bool same = ca.size() == cb.size();
    for (std::size_t i = 0; same && i < ca.size(); ++i) same = ca[i].p == cb[i].p && ca[i].q == cb[i].q;
    if (!same) fail(ErrorCode::GroupMismatch, a.to_string() + " is not isomorphic to " + b.to_string());
    std::vector<Coords> m(a.rank(), Coords(b.rank(), 0));
    for (std::size_t i = 0; i < ca.size(); ++i) {
        const std::int64_t d = b.factors()[cb[i].factor], q = cb[i].q, r = d / q;
        // CRT idempotent of the q-part of Z_d
        const std::int64_t u = r == 1 ? 1 : mod(r * inverse_mod(r, q), d);
        auto& cell = m[ca[i].factor][cb[i].factor];
        cell = mod(cell + u, d);
    }
    return GroupHom(a, b, m);
}

// ---------------------------------------------------------------- Smith normal form

SmithForm smith_normal_form(std::vector<Coords> a) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<Coords> v(cols, Coords(cols, 0));
    for (std::size_t i = 0; i < cols; ++i) v[i][i] = 1;

    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (auto& r : a) std::swap(r[i], r[j]);
        for (auto& r : v) std::swap(r[i], r[j]);
    };
    auto col_axpy = [&](std::size_t dst, std::size_t src, std::int64_t q) {  // col_dst -= q col_src
        for (auto& r : a) r[dst] -= q * r[src];
        for (auto& r : v) r[dst] -= q * r[src];
    };

    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            // smallest nonzero in the trailing block becomes the pivot
            std::size_t bi = rows, bj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] && (bi == rows || std::llabs(a[i][j]) < std::llabs(a[bi][bj]))) bi = i, bj = j;
            if (bi == rows) break;
            std::swap(a[t], a[bi]);
            if (bj != t) swap_cols(t, bj);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                std::int64_t q = a[i][t] / a[t][t];
                if (q)
                    for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t]) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                std::int64_t q = a[t][j] / a[t][t];
                if (q) col_axpy(j, t, q);
                if (a[t][j]) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t]) {
                        for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (t < rows && t < cols && a[t][t] < 0) {
            for (auto& r : a) r[t] = -r[t];
            for (auto& r : v) r[t] = -r[t];
        }
    }
    return SmithForm{std::move(a), std::move(v)};
}

// ---------------------------------------------------------------- quotients

bool is_subgroup(const Group& g, const std::vector<Element>& h) {
    if (h.empty()) return false;
    std::unordered_set<std::int64_t> idx;
    for (auto& x : h) {
        if (x.group() != g) return false;
        idx.insert(g.index_of(x.coords()));
    }
    if (!idx.count(0)) return false;
    for (auto& x : h)
        for (auto& y : h)
            if (!idx.count(g.index_of((x + y).coords()))) return false;
    return true;
}

Element Quotient::section(const Element& y) const {
    if (y.group() != q) fail(ErrorCode::GroupMismatch, "section input not in quotient");
    return section_table.at(static_cast<std::size_t>(q.index_of(y.coords())));
}

Quotient quotient_with_iso(const Group& g, const std::vector<Element>& h) {
    if (!is_subgroup(g, h)) fail(ErrorCode::NotASubgroup, "element list is not a subgroup of " + g.to_string());
    const std::size_t n = g.rank();

    // greedy generating set of H
    std::vector<Element> gens;
    std::set<Coords> span{g.zero().coords()};
    for (auto& x : h) {
        if (span.count(x.coords())) continue;
        gens.push_back(x);
        std::vector<Coords> frontier(span.begin(), span.end());
        while (!frontier.empty()) {
            std::vector<Coords> next;
            for (auto& c : frontier)
                for (auto& s : gens) {
                    auto y = (Element(g, c) + s).coords();
                    if (span.insert(y).second) next.push_back(y);
                }
            frontier = std::move(next);
        }
    }

    std::vector<Coords> rel;
    for (std::size_t i = 0; i < n; ++i) {
        Coords r(n, 0);
        r[i] = g.factors()[i];
        rel.push_back(r);
    }
    for (auto& s : gens) rel.push_back(s.coords());

    std::vector<std::int64_t> qf;
    std::vector<std::size_t> keep;
    Coords diag;
    if (n) {
        auto sf = smith_normal_form(rel);
        for (std::size_t i = 0; i < n; ++i)
            if (sf.d[i][i] > 1) {
                qf.push_back(sf.d[i][i]);
                keep.push_back(i);
            }
        Group q(qf);
        std::vector<Coords> m(n, Coords(keep.size()));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < keep.size(); ++j) m[i][j] = mod(sf.v[i][keep[j]], qf[j]);
        // sign of each quotient coordinate: the first generator with a nonzero image lands in [1, d/2]
        for (std::size_t j = 0; j < keep.size(); ++j)
            for (std::size_t i = 0; i < n; ++i) {
                if (m[i][j] == 0) continue;
                if (2 * m[i][j] > qf[j])
                    for (auto& row : m) row[j] = mod(-row[j], qf[j]);
                break;
            }
        Quotient out{q, GroupHom(g, q, m), {}};
        out.section_table.resize(static_cast<std::size_t>(q.order()));
        std::vector<bool> seen(out.section_table.size(), false);
        for (std::int64_t i = 0; i < g.order(); ++i) {
            auto x = g.at(i);
            auto k = static_cast<std::size_t>(q.index_of(out.proj(x).coords()));
            if (!seen[k]) {
                seen[k] = true;
                out.section_table[k] = x;
            }
        }
        return out;
    }
    return Quotient{Group(), GroupHom(g, Group(), {}), {g.zero()}};
}

}  // namespace magicrect
