#include "magicrect/existence.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "magicrect/diagonal.hpp"
#include "magicrect/group_constructions.hpp"
#include "magicrect/integer.hpp"
#include "magicrect/io.hpp"

namespace magicrect {

std::string status_name(Status s) {
    switch (s) {
        case Status::Exists: return "Exists";
        case Status::NotExists: return "NotExists";
        case Status::Unknown: return "Unknown";
    }
    return "?";
}

namespace {

ExistenceVerdict verdict(Status st, std::string why, std::string detail = {}) {
    ExistenceVerdict v;
    v.status = st;
    v.reason = std::move(why);
    v.detail = std::move(detail);
    return v;
}

bool is_pow2(std::int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

int log2i(std::int64_t x) {
    int r = 0;
    while (x > 1) x >>= 1, ++r;
    return r;
}

std::optional<std::string> necessary_conditions(const Params& p, const Group& g) {
    if (p.c < 1) return "c must be positive";
    if (p.s < 2 || p.s > p.n) return "need 2 <= s <= n";
    if (p.k < 2 || p.k > p.m) return "need 2 <= k <= m";
    if (p.m * p.s != p.n * p.k) return "need ms = nk";
    if (g.order() != p.n * p.k * p.c) return "need |gamma| = nkc";
    return std::nullopt;
}

// Runs a construction; BudgetExceeded leaves a cited verdict without witness.
template <class F>
ExistenceVerdict constructed(const char* why, const std::string& detail, bool want, F&& build) {
    auto v = verdict(Status::Exists, why, detail);
    if (!want) return v;
    try {
        v.witness = build();
    } catch (const MagicRectError& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        v.detail += v.detail.empty() ? "" : "; ";
        v.detail += "construction budget exceeded, no witness";
    }
    return v;
}

// MRS(a,b;c), a rows and b columns, all cells filled. Necessary conditions already hold.
ExistenceVerdict decide_full(std::int64_t a, std::int64_t b, std::int64_t c, const Group& g,
                             const DecideOptions& opt) {
    const bool one_inv = involution_count(g) == 1;
    if (one_inv && (a % 2 || b % 2))
        return verdict(Status::NotExists, reason::COR_SKODD1, "exactly one involution and an odd side");
    if ((a == 2 && b % 2) || (b == 2 && a % 2))
        return verdict(Status::NotExists, reason::PROP_NO_ODD, "2 x odd full arrays");
    if (a % 2 == 0 && b % 2 == 0)
        return constructed(reason::PROP_MOD4, "all parameters even", opt.construct_witness,
                           [&] { return even_params(a, b, b, a, c, g); });
    if (!in_upsilon(g)) return verdict(Status::NotExists, reason::COR_SKODD1, "gamma not in Upsilon");

    const bool a_odd = a % 2 == 1;
    const std::int64_t odd = a_odd ? a : b, even = a_odd ? b : a;
    if (odd % 2 == 1 && is_pow2(even) && even >= 4) {
        const int alpha = log2i(even);
        const std::int64_t l = (odd - 1) / 2;
        auto orient = [&](MRSInstance inst) { return a_odd ? inst : transpose_instance(inst); };
        PipelineOptions po;
        po.budget = opt.budget;
        if (c % 2 == 1)
            return constructed(reason::PROP_ODD_C, "", opt.construct_witness,
                               [&] { return orient(odd_c_construction(l, alpha, c, g, po)); });
        if (alpha == 3 && c % 4 == 2)
            return constructed(reason::THM_MAIN, "", opt.construct_witness,
                               [&] { return orient(theorem_main(l, (c - 2) / 4, g, po)); });
        if (alpha == 2 && c % 4 == 2) return verdict(Status::Exists, reason::THM_CH_FOUR, "cited, no witness");
        return verdict(Status::Unknown, reason::CONJ_CH_FRONTIER,
                       "conjectured to exist: gamma in Upsilon, sides {odd, 2^alpha}");
    }
    return verdict(Status::Exists, reason::THM_ESISTENZA, "gamma in Upsilon; cited, no witness");
}

ExistenceVerdict decide_partial(const Params& p, const Group& g, const DecideOptions& opt) {
    const auto [m, n, s, k, c] = p;
    const bool want = opt.construct_witness;

    if (auto mc = mod4_case(m, n, s, k))
        return constructed(reason::PROP_MOD4, mod4_case_name(*mc), want,
                           [&] { return mod4_cases(m, n, s, k, c, g); });

    const std::int64_t d = gcd64(s, k), big = n * k / d;
    if (d % 2 == 0 && element_of_order(g, big))
        return constructed(reason::COR_MRS2B, "diagonal square of size " + std::to_string(big), want, [&] {
            return diagonal_to_rectangle(diagonal_n_2b_c(big, d / 2, c, g), m, n, s, k);
        });

    // Full k1 x s arrays (or s1 x k after transposing) juxtaposed along d.
    const std::int64_t k1 = k / d, s1 = s / d, e = m / k1;
    for (int side = 0; side < 2; ++side) {
        const std::int64_t rows = side ? s1 : k1, cols = side ? k : s;
        if (rows < 2) continue;
        auto inner = decide_full(rows, cols, e * c, g, opt);
        if (inner.status != Status::Exists) continue;
        auto v = verdict(Status::Exists, reason::LEM_GCD,
                         "full MRS(" + std::to_string(rows) + "," + std::to_string(cols) + ";" +
                             std::to_string(e * c) + ") by " + inner.reason);
        if (inner.witness) {
            v.witness = side ? transpose_instance(gcd_compose(*inner.witness, n, m, k, s))
                             : gcd_compose(*inner.witness, m, n, s, k);
        }
        return v;
    }

    const bool cyclic = invariant_factors(g).size() <= 1;
    const bool nkc_odd = (n * k * c) % 2 == 1;
    if (cyclic && (nkc_odd || (s % 2 == 0 && k % 2 == 0 && s * k > 4)))
        return verdict(Status::Exists, reason::REM_EPI, "integer MRS mapped onto Z_nkc; cited, no witness");

    if (s % 4 == 2 && k % 4 == 2 && m % 2 && n % 2)
        return verdict(Status::Unknown, reason::OPEN_SK2, "s = k = 2 mod 4 with m, n odd");
    return verdict(Status::Unknown, reason::OPEN, "no applicable result");
}

}  // namespace

ExistenceVerdict decide(const Params& p, const Group& g, const DecideOptions& opt) {
    if (auto why = necessary_conditions(p, g)) return verdict(Status::NotExists, reason::NEC, *why);
    const auto [m, n, s, k, c] = p;
    if (involution_count(g) == 1 && (s % 2 || k % 2))
        return verdict(Status::NotExists, reason::COR_SKODD1, "exactly one involution and s or k odd");
    if ((k == 2 && (n * s) % 2) || (s == 2 && (m * k) % 2))
        return verdict(Status::NotExists, reason::PROP_NO_ODD, "two filled cells per line with an odd side");
    if (s == n && k == m) return decide_full(m, n, c, g, opt);
    return decide_partial(p, g, opt);
}

bool conjecture_predicts(std::int64_t a, std::int64_t b, const Group& g) {
    if (a % 2 == 0 && b % 2 == 0) return true;
    if ((a == 2 && b % 2) || (b == 2 && a % 2)) return false;
    return in_upsilon(g);
}

// ---------------------------------------------------------------------------------------------
// Oracle

namespace {

enum class Mode { Partial, Full, Diagonal };

struct Tables {
    int N = 0;
    std::vector<int> add, neg;
    std::vector<char> omega_ok, delta_ok;
};

struct Shared {
    std::uint64_t budget = 0;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> out_of_budget{false};
    std::atomic<int> best{INT_MAX};
};

class Search {
public:
    Search(const Tables& t, const Params& p, Mode mode, Shared& sh)
        : t_(t), m_(int(p.m)), n_(int(p.n)), s_(int(p.s)), k_(int(p.k)), A_(int(p.c)), mode_(mode), sh_(sh) {
        const int cells = A_ * m_ * n_;
        val_.assign(cells, -1);
        used_.assign(t.N, 0);
        rsum_.assign(A_ * m_, 0);
        rcnt_.assign(A_ * m_, 0);
        csum_.assign(A_ * n_, 0);
        ccnt_.assign(A_ * n_, 0);
        rtie_.assign(A_ * m_, 0);
        ctie_.assign(A_ * n_, 0);
        rowmin_.assign(A_, INT_MAX);
        total_ = cells;
    }

    /// Random value rotation and fill/empty order; aborts after `limit` nodes.
    void randomize(std::mt19937_64* rng, std::uint64_t limit) {
        rng_ = rng;
        limit_ = limit;
    }

    // true: found; false: exhausted or aborted (see aborted()).
    bool run(int branch) {
        branch_ = branch;
        bool r = dfs(0);
        flush();
        return r;
    }
    bool aborted() const { return aborted_; }
    const std::vector<int>& values() const { return val_; }

private:
    const Tables& t_;
    int m_, n_, s_, k_, A_;
    Mode mode_;
    Shared& sh_;
    int total_ = 0, branch_ = -1, filled_ = 0;
    int omega_ = -1, delta_ = -1;
    std::vector<int> val_, rsum_, rcnt_, csum_, ccnt_, rowmin_;
    std::vector<char> used_, rtie_, ctie_;
    std::uint64_t local_ = 0, spent_ = 0, limit_ = 0;
    std::mt19937_64* rng_ = nullptr;
    bool aborted_ = false;

    int& cell(int a, int i, int j) { return val_[(a * m_ + i) * n_ + j]; }

    void flush() {
        sh_.nodes += local_;
        local_ = 0;
    }

    bool should_stop() {
        if (aborted_) return true;
        if (limit_ && ++spent_ > limit_) aborted_ = true;
        if (++local_ >= 4096) {
            auto tot = sh_.nodes.fetch_add(local_) + local_;
            local_ = 0;
            if (tot > sh_.budget) sh_.out_of_budget = true;
        }
        if (sh_.out_of_budget || sh_.best.load() < branch_) aborted_ = true;
        return aborted_;
    }

    bool must_fill(int i, int j) const {
        if (mode_ == Mode::Full) return true;
        if (mode_ == Mode::Diagonal) return ((j - i) % n_ + n_) % n_ < k_;
        return i == 0 && j == 0;
    }

    // Smallest allowed value minus one, or -2 when the value must be 0.
    int lower_bound(int a, int i, int j) {
        switch (mode_) {
            case Mode::Partial:
                if (i || j) return -1;
                return a == 0 ? -2 : cell(a - 1, 0, 0);
            case Mode::Full:
                if (i == 0 && j == 0) return a == 0 ? -2 : cell(a - 1, 0, 0);
                if (i == 0) return cell(a, 0, j - 1);
                if (j == 0) return cell(a, i - 1, 0);
                return cell(a, 0, 0);
            case Mode::Diagonal: {
                int lb = a ? rowmin_[a - 1] : -1;
                if (i) lb = std::max(lb, rowmin_[a]);
                return lb;
            }
        }
        return -1;
    }

    // Identical adjacent columns must have increasing first entries.
    bool columns_sorted(int a) {
        for (int j = 1; j < n_; ++j) {
            if (!ctie_[a * n_ + j]) continue;
            for (int i = 0; i < m_; ++i) {
                if (cell(a, i, j - 1) < 0) continue;
                if (cell(a, i, j - 1) > cell(a, i, j)) return false;
                break;
            }
        }
        return true;
    }

    bool place(int pos, int a, int i, int j, int v) {
        const int r = a * m_ + i, c = a * n_ + j;
        const bool row_done = rcnt_[r] + 1 == s_, col_done = ccnt_[c] + 1 == k_;
        const int old_omega = omega_, old_delta = delta_, old_rowmin = rowmin_[a];
        if (row_done) {
            int w = t_.add[rsum_[r] * t_.N + v];
            if (omega_ < 0) {
                if (!t_.omega_ok[w]) return false;
                omega_ = w;
            } else if (w != omega_) {
                return false;
            }
        }
        if (col_done) {
            int w = t_.add[csum_[c] * t_.N + v];
            if (delta_ < 0) {
                if (!t_.delta_ok[w]) {
                    omega_ = old_omega;
                    return false;
                }
                delta_ = w;
            } else if (w != delta_) {
                omega_ = old_omega;
                return false;
            }
        }
        const int ors = rsum_[r], ocs = csum_[c];
        rsum_[r] = t_.add[ors * t_.N + v];
        csum_[c] = t_.add[ocs * t_.N + v];
        ++rcnt_[r];
        ++ccnt_[c];
        used_[v] = 1;
        cell(a, i, j) = v;
        ++filled_;
        if (mode_ == Mode::Diagonal && i == 0) rowmin_[a] = std::min(rowmin_[a], v);

        bool ok = true;
        if (pos % (m_ * n_) == m_ * n_ - 1 && mode_ == Mode::Partial) ok = columns_sorted(a);
        bool found = ok && dfs(pos + 1);
        if (found) return true;

        --filled_;
        cell(a, i, j) = -1;
        used_[v] = 0;
        --rcnt_[r];
        --ccnt_[c];
        rsum_[r] = ors;
        csum_[c] = ocs;
        omega_ = old_omega;
        delta_ = old_delta;
        rowmin_[a] = old_rowmin;
        return false;
    }

    bool dfs(int pos) {
        if (should_stop()) return false;
        if (pos == total_) return true;
        const int a = pos / (m_ * n_), i = (pos / n_) % m_, j = pos % n_;
        const int r = a * m_ + i, c = a * n_ + j;
        // Array 0 of a diagonal search holds 0 in row 0.
        if (mode_ == Mode::Diagonal && a == 0 && i == 1 && j == 0 && !used_[0]) return false;
        if (j == 0) rtie_[r] = i > 0;
        if (i == 0) ctie_[c] = j > 0;

        const bool forced_fill = must_fill(i, j);
        const bool may_empty = mode_ == Mode::Partial ? !forced_fill
                                                      : mode_ == Mode::Diagonal && !forced_fill;
        const bool may_fill = mode_ != Mode::Diagonal || forced_fill;

        // Partial patterns: rows and columns lexicographically nonincreasing (filled > empty).
        const bool above_filled = i > 0 && cell(a, i - 1, j) >= 0;
        const bool left_filled = j > 0 && cell(a, i, j - 1) >= 0;
        const bool lex_fill_ok = mode_ != Mode::Partial ||
                                 ((!rtie_[r] || above_filled) && (!ctie_[c] || left_filled));

        auto try_fill = [&]() -> bool {
            if (!(may_fill && lex_fill_ok && rcnt_[r] < s_ && ccnt_[c] < k_ &&
                  rcnt_[r] + (n_ - j) >= s_ && ccnt_[c] + (m_ - i) >= k_))
                return false;
            int forced = -1;
            if (rcnt_[r] + 1 == s_ && omega_ >= 0) forced = t_.add[omega_ * t_.N + t_.neg[rsum_[r]]];
            if (ccnt_[c] + 1 == k_ && delta_ >= 0) {
                int f2 = t_.add[delta_ * t_.N + t_.neg[csum_[c]]];
                if (forced >= 0 && f2 != forced) return false;
                forced = f2;
            }
            const int lb = lower_bound(a, i, j);
            const int lo = forced >= 0 ? forced : (lb == -2 ? 0 : lb + 1);
            const int hi = forced >= 0 ? forced : (lb == -2 ? 0 : t_.N - 1);
            if (lo > hi) return false;
            const int span = hi - lo + 1;
            const int off = rng_ && span > 1 ? int((*rng_)() % std::uint64_t(span)) : 0;
            for (int t = 0; t < span; ++t) {
                const int v = lo + (off + t) % span;
                if (used_[v]) continue;
                if (lb == -2 ? v != 0 : v <= lb) continue;
                if (filled_ == 1 && branch_ >= 0 && v != branch_) continue;
                if (place(pos, a, i, j, v)) return true;
                if (aborted_) return false;
            }
            return false;
        };

        auto try_empty = [&]() -> bool {
            if (!(may_empty && rcnt_[r] + (n_ - j - 1) >= s_ && ccnt_[c] + (m_ - i - 1) >= k_)) return false;
            const char ort = rtie_[r], oct = ctie_[c];
            if (mode_ == Mode::Partial) {
                if (ort && above_filled) rtie_[r] = 0;
                if (oct && left_filled) ctie_[c] = 0;
            }
            bool ok = true;
            if (mode_ == Mode::Partial && pos % (m_ * n_) == m_ * n_ - 1) ok = columns_sorted(a);
            if (ok && dfs(pos + 1)) return true;
            rtie_[r] = ort;
            ctie_[c] = oct;
            return false;
        };

        if (rng_ && ((*rng_)() & 1)) {
            if (try_empty()) return true;
            return !aborted_ && try_fill();
        }
        if (try_fill()) return true;
        return !aborted_ && try_empty();
    }
};

Tables make_tables(const Params& p, const Group& g, Mode mode) {
    Tables t;
    const auto elems = enumerate(g);
    t.N = int(elems.size());
    t.add.resize(std::size_t(t.N) * t.N);
    t.neg.resize(t.N);
    for (int x = 0; x < t.N; ++x) {
        t.neg[x] = int(g.index_of(neg(elems[x]).coords()));
        for (int y = 0; y < t.N; ++y) t.add[x * t.N + y] = int(g.index_of((elems[x] + elems[y]).coords()));
    }
    const Element sigma = group_sum(g);
    t.omega_ok.assign(t.N, 0);
    t.delta_ok.assign(t.N, 0);
    for (int x = 0; x < t.N; ++x) {
        t.omega_ok[x] = scalar_mul(p.c * p.m, elems[x]) == sigma;
        t.delta_ok[x] = scalar_mul(p.c * p.n, elems[x]) == sigma;
    }
    // Translating by g moves omega by s*g; keep the least index of each coset.
    if (mode != Mode::Partial) {
        for (int x = 0; x < t.N; ++x) {
            if (!t.omega_ok[x]) continue;
            for (int y = 0; y < t.N; ++y)
                if (int(g.index_of((elems[x] + scalar_mul(p.s, elems[y])).coords())) < x) {
                    t.omega_ok[x] = 0;
                    break;
                }
        }
    }
    return t;
}

MRSInstance to_instance(const Params& p, const Group& g, const std::vector<int>& vals) {
    MRSInstance inst;
    inst.params = p;
    inst.group = g;
    for (std::int64_t a = 0; a < p.c; ++a) {
        PFArray::Builder b(p.m, p.n, g);
        for (std::int64_t i = 0; i < p.m; ++i)
            for (std::int64_t j = 0; j < p.n; ++j) {
                int v = vals[(a * p.m + i) * p.n + j];
                if (v >= 0) b.set(i, j, g.at(v));
            }
        inst.arrays.push_back(std::move(b).build());
    }
    auto rep = verify_mrs(inst);
    if (!rep.ok()) fail(ErrorCode::ConstructionFailed, "oracle produced an invalid witness: " + rep.summary());
    inst.omega = rep.omega;
    inst.delta = rep.delta;
    return inst;
}

}  // namespace

ExistenceVerdict oracle_search(const Params& p, const Group& g, const OracleOptions& opt) {
    if (auto why = necessary_conditions(p, g)) fail(ErrorCode::InvalidParams, *why);
    if (g.order() > 4096) fail(ErrorCode::Unsupported, "oracle is for small groups");
    Mode mode = Mode::Partial;
    if (opt.diagonal) {
        if (p.m != p.n || p.s != p.k) fail(ErrorCode::InvalidParams, "diagonal search needs m = n and s = k");
        mode = p.s == p.n ? Mode::Full : Mode::Diagonal;
    } else if (p.s == p.n && p.k == p.m) {
        mode = Mode::Full;
    }

    const Tables t = make_tables(p, g, mode);
    SearchCertificate cert;
    cert.method = "backtracking";
    auto has = [](const std::vector<char>& v) { return std::find(v.begin(), v.end(), 1) != v.end(); };
    if (opt.sum_prefilter && (!has(t.omega_ok) || !has(t.delta_ok))) {
        cert.method = "sum-condition";
        cert.exhaustive = true;
        auto v = verdict(Status::NotExists, reason::ORACLE, "no omega with cm*omega or delta with cn*delta = sum");
        v.certificate = cert;
        return v;
    }

    Shared sh;
    sh.budget = opt.budget;
    ExistenceVerdict v;
    v.reason = reason::ORACLE;

    if (opt.restarts) {
        std::mt19937_64 rng(opt.seed);
        Shared rs;
        rs.budget = UINT64_MAX;
        const std::uint64_t phase = opt.budget / 4;
        std::uint64_t spent = 0;
        for (std::uint64_t run = 1; spent < phase; ++run) {
            // Luby sequence 1 1 2 1 1 2 4 ...
            std::uint64_t len = 1, x = run;
            for (;;) {
                std::uint64_t kk = 1;
                while ((std::uint64_t{1} << kk) - 1 < x) ++kk;
                if ((std::uint64_t{1} << kk) - 1 == x) {
                    len = std::uint64_t{1} << (kk - 1);
                    break;
                }
                x -= (std::uint64_t{1} << (kk - 1)) - 1;
            }
            const std::uint64_t limit = std::min<std::uint64_t>(len * 1024, phase - spent);
            Search s(t, p, mode, rs);
            s.randomize(&rng, limit);
            const bool ok = s.run(-1);
            spent = rs.nodes.load();
            if (ok) {
                v.status = Status::Exists;
                v.witness = to_instance(p, g, s.values());
                cert.nodes = spent;
                cert.method = "random-restarts";
                v.certificate = cert;
                return v;
            }
            if (!s.aborted()) {
                // A randomized pass that finishes without aborting is still exhaustive.
                v.status = Status::NotExists;
                cert.nodes = spent;
                cert.exhaustive = true;
                v.certificate = cert;
                return v;
            }
        }
        sh.nodes = spent;
    }
    std::vector<std::vector<int>> found(t.N);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int b = next++;
            if (b >= t.N || sh.out_of_budget) return;
            if (b > sh.best.load()) return;
            Search s(t, p, mode, sh);
            if (s.run(b)) {
                found[b] = s.values();
                int cur = sh.best.load();
                while (b < cur && !sh.best.compare_exchange_weak(cur, b)) {
                }
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, unsigned(t.N)));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    cert.nodes = sh.nodes.load();
    const int best = sh.best.load();
    if (best != INT_MAX) {
        v.status = Status::Exists;
        v.witness = to_instance(p, g, found[best]);
        cert.exhaustive = false;
    } else if (sh.out_of_budget) {
        v.status = Status::Unknown;
        v.detail = "search budget exhausted";
    } else {
        v.status = Status::NotExists;
        cert.exhaustive = true;
    }
    v.certificate = cert;
    return v;
}

// ---------------------------------------------------------------------------------------------

std::vector<Group> abelian_groups(std::int64_t order) {
    if (order < 1) fail(ErrorCode::InvalidParams, "order must be positive");
    std::vector<std::pair<std::int64_t, int>> pf;
    std::int64_t x = order;
    for (std::int64_t q = 2; q * q <= x; ++q)
        if (x % q == 0) {
            int e = 0;
            while (x % q == 0) x /= q, ++e;
            pf.push_back({q, e});
        }
    if (x > 1) pf.push_back({x, 1});

    // Partitions of e, parts nonincreasing.
    std::function<void(int, int, std::vector<int>&, std::vector<std::vector<int>>&)> parts =
        [&](int left, int maxp, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
            if (left == 0) {
                out.push_back(cur);
                return;
            }
            for (int q = std::min(left, maxp); q >= 1; --q) {
                cur.push_back(q);
                parts(left - q, q, cur, out);
                cur.pop_back();
            }
        };
    std::vector<std::vector<std::vector<int>>> choices;
    for (auto [q, e] : pf) {
        std::vector<std::vector<int>> out;
        std::vector<int> cur;
        parts(e, e, cur, out);
        choices.push_back(out);
    }

    std::vector<Group> res;
    std::vector<std::size_t> idx(pf.size(), 0);
    for (;;) {
        std::vector<std::int64_t> inv;  // largest first
        for (std::size_t a = 0; a < pf.size(); ++a) {
            const auto& part = choices[a][idx[a]];
            if (inv.size() < part.size()) inv.resize(part.size(), 1);
            for (std::size_t r = 0; r < part.size(); ++r) {
                std::int64_t pw = 1;
                for (int z = 0; z < part[r]; ++z) pw *= pf[a].first;
                inv[r] *= pw;
            }
        }
        std::reverse(inv.begin(), inv.end());
        res.push_back(inv.empty() ? Group() : Group(inv));
        std::size_t a = 0;
        while (a < pf.size() && ++idx[a] == choices[a].size()) idx[a++] = 0;
        if (a == pf.size()) break;
    }
    return res;
}

std::vector<Params> admissible_params(std::int64_t order) {
    std::vector<Params> res;
    for (std::int64_t c = 1; c <= order; ++c) {
        if (order % c) continue;
        const std::int64_t nk = order / c;
        for (std::int64_t n = 2; n <= nk; ++n) {
            if (nk % n) continue;
            const std::int64_t k = nk / n;
            if (k < 2) continue;
            for (std::int64_t s = 2; s <= n; ++s) {
                if (nk % s) continue;
                const std::int64_t m = nk / s;
                if (m < k) continue;
                res.push_back({m, n, s, k, c});
            }
        }
    }
    return res;
}

ConsistencyReport cross_check(std::int64_t cap, const OracleOptions& opt,
                              const std::function<void(const CrossCheckEntry&)>& progress) {
    ConsistencyReport rep;
    for (std::int64_t order = 1; order <= cap; ++order) {
        const auto params = admissible_params(order);
        if (params.empty()) continue;
        for (const auto& g : abelian_groups(order)) {
            for (const auto& p : params) {
                CrossCheckEntry e{p, g, decide(p, g), oracle_search(p, g, opt), false};
                const auto ds = e.decided.status, os = e.oracle.status;
                if (ds != Status::Unknown && os != Status::Unknown && ds != os) {
                    e.contradiction = true;
                    ++rep.contradictions;
                }
                if (ds == Status::Unknown && os != Status::Unknown) ++rep.frontier;
                if (ds == Status::Unknown && os == Status::Unknown) ++rep.unresolved;
                if (e.decided.witness && !verify_mrs(*e.decided.witness).ok()) ++rep.witness_failures;
                if (p.s == p.n && p.k == p.m && os != Status::Unknown &&
                    (os == Status::Exists) != conjecture_predicts(p.m, p.n, g))
                    ++rep.conjecture_violations;
                if (progress) progress(e);
                rep.entries.push_back(std::move(e));
            }
        }
    }
    return rep;
}

nlohmann::json verdict_to_json(const ExistenceVerdict& v, bool with_witness) {
    nlohmann::json j;
    j["status"] = status_name(v.status);
    j["reason"] = v.reason;
    if (!v.detail.empty()) j["detail"] = v.detail;
    if (v.certificate)
        j["certificate"] = {{"nodes", v.certificate->nodes},
                            {"exhaustive", v.certificate->exhaustive},
                            {"method", v.certificate->method}};
    if (with_witness && v.witness) j["witness"] = instance_to_json(*v.witness);
    return j;
}

nlohmann::json report_to_json(const ConsistencyReport& r) {
    nlohmann::json j;
    j["cases"] = r.entries.size();
    j["contradictions"] = r.contradictions;
    j["frontier"] = r.frontier;
    j["unresolved"] = r.unresolved;
    j["witness_failures"] = r.witness_failures;
    j["conjecture_violations"] = r.conjecture_violations;
    auto& rows = j["entries"] = nlohmann::json::array();
    for (const auto& e : r.entries) {
        nlohmann::json ref = nullptr;
        if (e.decided.witness) ref = "decide";
        else if (e.oracle.witness) ref = "oracle";
        rows.push_back({{"params", e.params.to_string()},
                        {"group", e.group.to_string()},
                        {"status", status_name(e.decided.status)},
                        {"reason", e.decided.reason},
                        {"witness_ref", ref},
                        {"oracle", verdict_to_json(e.oracle, false)},
                        {"contradiction", e.contradiction}});
    }
    return j;
}

}  // namespace magicrect
