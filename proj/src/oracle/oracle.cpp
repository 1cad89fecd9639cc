#include "oracle/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace moment_fiber::oracle {

namespace {

std::uint64_t splitmix(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
    for (auto& s : s_) s = splitmix(seed);
}

std::uint64_t Rng::next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

long Rng::uniform(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return lo + static_cast<long>(x % span);
}

bool Rng::coin(unsigned percent) { return uniform(0, 99) < static_cast<long>(percent); }

// ---------------------------------------------------------------------------

namespace {

// Gauss-Jordan in place; returns pivot columns.
std::vector<std::size_t> reduce(RatRows& a, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
        std::size_t p = row;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[row]);
        const Rational inv = Rational(1) / a[row][c];
        for (auto& e : a[row]) e *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == row || a[i][c] == 0) continue;
            const Rational f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[row][j];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

RatRows weight_rows(const WeightMatrix& w, const IndexSet& rows) {
    RatRows out;
    for (std::size_t i : rows) {
        std::vector<Rational> v;
        for (std::size_t j = 0; j < w.r(); ++j) v.emplace_back(w.matrix()(i, j));
        out.push_back(std::move(v));
    }
    return out;
}

IndexSet from_mask(std::uint64_t mask, std::size_t n) {
    IndexSet out;
    for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) out.push_back(i);
    return out;
}

// Relations among the given rows: null space of the transpose.
std::vector<RatVector> relations(const WeightMatrix& w, const IndexSet& rows) {
    RatRows t(w.r(), std::vector<Rational>(rows.size()));
    for (std::size_t k = 0; k < rows.size(); ++k)
        for (std::size_t j = 0; j < w.r(); ++j) t[j][k] = Rational(w.matrix()(rows[k], j));
    return null_space(std::move(t), rows.size());
}

enum class CircuitSign { NotCircuit, Coherent, Mixed };

CircuitSign circuit_sign(const WeightMatrix& w, const IndexSet& rows) {
    const auto rel = relations(w, rows);
    if (rel.size() != 1) return CircuitSign::NotCircuit;
    bool pos = false, neg = false;
    for (const auto& q : rel.front()) {
        if (q == 0) return CircuitSign::NotCircuit;
        (q > 0 ? pos : neg) = true;
    }
    return pos && neg ? CircuitSign::Mixed : CircuitSign::Coherent;
}

// Union of the sign-coherent circuits inside `rows`, and whether one exists.
std::pair<IndexSet, bool> coherent_cover(const WeightMatrix& w, const IndexSet& rows) {
    const std::size_t k = rows.size();
    if (k > 20) throw CapabilityError("circuit enumeration limited to 20 rows");
    IndexSet cover;
    bool any = false;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
        IndexSet pick;
        for (std::size_t b = 0; b < k; ++b)
            if (mask >> b & 1) pick.push_back(rows[b]);
        if (circuit_sign(w, pick) == CircuitSign::Coherent) {
            any = true;
            for (std::size_t i : pick)
                if (std::find(cover.begin(), cover.end(), i) == cover.end()) cover.push_back(i);
        }
    }
    std::sort(cover.begin(), cover.end());
    return {cover, any};
}

}  // namespace

std::size_t rank_of(RatRows rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    return reduce(rows, cols).size();
}

std::size_t rank_of_rows(const WeightMatrix& w, const IndexSet& rows) { return rank_of(weight_rows(w, rows)); }

std::vector<RatVector> null_space(RatRows rows, std::size_t cols) {
    const auto pivots = reduce(rows, cols);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<RatVector> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RatVector v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -rows[k][f];
        out.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<IndexSet> brute_components(const WeightMatrix& w) {
    const std::size_t n = w.n();
    if (n > kMaxBruteComponents) throw CapabilityError("brute_components is limited to n <= 16");
    const std::size_t full = rank_of_rows(w, from_mask((std::uint64_t{1} << n) - 1, n));
    std::vector<IndexSet> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const IndexSet s = from_mask(mask, n);
        if (full - rank_of_rows(w, s) == n - s.size()) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct SubsetData {
    std::size_t rank = 0;
    CircuitSign sign = CircuitSign::NotCircuit;
};

// Restricted growth strings of length n.
template <class Fn>
bool for_each_partition(std::size_t n, Fn&& fn) {
    std::vector<std::size_t> a(n, 0), mx(n, 0);
    for (;;) {
        std::size_t blocks = n == 0 ? 0 : *std::max_element(a.begin(), a.end()) + 1;
        std::vector<std::uint64_t> parts(blocks, 0);
        for (std::size_t i = 0; i < n; ++i) parts[a[i]] |= std::uint64_t{1} << i;
        if (fn(parts)) return true;
        std::size_t i = n;
        while (i > 1 && a[i - 1] == mx[i - 1] + 1) --i;
        if (i <= 1) return false;
        ++a[i - 1];
        for (std::size_t k = i; k < n; ++k) {
            a[k] = 0;
            mx[k] = std::max(mx[k - 1], a[k - 1]);
        }
    }
}

}  // namespace

VisibilityResult brute_visible(const WeightMatrix& w) {
    const std::size_t n = w.n();
    if (n > kMaxBruteVisible) throw CapabilityError("brute_visible is limited to n <= 8");
    std::vector<SubsetData> data(std::size_t{1} << n);
    for (std::uint64_t mask = 0; mask < data.size(); ++mask) {
        const auto s = from_mask(mask, n);
        data[mask].rank = rank_of_rows(w, s);
        if (!s.empty()) data[mask].sign = circuit_sign(w, s);
    }
    const std::size_t full = data.back().rank;

    VisibleDecomposition found;
    const bool ok = for_each_partition(n, [&](const std::vector<std::uint64_t>& parts) {
        // choice 0: I_0 empty; choice c: I_0 is block c - 1
        for (std::size_t choice = 0; choice <= parts.size(); ++choice) {
            const std::size_t zero_pick = choice == 0 ? parts.size() : choice - 1;
            const std::uint64_t i0 = zero_pick < parts.size() ? parts[zero_pick] : 0;
            if (data[i0].rank != static_cast<std::size_t>(__builtin_popcountll(i0))) continue;
            std::size_t sum = data[i0].rank;
            bool good = true;
            for (std::size_t b = 0; b < parts.size() && good; ++b) {
                if (b == zero_pick) continue;
                good = data[parts[b]].sign == CircuitSign::Coherent;
                sum += data[parts[b]].rank;
            }
            if (!good || sum != full) continue;
            found.free_part = from_mask(i0, n);
            found.blocks.clear();
            for (std::size_t b = 0; b < parts.size(); ++b) {
                if (b == zero_pick) continue;
                VisibleBlock blk;
                blk.indices = from_mask(parts[b], n);
                RatVector rel = relations(w, blk.indices).front();
                if (rel.front() < 0)
                    for (auto& q : rel) q = -q;
                blk.relation = std::move(rel);
                found.blocks.push_back(std::move(blk));
            }
            return true;
        }
        return false;
    });
    if (ok) return found;
    return NotVisible{VisibilityCondition::DirectSum, "no partition satisfies the three conditions"};
}

bool verify_decomposition(const WeightMatrix& w, const VisibleDecomposition& d) {
    const std::size_t n = w.n();
    std::vector<int> seen(n, 0);
    for (std::size_t i : d.free_part) {
        if (i >= n) return false;
        ++seen[i];
    }
    for (const auto& b : d.blocks)
        for (std::size_t i : b.indices) {
            if (i >= n) return false;
            ++seen[i];
        }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) return false;

    std::size_t sum = rank_of_rows(w, d.free_part);
    if (sum != d.free_part.size()) return false;
    for (const auto& b : d.blocks) {
        const std::size_t rb = rank_of_rows(w, b.indices);
        if (rb + 1 != b.indices.size()) return false;
        sum += rb;
        if (b.relation.size() != b.indices.size()) return false;
        RatVector acc(w.r(), Rational(0));
        for (std::size_t k = 0; k < b.indices.size(); ++k) {
            if (b.relation[k] <= 0) return false;
            for (std::size_t j = 0; j < w.r(); ++j) acc[j] += b.relation[k] * Rational(w.matrix()(b.indices[k], j));
        }
        if (std::any_of(acc.begin(), acc.end(), [](const Rational& q) { return q != 0; })) return false;
    }
    IndexSet all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    return sum == rank_of_rows(w, all);
}

// ---------------------------------------------------------------------------

RatVector moment(const WeightMatrix& w, const PairPoint& p) {
    if (p.x.size() != w.n() || p.phi.size() != w.n()) throw InputError("pair length mismatch");
    RatVector out(w.r(), Rational(0));
    for (std::size_t i = 0; i < w.n(); ++i)
        for (std::size_t j = 0; j < w.r(); ++j) out[j] += Rational(w.matrix()(i, j)) * p.x[i] * p.phi[i];
    return out;
}

std::size_t tangent_dim(const WeightMatrix& w, const PairPoint& p) {
    const auto mu = moment(w, p);
    if (std::any_of(mu.begin(), mu.end(), [](const Rational& q) { return q != 0; })) {
        throw InputError("point is not in the null fiber");
    }
    const std::size_t n = w.n();
    RatRows jac(w.r(), std::vector<Rational>(2 * n));
    for (std::size_t j = 0; j < w.r(); ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const Rational s(w.matrix()(i, j));
            jac[j][i] = s * p.phi[i];
            jac[j][n + i] = s * p.x[i];
        }
    return 2 * n - rank_of(std::move(jac));
}

PairPoint random_fiber_point(const WeightMatrix& w, const IndexSet& support, std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t n = w.n();
    PairPoint p{RatVector(n, Rational(0)), RatVector(n, Rational(0))};
    for (std::size_t i : support) {
        long v = 0;
        while (v == 0) v = rng.uniform(-3, 3);
        p.x[i] = v;
    }
    // phi orthogonal to t.x: sum_i phi_i x_i s_i^j = 0 for every j.
    RatRows m(w.r(), std::vector<Rational>(n));
    for (std::size_t j = 0; j < w.r(); ++j)
        for (std::size_t i = 0; i < n; ++i) m[j][i] = p.x[i] * Rational(w.matrix()(i, j));
    for (const auto& v : null_space(std::move(m), n)) {
        const Rational c(rng.uniform(-3, 3));
        for (std::size_t i = 0; i < n; ++i) p.phi[i] += c * v[i];
    }
    return p;
}

bool brute_zero_in_hull(const WeightMatrix& w, const IndexSet& rows) { return coherent_cover(w, rows).second; }

bool brute_zero_in_relative_interior(const WeightMatrix& w, const IndexSet& rows) {
    return coherent_cover(w, rows).first.size() == rows.size();
}

std::size_t brute_quotient_dimension(const WeightMatrix& w) {
    IndexSet all(w.n());
    for (std::size_t i = 0; i < w.n(); ++i) all[i] = i;
    const auto cover = coherent_cover(w, all).first;
    return cover.size() - rank_of_rows(w, cover);
}

bool brute_polar(const WeightMatrix& w) {
    const std::size_t n = w.n();
    if (n > kMaxBruteVisible) throw CapabilityError("brute_polar is limited to n <= 8");
    const std::size_t target = brute_quotient_dimension(w);
    Rng rng(0x5eed + n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        RatVector v(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) v[i] = rng.uniform(1, 9);
        // annihilator of t.v, then the linear conditions on x
        RatRows tv(w.r(), std::vector<Rational>(n));
        for (std::size_t j = 0; j < w.r(); ++j)
            for (std::size_t i = 0; i < n; ++i) tv[j][i] = v[i] * Rational(w.matrix()(i, j));
        const auto ann = null_space(tv, n);
        RatRows cond;
        for (const auto& u : ann)
            for (std::size_t j = 0; j < w.r(); ++j) {
                std::vector<Rational> row(n);
                for (std::size_t i = 0; i < n; ++i) row[i] = u[i] * Rational(w.matrix()(i, j));
                cond.push_back(std::move(row));
            }
        const std::size_t dim = n - rank_of(std::move(cond));
        if (dim == target) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------

WeightMatrix random_weight_matrix(Rng& rng, std::size_t max_n, std::size_t max_r, long lo, long hi) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_n)));
    const std::size_t r = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_r)));
    IntMatrix s(n, r);
    const long style = rng.uniform(0, 4);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < r; ++j) s(i, j) = rng.uniform(lo, hi);
        if (i > 0 && rng.coin(style == 1 ? 50 : 15)) {
            // repeat or rescale an earlier row, possibly negated
            const std::size_t src = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(i) - 1));
            const long k = rng.coin(50) ? 1 : (rng.coin(50) ? -1 : 2);
            for (std::size_t j = 0; j < r; ++j) {
                Integer v = s(src, j) * k;
                s(i, j) = v > hi ? Integer(hi) : (v < lo ? Integer(lo) : v);
            }
        }
        if (rng.coin(style == 2 ? 40 : 8)) {
            for (std::size_t j = 0; j < r; ++j) s(i, j) = 0;
        }
        if (style == 3 && r > 1) {
            // block pattern: row i only touches one column group
            const std::size_t half = r / 2;
            const bool left = i % 2 == 0;
            for (std::size_t j = 0; j < r; ++j)
                if ((j < half) != left) s(i, j) = 0;
        }
        if (style == 4) {
            for (std::size_t j = 0; j < r; ++j)
                if (rng.coin(40)) s(i, j) = 0;
        }
    }
    return WeightMatrix(std::move(s));
}

HullQuery random_hull_query(Rng& rng, std::size_t max_dim, std::size_t max_points, long lo, long hi) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_dim)));
    const std::size_t k = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_points)));
    IntMatrix m(k, d);
    const bool sparse = rng.coin(30);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t j = 0; j < d; ++j) m(a, j) = sparse && rng.coin(50) ? 0 : rng.uniform(lo, hi);
    if (k > 1 && rng.coin(25)) {
        // plant a negated point so that 0 is often on a segment
        for (std::size_t j = 0; j < d; ++j) m(k - 1, j) = -m(0, j);
    }
    return HullQuery(std::move(m));
}

// ---------------------------------------------------------------------------

namespace {

void check_vinberg(const theta::VinbergClassicalInput& in) {
    if (in.m0 < 1 || static_cast<int>(in.k.size()) != in.m0) throw InputError("bad block data");
}

}  // namespace

long vinberg_delta_sums(const theta::VinbergClassicalInput& in) {
    check_vinberg(in);
    const int m0 = in.m0;
    long adj = 0, sq = 0;
    for (int j = 0; j < m0; ++j) {
        adj += static_cast<long>(in.k[j]) * in.k[(j + 1) % m0];
        sq += static_cast<long>(in.k[j]) * in.k[j];
    }
    if (in.kase == theta::VinbergCase::First) return adj - (sq - 1);
    const int m_prime = in.eta[0] == 1 ? m0 / 2 : (m0 - 1) / 2;
    const long twice = adj - sq + in.eps[0] * in.eta[0] * in.k[0] + in.eps[1] * in.eta[1] * in.k[m_prime];
    if (twice % 2 != 0) throw InputError("odd");
    return twice / 2;
}

long vinberg_delta_eigen(const theta::VinbergClassicalInput& in) {
    check_vinberg(in);
    const int m0 = in.m0;
    if (in.kase == theta::VinbergCase::First) {
        // gl(V) graded by differences of eigen-angles j/m0; remove the centre.
        std::vector<long> dims(m0, 0);
        for (int a = 0; a < m0; ++a)
            for (int b = 0; b < m0; ++b) dims[((b - a) % m0 + m0) % m0] += static_cast<long>(in.k[a]) * in.k[b];
        dims[0] -= 1;
        return dims[1 % m0] - dims[0];
    }
    if (in.kase == theta::VinbergCase::Fourth) throw CapabilityError("eigen model covers the first three cases");
    // Angles in units of 1/(2 m0); so(V) = wedge^2 V, sp(V) = S^2 V.
    const int units = 2 * m0;
    const int c = in.kase == theta::VinbergCase::Second ? -1 : 1;
    std::vector<long> twice(m0, 0);
    std::vector<int> u(m0);
    for (int j = 0; j < m0; ++j) u[j] = in.eta[0] == 1 ? 2 * j : 2 * j + 1;
    for (int k = 0; k < m0; ++k) {
        long sum = 0;
        for (int a = 0; a < m0; ++a) {
            for (int b = 0; b < m0; ++b)
                if ((u[a] + u[b] - 2 * k) % units == 0) sum += static_cast<long>(in.k[a]) * in.k[b];
            if ((2 * u[a] - 2 * k) % units == 0) sum += c * in.k[a];
        }
        twice[k] = sum;
    }
    const long d = twice[1 % m0] - twice[0];
    if (d % 2 != 0) throw InputError("odd");
    return d / 2;
}

}  // namespace moment_fiber::oracle
