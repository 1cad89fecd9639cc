#ifndef MOMENT_FIBER_THETA_HPP
#define MOMENT_FIBER_THETA_HPP

/*
 * Combinatorics of theta-groups: finite and affine root systems, Kac
 * diagrams, the Z_m-gradings they define, and Vinberg's dimension formulas
 * for classical gradings.
 *
 * Node numbering. Finite simple roots follow Bourbaki (alpha_1..alpha_n).
 * Internally an affine diagram lists the finite nodes first and the affine
 * node alpha_0 last. Twisted diagrams use Kac's numbering alpha_0..alpha_n,
 * again stored as alpha_1..alpha_n, alpha_0.
 *
 * A Kac diagram with labels v_i defines the automorphism of order
 *
 *     m = l * sum_i a_i v_i          (a_i the marks, l the twist)
 *
 * and the degree of an affine root sum_i c_i alpha_i is sum_i c_i v_i. The
 * graded piece h_j (j mod m) is the span of the affine root spaces of degree
 * j, taken over one period, plus the fixed Cartan subalgebra in degree 0.
 */

#include "moment_fiber/exactlin.hpp"
#include "moment_fiber/parallel.hpp"

#include <array>
#include <functional>
#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace moment_fiber::theta {

enum class Family { A, B, C, D, E, F, G };

struct CartanType {
    Family family = Family::A;
    int rank = 1;
    friend bool operator==(const CartanType&, const CartanType&) = default;
};

using CartanMatrix = std::vector<std::vector<int>>;
using Root = std::vector<int>;

inline char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

inline std::string type_name(CartanType t) { return std::string(1, family_letter(t.family)) + std::to_string(t.rank); }

inline CartanType parse_type(const std::string& s) {
    if (s.size() < 2) throw InputError("bad Lie type '" + s + "'");
    const std::string letters = "ABCDEFG";
    const auto pos = letters.find(static_cast<char>(std::toupper(static_cast<unsigned char>(s[0]))));
    if (pos == std::string::npos) throw InputError("bad Lie type '" + s + "'");
    int rank = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw InputError("bad Lie type '" + s + "'");
        rank = rank * 10 + (s[i] - '0');
        if (rank > 1000) throw InputError("bad Lie type '" + s + "'");
    }
    return {static_cast<Family>(pos), rank};
}

inline constexpr int kMaxClassicalRank = 8;

inline bool is_supported(CartanType t) {
    switch (t.family) {
        case Family::A: return t.rank >= 1 && t.rank <= kMaxClassicalRank;
        case Family::B: return t.rank >= 2 && t.rank <= kMaxClassicalRank;
        case Family::C: return t.rank >= 2 && t.rank <= kMaxClassicalRank;
        case Family::D: return t.rank >= 4 && t.rank <= kMaxClassicalRank;
        case Family::E: return t.rank >= 6 && t.rank <= 8;
        case Family::F: return t.rank == 4;
        case Family::G: return t.rank == 2;
    }
    return false;
}

inline void require_supported(CartanType t) {
    if (!is_supported(t)) throw InputError("unsupported simple type " + type_name(t));
}

// ---------------------------------------------------------------------------
// Embedded data

namespace detail {

inline void bond(CartanMatrix& a, int i, int j) {
    a[i][j] = -1;
    a[j][i] = -1;
}

// Multiple bond; `short_node` is the shorter root.
inline void multi_bond(CartanMatrix& a, int short_node, int long_node, int k) {
    a[short_node][long_node] = -k;
    a[long_node][short_node] = -1;
}

inline CartanMatrix identity_cartan(int n) {
    CartanMatrix a(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    return a;
}

}  // namespace detail

// Convention: a[i][j] = <alpha_j, alpha_i^vee> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i).
inline CartanMatrix finite_cartan(CartanType t) {
    require_supported(t);
    const int n = t.rank;
    CartanMatrix a = detail::identity_cartan(n);
    switch (t.family) {
        case Family::A:
            for (int i = 0; i + 1 < n; ++i) detail::bond(a, i, i + 1);
            break;
        case Family::B:
            for (int i = 0; i + 2 < n; ++i) detail::bond(a, i, i + 1);
            detail::multi_bond(a, n - 1, n - 2, 2);
            break;
        case Family::C:
            for (int i = 0; i + 2 < n; ++i) detail::bond(a, i, i + 1);
            detail::multi_bond(a, n - 2, n - 1, 2);
            break;
        case Family::D:
            for (int i = 0; i + 3 < n; ++i) detail::bond(a, i, i + 1);
            detail::bond(a, n - 3, n - 2);
            detail::bond(a, n - 3, n - 1);
            break;
        case Family::E:
            detail::bond(a, 0, 2);
            detail::bond(a, 1, 3);
            for (int i = 2; i + 1 < n; ++i) detail::bond(a, i, i + 1);
            break;
        case Family::F:
            detail::bond(a, 0, 1);
            detail::multi_bond(a, 2, 1, 2);
            detail::bond(a, 2, 3);
            break;
        case Family::G:
            detail::multi_bond(a, 0, 1, 3);
            break;
    }
    return a;
}

// Squared lengths of the simple roots, long roots normalized to 2 except
// where a short root forces a larger scale (B, F4: long = 4; G2: long = 6).
inline std::vector<int> root_lengths(CartanType t) {
    require_supported(t);
    const int n = t.rank;
    switch (t.family) {
        case Family::B: {
            std::vector<int> l(n, 4);
            l[n - 1] = 2;
            return l;
        }
        case Family::C: {
            std::vector<int> l(n, 2);
            l[n - 1] = 4;
            return l;
        }
        case Family::F: return {4, 4, 2, 2};
        case Family::G: return {2, 6};
        default: return std::vector<int>(n, 2);
    }
}

// Coefficients of the highest root (Bourbaki).
inline std::vector<int> finite_marks(CartanType t) {
    require_supported(t);
    const int n = t.rank;
    switch (t.family) {
        case Family::A: return std::vector<int>(n, 1);
        case Family::B: {
            std::vector<int> m(n, 2);
            m[0] = 1;
            return m;
        }
        case Family::C: {
            std::vector<int> m(n, 2);
            m[n - 1] = 1;
            return m;
        }
        case Family::D: {
            std::vector<int> m(n, 2);
            m[0] = m[n - 2] = m[n - 1] = 1;
            return m;
        }
        case Family::E:
            if (n == 6) return {1, 2, 2, 3, 2, 1};
            if (n == 7) return {2, 2, 3, 4, 3, 2, 1};
            return {2, 3, 4, 6, 5, 4, 3, 2};
        case Family::F: return {2, 3, 4, 2};
        case Family::G: return {3, 2};
    }
    return {};
}

inline std::size_t expected_root_count(CartanType t) {
    require_supported(t);
    const std::size_t n = static_cast<std::size_t>(t.rank);
    switch (t.family) {
        case Family::A: return n * (n + 1);
        case Family::B:
        case Family::C: return 2 * n * n;
        case Family::D: return 2 * n * (n - 1);
        case Family::E: return n == 6 ? 72 : (n == 7 ? 126 : 240);
        case Family::F: return 48;
        case Family::G: return 12;
    }
    return 0;
}

inline int coxeter_number(CartanType t) {
    int h = 1;
    for (int m : finite_marks(t)) h += m;
    return h;
}

// ---------------------------------------------------------------------------
// Root closure

inline int pairing(const CartanMatrix& a, const Root& beta, std::size_t i) {
    int s = 0;
    for (std::size_t j = 0; j < beta.size(); ++j) s += beta[j] * a[i][j];
    return s;
}

inline int height(const Root& r) {
    int h = 0;
    for (int c : r) h += c;
    return h;
}

// Positive roots of the Kac-Moody algebra with Cartan matrix `a`, grown by
// height through root strings: for a root beta and simple alpha_i, with p the
// number of steps beta - alpha_i, beta - 2 alpha_i, ... that stay roots,
// beta + alpha_i is a root iff p - <beta, alpha_i^vee> > 0. `keep` prunes the
// search (required when the algebra is not of finite type); it must be
// monotone: if it rejects beta it rejects every beta + alpha_i.
inline std::vector<Root> positive_roots(const CartanMatrix& a, const std::function<bool(const Root&)>& keep = {},
                                        std::size_t limit = 200000) {
    const std::size_t n = a.size();
    std::set<Root> known;
    std::vector<Root> level;
    for (std::size_t i = 0; i < n; ++i) {
        Root r(n, 0);
        r[i] = 1;
        if (keep && !keep(r)) continue;
        known.insert(r);
        level.push_back(r);
    }
    std::vector<Root> out = level;
    while (!level.empty()) {
        std::set<Root> next;
        for (const auto& beta : level) {
            for (std::size_t i = 0; i < n; ++i) {
                int p = 0;
                Root down = beta;
                for (;;) {
                    down[i] -= 1;
                    if (down[i] < 0 || !known.count(down)) break;
                    ++p;
                }
                if (p - pairing(a, beta, i) <= 0) continue;
                Root up = beta;
                up[i] += 1;
                if (known.count(up) || next.count(up)) continue;
                if (keep && !keep(up)) continue;
                next.insert(up);
            }
        }
        level.assign(next.begin(), next.end());
        for (const auto& r : level) {
            known.insert(r);
            out.push_back(r);
        }
        if (out.size() > limit) throw std::logic_error("root closure exceeded its size limit");
    }
    return out;
}

struct RootSystem {
    CartanType type;
    CartanMatrix cartan;
    std::vector<Root> positive;  // by height, then lexicographic
    std::vector<Root> roots;     // positive then negative
    std::vector<int> marks;      // highest root coefficients
    std::vector<int> affine_marks;  // marks, then 1 for alpha_0
    Root highest_root;

    std::size_t dimension() const { return roots.size() + static_cast<std::size_t>(type.rank); }
};

inline RootSystem build_root_system(CartanType t) {
    require_supported(t);
    RootSystem rs;
    rs.type = t;
    rs.cartan = finite_cartan(t);
    rs.positive = positive_roots(rs.cartan);
    rs.roots = rs.positive;
    for (const auto& r : rs.positive) {
        Root neg(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
        rs.roots.push_back(std::move(neg));
    }
    rs.highest_root = rs.positive.back();
    rs.marks = finite_marks(t);
    rs.affine_marks = rs.marks;
    rs.affine_marks.push_back(1);
    if (rs.roots.size() != expected_root_count(t)) throw std::logic_error("root closure gave the wrong count");
    if (rs.highest_root != rs.marks) throw std::logic_error("highest root disagrees with the marks table");
    return rs;
}

inline RootSystem build_root_system(Family f, int rank) { return build_root_system(CartanType{f, rank}); }

// ---------------------------------------------------------------------------
// Affine diagrams

struct AffineDiagram {
    CartanType base;  // type of the Lie algebra being graded
    int twist = 1;
    CartanMatrix cartan;  // internal order: alpha_1..alpha_n, alpha_0
    std::vector<int> marks;
    std::size_t lie_dimension = 0;
    int fixed_rank = 0;  // rank of the fixed-point Cartan (node count - 1)
    // Multiplicity of the imaginary root k*delta for k = 1..twist-1.
    std::vector<int> imaginary_multiplicity;

    std::size_t nodes() const { return cartan.size(); }
};

inline std::string diagram_name(CartanType base, int twist) {
    return type_name(base) + "^(" + std::to_string(twist) + ")";
}

namespace detail {

inline AffineDiagram untwisted(CartanType t) {
    const RootSystem rs = build_root_system(t);
    const int n = t.rank;
    const auto len = root_lengths(t);
    const CartanMatrix& a = rs.cartan;
    // (theta, alpha_j) with (alpha_i, alpha_j) = a[i][j] len_i / 2.
    std::vector<int> theta_dot(n, 0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) theta_dot[j] += rs.highest_root[i] * a[i][j] * len[i];
    for (auto& v : theta_dot) v /= 2;
    int theta_sq = 0;
    for (int i = 0; i < n; ++i) theta_sq += rs.highest_root[i] * theta_dot[i];

    AffineDiagram d;
    d.base = t;
    d.twist = 1;
    d.cartan = identity_cartan(n + 1);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) d.cartan[i][j] = a[i][j];
        if ((2 * theta_dot[j]) % theta_sq != 0 || (2 * theta_dot[j]) % len[j] != 0) {
            throw std::logic_error("non-integral affine Cartan entry");
        }
        d.cartan[n][j] = -2 * theta_dot[j] / theta_sq;
        d.cartan[j][n] = -2 * theta_dot[j] / len[j];
    }
    d.marks = rs.affine_marks;
    d.lie_dimension = rs.dimension();
    d.fixed_rank = n;
    return d;
}

// Chain alpha_0 - alpha_1 - ... - alpha_l in Kac numbering, mapped to the
// internal order (alpha_0 last).
inline int kac_index(int kac, int l) { return kac == 0 ? l : kac - 1; }

inline AffineDiagram twisted(CartanType t, int twist) {
    AffineDiagram d;
    d.base = t;
    d.twist = twist;
    const RootSystem rs = build_root_system(t);
    d.lie_dimension = rs.dimension();
    const int big_n = t.rank;

    auto make = [&](int l) {
        d.cartan = identity_cartan(l + 1);
        d.fixed_rank = l;
        d.marks.assign(l + 1, 0);
    };
    auto chain = [&](int from, int to, int l) {
        for (int i = from; i < to; ++i) bond(d.cartan, kac_index(i, l), kac_index(i + 1, l));
    };
    auto mbond = [&](int short_kac, int long_kac, int k, int l) {
        multi_bond(d.cartan, kac_index(short_kac, l), kac_index(long_kac, l), k);
    };
    auto set_marks = [&](const std::vector<int>& kac_marks, int l) {
        for (int i = 0; i <= l; ++i) d.marks[kac_index(i, l)] = kac_marks[i];
    };

    bool a_even = false;
    if (twist == 2 && t.family == Family::A && big_n % 2 == 0) {
        a_even = true;
        const int l = big_n / 2;
        make(l);
        if (l == 1) {
            mbond(0, 1, 4, l);
            set_marks({2, 1}, l);
        } else {
            chain(0, l, l);
            mbond(0, 1, 2, l);
            mbond(l - 1, l, 2, l);
            std::vector<int> m(l + 1, 2);
            m[l] = 1;
            set_marks(m, l);
        }
    } else if (twist == 2 && t.family == Family::A && big_n == 3) {
        // A_3^(2) = D_3^(2).
        make(2);
        chain(0, 2, 2);
        mbond(0, 1, 2, 2);
        mbond(2, 1, 2, 2);
        set_marks({1, 1, 1}, 2);
    } else if (twist == 2 && t.family == Family::A && big_n % 2 == 1) {
        const int l = (big_n + 1) / 2;
        make(l);
        bond(d.cartan, kac_index(0, l), kac_index(2, l));
        chain(1, l, l);
        mbond(l - 1, l, 2, l);
        std::vector<int> m(l + 1, 2);
        m[0] = m[1] = m[l] = 1;
        set_marks(m, l);
    } else if (twist == 2 && t.family == Family::D) {
        const int l = big_n - 1;
        make(l);
        chain(0, l, l);
        mbond(0, 1, 2, l);
        mbond(l, l - 1, 2, l);
        set_marks(std::vector<int>(l + 1, 1), l);
    } else if (twist == 2 && t.family == Family::E && big_n == 6) {
        make(4);
        chain(0, 4, 4);
        mbond(2, 3, 2, 4);
        set_marks({1, 2, 3, 2, 1}, 4);
    } else if (twist == 3 && t.family == Family::D && big_n == 4) {
        make(2);
        chain(0, 2, 2);
        mbond(1, 2, 3, 2);
        set_marks({1, 2, 1}, 2);
    } else {
        throw InputError("no twisted affine diagram " + diagram_name(t, twist));
    }

    const int per_k = a_even ? d.fixed_rank : (big_n - d.fixed_rank) / (twist - 1);
    d.imaginary_multiplicity.assign(static_cast<std::size_t>(twist - 1), per_k);
    return d;
}

}  // namespace detail

inline AffineDiagram affine_diagram(CartanType base, int twist) {
    require_supported(base);
    if (twist == 1) return detail::untwisted(base);
    if (twist == 2 || twist == 3) return detail::twisted(base, twist);
    throw InputError("twist must be 1, 2 or 3");
}

// ---------------------------------------------------------------------------
// Kac diagrams and gradings

struct KacDiagram {
    CartanType base;
    int twist = 1;
    std::vector<int> labels;  // internal order: alpha_1..alpha_n, alpha_0
    friend bool operator==(const KacDiagram&, const KacDiagram&) = default;
};

struct GradedDims {
    int m = 1;
    std::vector<long> dims;  // dims[j] = dim h_j, j = 0..m-1

    long operator[](long j) const { return dims[static_cast<std::size_t>(((j % m) + m) % m)]; }
    long delta() const { return (*this)[1] - (*this)[0]; }
    friend bool operator==(const GradedDims&, const GradedDims&) = default;
};

struct GradingOptions {
    // Twisted diagrams other than the all-ones labeling.
    bool general_twisted = false;
};

inline void validate(const KacDiagram& d, const AffineDiagram& aff) {
    if (d.labels.size() != aff.nodes()) {
        throw InputError(diagram_name(d.base, d.twist) + " has " + std::to_string(aff.nodes()) + " nodes, got " +
                         std::to_string(d.labels.size()) + " labels");
    }
    bool any = false;
    for (int v : d.labels) {
        if (v < 0) throw InputError("Kac labels must be nonnegative");
        any = any || v != 0;
    }
    if (!any) throw InputError("a Kac diagram needs at least one nonzero label");
}

inline int kac_order(const KacDiagram& d) {
    const auto aff = affine_diagram(d.base, d.twist);
    validate(d, aff);
    int s = 0;
    for (std::size_t i = 0; i < aff.nodes(); ++i) s += aff.marks[i] * d.labels[i];
    return d.twist * s;
}

inline KacDiagram all_ones(CartanType base, int twist) {
    const auto aff = affine_diagram(base, twist);
    return {base, twist, std::vector<int>(aff.nodes(), 1)};
}

inline bool is_all_ones(const KacDiagram& d) {
    return std::all_of(d.labels.begin(), d.labels.end(), [](int v) { return v == 1; });
}

inline int root_degree(const Root& r, const std::vector<int>& labels) {
    int s = 0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r[i] * labels[i];
    return s;
}

// Grading from the affine roots of one period: real roots of degree in
// [0, m), imaginary roots k*delta with their multiplicities, and the fixed
// Cartan subalgebra in degree 0. Works for twisted and untwisted diagrams.
inline GradedDims loop_graded_dims(const KacDiagram& d) {
    const auto aff = affine_diagram(d.base, d.twist);
    validate(d, aff);
    const int m = kac_order(d);
    auto keep = [&](const Root& r) { return root_degree(r, d.labels) < m; };
    const auto roots = positive_roots(aff.cartan, keep);

    GradedDims g;
    g.m = m;
    g.dims.assign(static_cast<std::size_t>(m), 0);
    g.dims[0] += aff.fixed_rank;
    const int delta_deg = m / d.twist;
    for (const auto& r : roots) {
        // k*delta has coefficients k*marks.
        const int k = r[0] / aff.marks[0];
        bool imaginary = r[0] % aff.marks[0] == 0 && k > 0;
        for (std::size_t i = 0; imaginary && i < r.size(); ++i) imaginary = r[i] == k * aff.marks[i];
        const int deg = root_degree(r, d.labels);
        if (imaginary) {
            if (deg != k * delta_deg) throw std::logic_error("imaginary root degree mismatch");
            g.dims[static_cast<std::size_t>(deg)] += aff.imaginary_multiplicity.at(static_cast<std::size_t>(k - 1));
        } else if (deg == 0) {
            g.dims[0] += 2;  // the root and its negative
        } else {
            g.dims[static_cast<std::size_t>(deg)] += 1;
        }
    }
    return g;
}

// Untwisted gradings from the finite roots: alpha = sum_{i>=1} k_i alpha_i
// has degree sum k_i v_i mod m.
inline GradedDims finite_graded_dims(const KacDiagram& d) {
    if (d.twist != 1) throw InputError("finite-root grading formula applies to untwisted diagrams only");
    const auto aff = affine_diagram(d.base, 1);
    validate(d, aff);
    const RootSystem rs = build_root_system(d.base);
    const int m = kac_order(d);
    GradedDims g;
    g.m = m;
    g.dims.assign(static_cast<std::size_t>(m), 0);
    g.dims[0] += d.base.rank;
    long zero_roots = 0;
    for (const auto& r : rs.roots) {
        const int deg = root_degree(r, std::vector<int>(d.labels.begin(), d.labels.end() - 1));
        const int j = ((deg % m) + m) % m;
        g.dims[static_cast<std::size_t>(j)] += 1;
        if (j == 0) ++zero_roots;
    }
    // The degree-0 roots are the roots of the subdiagram of 0-labelled nodes.
    std::vector<std::size_t> zero_nodes;
    for (std::size_t i = 0; i < aff.nodes(); ++i)
        if (d.labels[i] == 0) zero_nodes.push_back(i);
    CartanMatrix sub(zero_nodes.size(), std::vector<int>(zero_nodes.size()));
    for (std::size_t i = 0; i < zero_nodes.size(); ++i)
        for (std::size_t j = 0; j < zero_nodes.size(); ++j) sub[i][j] = aff.cartan[zero_nodes[i]][zero_nodes[j]];
    const long sub_roots = zero_nodes.empty() ? 0 : 2 * static_cast<long>(positive_roots(sub).size());
    if (sub_roots != zero_roots) throw std::logic_error("degree-0 roots disagree with the 0-labelled subdiagram");
    return g;
}

inline GradedDims graded_dims(const KacDiagram& d, const GradingOptions& opts = {}) {
    if (d.twist == 1) return finite_graded_dims(d);
    if (!is_all_ones(d) && !opts.general_twisted) {
        throw CapabilityError("twisted diagram " + diagram_name(d.base, d.twist) +
                              " with a labeling other than all ones needs the general-twisted capability");
    }
    return loop_graded_dims(d);
}

struct ScanEntry {
    KacDiagram diagram;
    int m = 0;
    long delta = 0;
};

// All {0,1}-labelings (at least one 1) whose delta = dim h_1 - dim h_0
// satisfies `accept`, in increasing order of the labeling read as a binary
// number (node 0 least significant).
inline std::vector<ScanEntry> scan_labelings(CartanType base, int twist, const std::function<bool(long)>& accept,
                                             const GradingOptions& opts = {}, std::size_t jobs = 1) {
    const auto aff = affine_diagram(base, twist);
    const std::size_t nodes = aff.nodes();
    const std::size_t total = (std::size_t{1} << nodes) - 1;
    std::vector<std::optional<ScanEntry>> found(total);
    parallel_for(total, jobs, [&](std::size_t idx) {
        const std::size_t mask = idx + 1;
        KacDiagram d{base, twist, std::vector<int>(nodes, 0)};
        for (std::size_t i = 0; i < nodes; ++i) d.labels[i] = (mask >> i) & 1 ? 1 : 0;
        if (twist != 1 && !opts.general_twisted && !is_all_ones(d)) return;
        const auto g = graded_dims(d, opts);
        if (accept(g.delta())) found[idx] = ScanEntry{d, g.m, g.delta()};
    });
    std::vector<ScanEntry> out;
    for (auto& f : found)
        if (f) out.push_back(std::move(*f));
    return out;
}

inline std::vector<KacDiagram> rank1_dim_filter(CartanType base, int twist, const GradingOptions& opts = {},
                                                std::size_t jobs = 1) {
    std::vector<KacDiagram> out;
    for (auto& e : scan_labelings(base, twist, [](long dl) { return dl == 1; }, opts, jobs)) {
        out.push_back(std::move(e.diagram));
    }
    return out;
}

// Untwisted E7/E8 labelings with dim h_1 - dim h_0 >= 2.
inline std::vector<ScanEntry> levi_order_scan(CartanType base, std::size_t jobs = 1) {
    if (base.family != Family::E || (base.rank != 7 && base.rank != 8)) {
        throw InputError("levi_order_scan is defined for E7 and E8");
    }
    return scan_labelings(base, 1, [](long dl) { return dl >= 2; }, {}, jobs);
}

// ---------------------------------------------------------------------------
// Node order used for labels on the command line

enum class NodeOrder {
    Display,   // E types: chain nodes, then the branch node alpha_2, then alpha_0
    Bourbaki,  // alpha_1..alpha_n, then alpha_0 (Kac numbering for twisted)
};

// position in the user's label list -> internal node index
inline std::vector<std::size_t> label_positions(CartanType base, int twist, NodeOrder order) {
    const auto aff = affine_diagram(base, twist);
    const std::size_t nodes = aff.nodes();
    std::vector<std::size_t> pos(nodes);
    for (std::size_t i = 0; i < nodes; ++i) pos[i] = i;
    if (order == NodeOrder::Display && twist == 1 && base.family == Family::E) {
        // alpha_1, alpha_3, ..., alpha_n, alpha_2, alpha_0
        pos.clear();
        pos.push_back(0);
        for (int i = 2; i < base.rank; ++i) pos.push_back(static_cast<std::size_t>(i));
        pos.push_back(1);
        pos.push_back(static_cast<std::size_t>(base.rank));
    }
    return pos;
}

inline KacDiagram diagram_from_user_labels(CartanType base, int twist, const std::vector<int>& user_labels,
                                           NodeOrder order = NodeOrder::Display) {
    const auto pos = label_positions(base, twist, order);
    if (user_labels.size() != pos.size()) {
        throw InputError(diagram_name(base, twist) + " needs " + std::to_string(pos.size()) + " labels, got " +
                         std::to_string(user_labels.size()));
    }
    KacDiagram d{base, twist, std::vector<int>(pos.size(), 0)};
    for (std::size_t p = 0; p < pos.size(); ++p) d.labels[pos[p]] = user_labels[p];
    return d;
}

inline std::vector<int> user_labels(const KacDiagram& d, NodeOrder order = NodeOrder::Display) {
    const auto pos = label_positions(d.base, d.twist, order);
    std::vector<int> out(pos.size());
    for (std::size_t p = 0; p < pos.size(); ++p) out[p] = d.labels[pos[p]];
    return out;
}

// ---------------------------------------------------------------------------
// Vinberg's classical gradings

enum class VinbergCase { First = 1, Second = 2, Third = 3, Fourth = 4 };

// Blocks k_j = dim V(lambda_j), lambda_j = lambda_0 omega_0^j, j in Z_{m0}.
// eta_nu = 1 iff nu in S, for nu = 1 (index 0) and nu = -1 (index 1).
struct VinbergClassicalInput {
    VinbergCase kase = VinbergCase::First;
    int m0 = 1;
    std::vector<int> k;
    std::array<int, 2> eta{1, 1};
    std::array<int, 2> eps{1, 1};
};

inline std::array<int, 2> case_epsilon(VinbergCase c) {
    switch (c) {
        case VinbergCase::Second: return {1, 1};
        case VinbergCase::Third: return {-1, -1};
        case VinbergCase::Fourth: return {1, -1};
        case VinbergCase::First: break;
    }
    return {0, 0};
}

// eta forced by m0 and the choice lambda_0 in {1, exp(i pi / m0)}.
inline std::array<int, 2> consistent_eta(int m0, bool lambda0_is_one) {
    if (lambda0_is_one) return {1, m0 % 2 == 0 ? 1 : -1};
    return {-1, m0 % 2 == 1 ? 1 : -1};
}

// j-bar: lambda_{j-bar} is the complex conjugate of lambda_j.
inline int conjugate_index(int j, int m0, int eta1) {
    const int v = eta1 == 1 ? -j : -j - 1;
    return ((v % m0) + m0) % m0;
}

// m': an index where Re(lambda_j) is minimal.
inline int minimal_real_index(int m0, int eta1) { return eta1 == 1 ? m0 / 2 : (m0 - 1) / 2; }

inline void validate(const VinbergClassicalInput& in) {
    if (in.m0 < 1) throw InputError("m0 must be positive");
    if (static_cast<int>(in.k.size()) != in.m0) throw InputError("k must have m0 entries");
    for (int kj : in.k)
        if (kj < 0) throw InputError("block dimensions must be nonnegative");
    if (in.kase == VinbergCase::First) {
        // with m0 = 1 the grading is trivial and the formula does not apply
        if (in.m0 < 2) throw InputError("the first case needs m0 >= 2");
        return;
    }
    if (in.eps != case_epsilon(in.kase)) throw InputError("eps does not match the case");
    if ((in.eta[0] != 1 && in.eta[0] != -1) || in.eta != consistent_eta(in.m0, in.eta[0] == 1)) {
        throw InputError("eta is inconsistent with the parity of m0");
    }
    for (int j = 0; j < in.m0; ++j) {
        if (in.k[j] != in.k[conjugate_index(j, in.m0, in.eta[0])]) {
            throw InputError("block dimensions violate the duality k_j = k_jbar at j = " + std::to_string(j));
        }
    }
}

// dim h_1 - dim h_0.
inline long vinberg_delta(const VinbergClassicalInput& in) {
    validate(in);
    const int m0 = in.m0;
    long sq = 0;
    for (int j = 0; j < m0; ++j) {
        const long dk = in.k[j] - in.k[(j + 1) % m0];
        sq += dk * dk;
    }
    if (in.kase == VinbergCase::First) return 1 - sq / 2;
    const long km = in.k[minimal_real_index(m0, in.eta[0])];
    const long four_delta =
        -sq + 2L * in.eps[0] * in.eta[0] * in.k[0] + 2L * in.eps[1] * in.eta[1] * km;
    if (four_delta % 4 != 0) throw InputError("block data does not give an integral dimension difference");
    return four_delta / 4;
}

}  // namespace moment_fiber::theta

#endif  // MOMENT_FIBER_THETA_HPP
