#ifndef MOMENT_FIBER_TORUS_HPP
#define MOMENT_FIBER_TORUS_HPP

/*
 * Decision procedures for a torus T = (C^*)^r acting diagonally on V = C^n,
 * given by its n x r weight matrix S (row i is the weight s_i of the line
 * V_i), and for the null fiber of the moment map
 *
 *     mu : V + V^* -> t^*,   mu(x, phi)_j = sum_i s_i^j x_i phi_i.
 *
 * phi is written in the basis dual to the coordinate lines, so T acts on
 * phi_i with weight -s_i.
 *
 * Indices are 0-based throughout. A stratum is the set of points whose
 * support is exactly a given index set.
 */

#include "moment_fiber/exactlin.hpp"
#include "moment_fiber/polytope.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <variant>

namespace moment_fiber {

class WeightMatrix {
public:
    explicit WeightMatrix(IntMatrix s) : s_(std::move(s)) {
        if (s_.rows() < 1 || s_.cols() < 1) {
            throw InputError("weight matrix must have at least one row and one column");
        }
    }

    static WeightMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
        return WeightMatrix(IntMatrix::from_rows(rows));
    }

    std::size_t n() const noexcept { return s_.rows(); }
    std::size_t r() const noexcept { return s_.cols(); }
    const IntMatrix& matrix() const noexcept { return s_; }
    IntVector weight(std::size_t i) const { return s_.row(i); }

    friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

private:
    IntMatrix s_;
};

using Stratum = IndexSet;

struct PairPoint {
    RatVector x;
    RatVector phi;
    friend bool operator==(const PairPoint&, const PairPoint&) = default;
};

struct ComponentSet {
    // Each component is the closure of the fiber over the stratum I; listed
    // only when the count does not exceed the requested cap.
    std::vector<IndexSet> components;
    bool listed = true;
    std::size_t free_count = 0;  // #I_f; the component count is 2^free_count
    std::size_t fiber_dimension = 0;
    bool irreducible = false;
    bool normal = false;

    Integer count() const { return Integer(1) << free_count; }
};

struct SplitIndices {
    IndexSet dependent;    // I_d: removing the row keeps the rank
    IndexSet independent;  // I_f: removing the row drops the rank
};

struct VisibleBlock {
    IndexSet indices;
    // Strictly positive coefficients, one per index, sum_i alpha_i s_i = 0.
    RatVector relation;
    friend bool operator==(const VisibleBlock&, const VisibleBlock&) = default;
};

struct VisibleDecomposition {
    IndexSet free_part;  // I_0
    std::vector<VisibleBlock> blocks;
    friend bool operator==(const VisibleDecomposition&, const VisibleDecomposition&) = default;
};

enum class VisibilityCondition {
    DirectSum,          // spans of the parts are not in direct sum
    BlockDimension,     // a part has the wrong span dimension
    RelativeInterior,   // some block has no strictly positive relation
};

struct NotVisible {
    VisibilityCondition condition;
    std::string reason;
    friend bool operator==(const NotVisible&, const NotVisible&) = default;
};

using VisibilityResult = std::variant<VisibleDecomposition, NotVisible>;

namespace orbit {

struct Nilpotent {
    Outside destabilizing;
};

struct Semisimple {
    Inside relation;  // normalized to sum 1
};

// 0 lies in the closed hull but not in its relative interior.
struct Mixed {
    Inside hull;
    Outside destabilizing;
};

// The origin: closed orbit containing 0, so both semisimple and nilpotent.
struct Zero {};

}  // namespace orbit

using OrbitClass = std::variant<orbit::Nilpotent, orbit::Semisimple, orbit::Mixed, orbit::Zero>;

inline bool is_nilpotent(const OrbitClass& c) {
    return std::holds_alternative<orbit::Nilpotent>(c) || std::holds_alternative<orbit::Zero>(c);
}

inline bool is_semisimple(const OrbitClass& c) {
    return std::holds_alternative<orbit::Semisimple>(c) || std::holds_alternative<orbit::Zero>(c);
}

struct StabilityResult {
    bool stable = false;
    HullCertificate certificate;
};

struct PairClosed {
    // Strictly positive relation among the weights of (x, phi) in V + V^*,
    // indexed like pair_weights(W, p).
    Inside relation;
};

struct PairNotClosed {
    // Cocharacter pairing >= 0 with every weight of (x, phi) and > 0 with at
    // least one: the limit at t -> 0 exists and leaves the orbit.
    IntVector cocharacter;
};

using PairClosedness = std::variant<PairClosed, PairNotClosed>;

struct NonVisibleWitness {
    PairPoint pair;
    IndexSet x_support;    // I'
    IndexSet phi_support;  // I''
    // sum_{I'} beta_i s_i = sum_{I''} beta_i s_i, beta_i positive integers,
    // listed in the order x_support then phi_support.
    IntVector beta;
    friend bool operator==(const NonVisibleWitness&, const NonVisibleWitness&) = default;
};

// ---------------------------------------------------------------------------
// Orbit dimensions and modality

inline std::size_t rank(const WeightMatrix& w) { return rank(w.matrix()); }

inline void check_stratum(const WeightMatrix& w, const Stratum& s) {
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] >= w.n()) throw InputError("stratum index " + std::to_string(s[k]) + " out of range");
        if (k > 0 && s[k] <= s[k - 1]) throw InputError("stratum indices must be strictly increasing");
    }
}

inline std::size_t stratum_orbit_dim(const WeightMatrix& w, const Stratum& s) {
    check_stratum(w, s);
    return rank(row_select(w.matrix(), s));
}

inline std::size_t modality(const WeightMatrix& w, const Stratum& s) {
    return s.size() - stratum_orbit_dim(w, s);
}

inline std::size_t global_modality(const WeightMatrix& w) { return w.n() - rank(w); }

inline bool is_locally_free(const WeightMatrix& w) { return rank(w) == w.r(); }

// Lie algebra of the kernel of the action: { t : S t = 0 }.
inline std::vector<RatVector> kernel_of_action(const WeightMatrix& w) { return kernel_basis(w.matrix()); }

// Column basis of S. Image(S) is unchanged, so every rank of a row subset
// and every relation among the weights is preserved; the result is locally
// free.
inline WeightMatrix reduce_to_locally_free(const WeightMatrix& w) {
    auto cols = column_basis(w.matrix());
    if (cols.empty()) cols.push_back(0);  // S = 0: keep one (zero) column
    return WeightMatrix(column_select(w.matrix(), cols));
}

// ---------------------------------------------------------------------------
// Components of the null fiber

inline SplitIndices split_indices(const WeightMatrix& w) {
    const std::size_t full = rank(w);
    SplitIndices out;
    for (std::size_t i = 0; i < w.n(); ++i) {
        IndexSet rest = complement({i}, w.n());
        if (rank(row_select(w.matrix(), rest)) == full) {
            out.dependent.push_back(i);
        } else {
            out.independent.push_back(i);
        }
    }
    return out;
}

// I_d as the union of supports of the relations Ker(tS).
inline IndexSet relation_support(const WeightMatrix& w) {
    IndexSet out;
    for (const auto& v : kernel_basis(w.matrix().transpose())) out = set_union(out, support(v));
    return out;
}

inline std::size_t fiber_dimension(const WeightMatrix& w) { return 2 * w.n() - rank(w); }

// Irreducible components are indexed by the I with I_d subset of I, i.e. the
// strata whose fiber piece reaches the maximal dimension 2n - rk S.
inline ComponentSet components(const WeightMatrix& w, std::optional<std::size_t> max_listed = std::nullopt) {
    const auto split = split_indices(w);
    ComponentSet out;
    out.free_count = split.independent.size();
    out.fiber_dimension = fiber_dimension(w);
    out.irreducible = split.independent.empty();
    out.normal = out.irreducible;

    const std::size_t f = out.free_count;
    const bool fits = f < 63 && (!max_listed || (std::size_t{1} << f) <= *max_listed);
    out.listed = fits;
    if (!fits) return out;

    for (std::size_t mask = 0; mask < (std::size_t{1} << f); ++mask) {
        IndexSet extra;
        for (std::size_t b = 0; b < f; ++b)
            if (mask & (std::size_t{1} << b)) extra.push_back(split.independent[b]);
        out.components.push_back(set_union(split.dependent, extra));
    }
    std::sort(out.components.begin(), out.components.end());
    return out;
}

// The strata whose closure of the fiber piece is a component, tested
// literally by rank: rk S - rk S_I = n - #I.
inline bool is_component_stratum(const WeightMatrix& w, const Stratum& s) {
    return rank(w) - stratum_orbit_dim(w, s) == w.n() - s.size();
}

// ---------------------------------------------------------------------------
// Semisimple / nilpotent classification

inline HullQuery weight_query(const WeightMatrix& w, const IndexSet& s) {
    return HullQuery(row_select(w.matrix(), s));
}

inline OrbitClass classify_stratum(const WeightMatrix& w, const Stratum& s) {
    check_stratum(w, s);
    if (s.empty()) throw InputError("classify_stratum needs a nonempty stratum; use classify_element for 0");
    const auto q = weight_query(w, s);
    auto hull = zero_in_hull(q);
    if (auto* out = std::get_if<Outside>(&hull)) return orbit::Nilpotent{std::move(*out)};
    auto interior = zero_in_relative_interior(q);
    if (auto* in = std::get_if<Inside>(&interior)) return orbit::Semisimple{normalized(*in)};
    return orbit::Mixed{std::get<Inside>(hull), std::get<Outside>(interior)};
}

inline OrbitClass classify_element(const WeightMatrix& w, const RatVector& v) {
    if (v.size() != w.n()) throw InputError("element length does not match the number of weights");
    const auto s = support(v);
    if (s.empty()) return orbit::Zero{};
    return classify_stratum(w, s);
}

// Stable iff 0 lies in the relative interior of the hull of all weights.
inline StabilityResult is_stable(const WeightMatrix& w) {
    auto cert = zero_in_relative_interior(HullQuery(w.matrix()));
    if (auto* in = std::get_if<Inside>(&cert)) return {true, normalized(*in)};
    return {false, std::move(cert)};
}

// ---------------------------------------------------------------------------
// Visibility

namespace detail {

// The unique (up to scale) relation among the weights of a block, scaled to
// positive integers if it is strictly positive.
inline std::optional<RatVector> positive_block_relation(const WeightMatrix& w, const IndexSet& block) {
    const auto rel = kernel_basis(row_select(w.matrix(), block).transpose());
    if (rel.size() != 1) return std::nullopt;
    const RatVector& v = rel.front();
    const bool pos = std::all_of(v.begin(), v.end(), [](const Rational& q) { return q > 0; });
    const bool neg = std::all_of(v.begin(), v.end(), [](const Rational& q) { return q < 0; });
    if (!pos && !neg) return std::nullopt;
    const IntVector ints = clear_denominators(v, true);
    RatVector out;
    for (const auto& e : ints) out.emplace_back(neg ? Integer(-e) : e);
    return out;
}

}  // namespace detail

// Checks a candidate partition against the three defining conditions. Used
// as the sole source of truth by visible_decomposition.
inline std::optional<NotVisible> check_visible_partition(const WeightMatrix& w, const IndexSet& free_part,
                                                         const std::vector<IndexSet>& blocks) {
    std::size_t rank_sum = stratum_orbit_dim(w, free_part);
    if (rank_sum != free_part.size()) {
        return NotVisible{VisibilityCondition::BlockDimension,
                          "the weights outside every positive block are linearly dependent"};
    }
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        const auto& b = blocks[j];
        const std::size_t rb = stratum_orbit_dim(w, b);
        if (b.empty() || rb + 1 != b.size()) {
            return NotVisible{VisibilityCondition::BlockDimension,
                              "block " + std::to_string(j + 1) + " does not carry exactly one relation"};
        }
        rank_sum += rb;
    }
    if (rank_sum != rank(w)) {
        return NotVisible{VisibilityCondition::DirectSum, "the spans of the blocks are not in direct sum"};
    }
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        const auto cert = zero_in_relative_interior(weight_query(w, blocks[j]));
        if (!is_inside(cert)) {
            return NotVisible{VisibilityCondition::RelativeInterior,
                              "0 is not in the relative interior of the hull of block " + std::to_string(j + 1)};
        }
    }
    return std::nullopt;
}

// Candidate blocks: indices of I_d whose coordinate functionals on the
// relation space Ker(tS) are proportional. The candidate is then verified
// directly.
inline VisibilityResult visible_decomposition(const WeightMatrix& w) {
    const auto relations = kernel_basis(w.matrix().transpose());
    const std::size_t d = relations.size();
    const auto split = split_indices(w);

    // Coordinate functional of index i on the relation space, as a vector of
    // its values on the basis.
    auto functional = [&](std::size_t i) {
        RatVector f(d);
        for (std::size_t b = 0; b < d; ++b) f[b] = relations[b][i];
        return f;
    };
    auto proportional = [&](std::size_t i, std::size_t k) {
        RatMatrix m(2, d);
        const auto fi = functional(i);
        const auto fk = functional(k);
        for (std::size_t b = 0; b < d; ++b) {
            m(0, b) = fi[b];
            m(1, b) = fk[b];
        }
        return rank(m) == 1;
    };

    std::vector<IndexSet> classes;
    for (std::size_t i : split.dependent) {
        bool placed = false;
        for (auto& c : classes) {
            if (proportional(c.front(), i)) {
                c.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) classes.push_back({i});
    }

    if (auto failure = check_visible_partition(w, split.independent, classes)) return *failure;

    VisibleDecomposition out;
    out.free_part = split.independent;
    for (const auto& c : classes) {
        auto rel = detail::positive_block_relation(w, c);
        if (!rel) {
            return NotVisible{VisibilityCondition::RelativeInterior, "block relation is not strictly positive"};
        }
        out.blocks.push_back({c, std::move(*rel)});
    }
    return out;
}

inline bool is_visible(const WeightMatrix& w) {
    return std::holds_alternative<VisibleDecomposition>(visible_decomposition(w));
}

// Indicator vectors of the positive blocks; their span is a Cartan subspace.
inline std::vector<RatVector> cartan_subspace(const WeightMatrix& w) {
    const auto res = visible_decomposition(w);
    if (const auto* nv = std::get_if<NotVisible>(&res)) {
        throw OperationError("representation is not visible: " + nv->reason);
    }
    std::vector<RatVector> out;
    for (const auto& b : std::get<VisibleDecomposition>(res).blocks) {
        RatVector v(w.n(), Rational(0));
        for (std::size_t i : b.indices) v[i] = 1;
        out.push_back(std::move(v));
    }
    return out;
}

// Tangent space t.x as the column span of diag(x) S.
inline RatMatrix tangent_image(const WeightMatrix& w, const RatVector& x) {
    if (x.size() != w.n()) throw InputError("element length does not match the number of weights");
    RatMatrix m(w.n(), w.r());
    for (std::size_t i = 0; i < w.n(); ++i)
        for (std::size_t j = 0; j < w.r(); ++j) m(i, j) = x[i] * Rational(w.matrix()(i, j));
    return m;
}

// ---------------------------------------------------------------------------
// Quotient dimension and polarity

// I_+: union of the supports of the nonnegative relations among the weights,
// the support of the invariant monomials.
inline IndexSet invariant_support(const WeightMatrix& w) {
    const std::size_t n = w.n();
    const std::size_t r = w.r();
    IndexSet out;
    for (std::size_t i = 0; i < n; ++i) {
        // alpha >= 0, sum alpha_a s_a = 0, alpha_i = 1
        RatMatrix a(r + 1, n);
        RatVector b(r + 1, Rational(0));
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t j = 0; j < r; ++j) a(j, p) = Rational(w.matrix()(p, j));
        a(r, i) = 1;
        b[r] = 1;
        if (detail::phase_one(a, b).feasible) out.push_back(i);
    }
    return out;
}

// dim V//T = #I_+ - rk S_{I_+}.
inline std::size_t quotient_dimension(const WeightMatrix& w) {
    const auto plus = invariant_support(w);
    return plus.size() - rank(row_select(w.matrix(), plus));
}

// c_v = { x : t.x subset t.v }, computed as the kernel of the linear
// conditions u^T diag(x) S = 0 for u spanning the annihilator of t.v.
inline std::vector<RatVector> cartan_space_at(const WeightMatrix& w, const RatVector& v) {
    const auto ann = kernel_basis(tangent_image(w, v).transpose());
    RatMatrix m(ann.size() * w.r(), w.n());
    for (std::size_t u = 0; u < ann.size(); ++u)
        for (std::size_t j = 0; j < w.r(); ++j)
            for (std::size_t i = 0; i < w.n(); ++i) m(u * w.r() + j, i) = ann[u][i] * Rational(w.matrix()(i, j));
    return kernel_basis(m);
}

struct PolarityResult {
    bool polar = false;
    std::size_t quotient_dim = 0;
    // When polar: v = indicator of v_support has dim c_v = quotient_dim.
    IndexSet v_support;
    std::size_t cartan_dim = 0;
    friend bool operator==(const PolarityResult&, const PolarityResult&) = default;
};

// Polar iff some v has dim c_v = dim V//T. For v with support J, dim c_v is
// the number of zero weights plus the number of connected components of the
// matroid of the nonzero weights in J; these values fill exactly
// [#Z, #Z + rk S], the upper end reached on a basis.
inline PolarityResult polarity(const WeightMatrix& w) {
    PolarityResult out;
    out.quotient_dim = quotient_dimension(w);
    IndexSet nonzero;
    for (std::size_t i = 0; i < w.n(); ++i) {
        const auto s = w.weight(i);
        if (std::any_of(s.begin(), s.end(), [](const Integer& e) { return e != 0; })) nonzero.push_back(i);
    }
    const std::size_t zeros = w.n() - nonzero.size();
    const auto basis = column_basis(row_select(w.matrix(), nonzero).transpose());
    if (out.quotient_dim < zeros || out.quotient_dim - zeros > basis.size()) return out;
    for (std::size_t k = 0; k < out.quotient_dim - zeros; ++k) out.v_support.push_back(nonzero[basis[k]]);
    RatVector v(w.n(), Rational(0));
    for (std::size_t i : out.v_support) v[i] = 1;
    out.cartan_dim = cartan_space_at(w, v).size();
    if (out.cartan_dim != out.quotient_dim) throw std::logic_error("polarity certificate does not verify");
    out.polar = true;
    return out;
}

// ---------------------------------------------------------------------------
// The moment map and closed orbits in the null fiber

inline void check_pair(const WeightMatrix& w, const PairPoint& p) {
    if (p.x.size() != w.n() || p.phi.size() != w.n()) {
        throw InputError("pair point lengths do not match the number of weights");
    }
}

inline RatVector moment_eval(const WeightMatrix& w, const PairPoint& p) {
    check_pair(w, p);
    RatVector out(w.r(), Rational(0));
    for (std::size_t i = 0; i < w.n(); ++i) {
        if (p.x[i] == 0 || p.phi[i] == 0) continue;
        const Rational xp = p.x[i] * p.phi[i];
        for (std::size_t j = 0; j < w.r(); ++j) out[j] += Rational(w.matrix()(i, j)) * xp;
    }
    return out;
}

inline bool in_null_fiber(const WeightMatrix& w, const PairPoint& p) { return is_zero(moment_eval(w, p)); }

inline IndexSet pair_support(const PairPoint& p) { return set_union(support(p.x), support(p.phi)); }

// Weights of (x, phi) in V + V^*: s_i for i in supp x, then -s_i for i in
// supp phi.
inline IntMatrix pair_weights(const WeightMatrix& w, const PairPoint& p) {
    check_pair(w, p);
    const auto sx = support(p.x);
    const auto sp = support(p.phi);
    IntMatrix m(sx.size() + sp.size(), w.r());
    for (std::size_t k = 0; k < sx.size(); ++k)
        for (std::size_t j = 0; j < w.r(); ++j) m(k, j) = w.matrix()(sx[k], j);
    for (std::size_t k = 0; k < sp.size(); ++k)
        for (std::size_t j = 0; j < w.r(); ++j) m(sx.size() + k, j) = -w.matrix()(sp[k], j);
    return m;
}

inline std::size_t stabilizer_dim(const WeightMatrix& w, const PairPoint& p) {
    check_pair(w, p);
    return w.r() - rank(row_select(w.matrix(), pair_support(p)));
}

// V^* carries the weights -s_i; the classification of phi uses them.
inline OrbitClass classify_covector(const WeightMatrix& w, const RatVector& phi) {
    IntMatrix neg = w.matrix();
    for (std::size_t i = 0; i < neg.rows(); ++i)
        for (std::size_t j = 0; j < neg.cols(); ++j) neg(i, j) = -neg(i, j);
    return classify_element(WeightMatrix(std::move(neg)), phi);
}

// The orbit of (x, phi) is closed iff 0 is in the relative interior of the
// hull of its weights in V + V^* (the semisimplicity criterion applied to
// the doubled representation). Decides every pair, visible or not.
inline PairClosedness pair_closed_orbit(const WeightMatrix& w, const PairPoint& p) {
    if (!in_null_fiber(w, p)) throw InputError("pair point is not in the null fiber of the moment map");
    if (is_zero(p.x) && is_zero(p.phi)) return PairClosed{};
    auto cert = zero_in_relative_interior(HullQuery(pair_weights(w, p)));
    if (auto* in = std::get_if<Inside>(&cert)) return PairClosed{normalized(*in)};
    return PairNotClosed{std::get<Outside>(cert).functional};
}

// Closedness predicted by semisimplicity of the two halves: exact when W is
// visible; when W is not visible only "both semisimple => closed" holds.
inline bool both_halves_semisimple(const WeightMatrix& w, const PairPoint& p) {
    check_pair(w, p);
    return is_semisimple(classify_element(w, p.x)) && is_semisimple(classify_covector(w, p.phi));
}

namespace detail {

// First circuit (minimal dependent set of weights, by size then
// lexicographic order) whose relation has mixed signs.
inline std::optional<std::pair<IndexSet, IntVector>> mixed_circuit(const WeightMatrix& w) {
    const std::size_t n = w.n();
    const std::size_t max_size = std::min(n, rank(w) + 1);
    for (std::size_t size = 1; size <= max_size; ++size) {
        IndexSet pick(size);
        for (std::size_t k = 0; k < size; ++k) pick[k] = k;
        for (;;) {
            const auto rel = kernel_basis(row_select(w.matrix(), pick).transpose());
            if (rel.size() == 1) {
                const IntVector v = clear_denominators(rel.front(), true);
                const bool full = std::all_of(v.begin(), v.end(), [](const Integer& e) { return e != 0; });
                const bool pos = std::any_of(v.begin(), v.end(), [](const Integer& e) { return e > 0; });
                const bool neg = std::any_of(v.begin(), v.end(), [](const Integer& e) { return e < 0; });
                if (full && pos && neg) return std::make_pair(pick, v);
            }
            // next combination
            std::size_t k = size;
            while (k > 0 && pick[k - 1] == n - size + k - 1) --k;
            if (k == 0) break;
            ++pick[k - 1];
            for (std::size_t t = k; t < size; ++t) pick[t] = pick[t - 1] + 1;
        }
    }
    return std::nullopt;
}

}  // namespace detail

inline constexpr std::size_t kMaxWitnessSearch = 24;

// For a non-visible W: a pair with closed orbit whose x-part is nilpotent,
// built from a mixed-sign relation sum_{I'} beta s = sum_{I''} beta s. The
// monomial prod x_i^beta_i prod phi_i^beta_i is T-invariant and equals 1.
inline std::optional<NonVisibleWitness> nonvisible_closed_witness(const WeightMatrix& w) {
    if (is_visible(w)) return std::nullopt;
    if (w.n() > kMaxWitnessSearch) {
        throw CapabilityError("witness search is limited to n <= " + std::to_string(kMaxWitnessSearch));
    }
    const auto circuit = detail::mixed_circuit(w);
    if (!circuit) throw std::logic_error("non-visible weight matrix without a mixed-sign circuit");
    const auto& [idx, rel] = *circuit;

    NonVisibleWitness out;
    out.pair.x.assign(w.n(), Rational(0));
    out.pair.phi.assign(w.n(), Rational(0));
    IntVector beta_pos, beta_neg;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (rel[k] > 0) {
            out.x_support.push_back(idx[k]);
            out.pair.x[idx[k]] = 1;
            beta_pos.push_back(rel[k]);
        } else {
            out.phi_support.push_back(idx[k]);
            out.pair.phi[idx[k]] = 1;
            beta_neg.push_back(-rel[k]);
        }
    }
    out.beta = beta_pos;
    out.beta.insert(out.beta.end(), beta_neg.begin(), beta_neg.end());
    return out;
}

// Weight of the monomial prod x_i^beta_i prod phi_i^beta_i; zero means the
// monomial is T-invariant.
inline IntVector witness_monomial_weight(const WeightMatrix& w, const NonVisibleWitness& wit) {
    IntVector out(w.r(), Integer(0));
    std::size_t k = 0;
    for (std::size_t i : wit.x_support) {
        for (std::size_t j = 0; j < w.r(); ++j) out[j] += wit.beta[k] * w.matrix()(i, j);
        ++k;
    }
    for (std::size_t i : wit.phi_support) {
        for (std::size_t j = 0; j < w.r(); ++j) out[j] -= wit.beta[k] * w.matrix()(i, j);
        ++k;
    }
    return out;
}

inline Rational witness_monomial_value(const NonVisibleWitness& wit) {
    Rational v = 1;
    std::size_t k = 0;
    auto mul_pow = [&](const Rational& base, const Integer& e) {
        for (Integer t = 0; t < e; ++t) v *= base;
    };
    for (std::size_t i : wit.x_support) mul_pow(wit.pair.x[i], wit.beta[k++]);
    for (std::size_t i : wit.phi_support) mul_pow(wit.pair.phi[i], wit.beta[k++]);
    return v;
}

// ---------------------------------------------------------------------------
// Symplectic reduction and smooth points

// The reduction of W equals that of the rows I_d.
inline IndexSet reduction_support(const WeightMatrix& w) { return split_indices(w).dependent; }

// x = indicator of I, phi = indicator of the complement. Lies in the null
// fiber (disjoint supports) and has trivial infinitesimal stabilizer when W
// is locally free.
inline PairPoint smooth_witness(const WeightMatrix& w, const Stratum& s) {
    check_stratum(w, s);
    if (!is_locally_free(w)) {
        throw OperationError("smooth_witness needs a locally free action; apply reduce_to_locally_free first");
    }
    PairPoint p{RatVector(w.n(), Rational(0)), RatVector(w.n(), Rational(1))};
    for (std::size_t i : s) {
        p.x[i] = 1;
        p.phi[i] = 0;
    }
    return p;
}

}  // namespace moment_fiber

#endif  // MOMENT_FIBER_TORUS_HPP
