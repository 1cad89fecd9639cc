#ifndef MOMENT_FIBER_ORACLE_HPP
#define MOMENT_FIBER_ORACLE_HPP

// Brute-force reference implementations. Nothing here calls the decision
// procedures of the library; only its value types are shared. Linear algebra
// is redone with a plain rational Gauss-Jordan elimination.

#include "moment_fiber/theta.hpp"
#include "moment_fiber/torus.hpp"

#include <cstdint>
#include <vector>

namespace moment_fiber::oracle {

// splitmix64-seeded xoshiro256**; identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next();
    // Uniform in [lo, hi] by rejection sampling.
    long uniform(long lo, long hi);
    bool coin(unsigned percent);

private:
    std::uint64_t s_[4];
};

// --- linear algebra -------------------------------------------------------

using RatRows = std::vector<std::vector<Rational>>;

std::size_t rank_of(RatRows rows);
std::size_t rank_of_rows(const WeightMatrix& w, const IndexSet& rows);
// Basis of { v : M v = 0 } for an m x k matrix M given by rows (k columns).
std::vector<RatVector> null_space(RatRows rows, std::size_t cols);

// --- components and visibility --------------------------------------------

inline constexpr std::size_t kMaxBruteComponents = 16;
inline constexpr std::size_t kMaxBruteVisible = 8;

// All I with rk S - rk S_I = n - #I, sorted lexicographically.
std::vector<IndexSet> brute_components(const WeightMatrix& w);

// First partition (restricted growth order; I_0 empty first, then each
// block in turn) passing the three conditions, checked directly.
VisibilityResult brute_visible(const WeightMatrix& w);

// Independent check of a claimed decomposition.
bool verify_decomposition(const WeightMatrix& w, const VisibleDecomposition& d);

// --- fiber geometry ---------------------------------------------------------

RatVector moment(const WeightMatrix& w, const PairPoint& p);

// 2n - rank of the Jacobian of the moment map at p.
std::size_t tangent_dim(const WeightMatrix& w, const PairPoint& p);

PairPoint random_fiber_point(const WeightMatrix& w, const IndexSet& support, std::uint64_t seed);

// 0 in the hull / relative interior of the given rows, decided through the
// circuits of the configuration: 0 is in the relative interior iff the rows
// are covered by sign-coherent circuits, and in the hull iff some
// sign-coherent circuit exists (zero rows are circuits of size one).
bool brute_zero_in_hull(const WeightMatrix& w, const IndexSet& rows);
bool brute_zero_in_relative_interior(const WeightMatrix& w, const IndexSet& rows);

// dim V//T from the union of the sign-coherent circuits.
std::size_t brute_quotient_dimension(const WeightMatrix& w);
// Exists v with dim c_v = dim V//T, searching every support of v.
bool brute_polar(const WeightMatrix& w);

// --- corpora ----------------------------------------------------------------

// Structured random weight matrix: zero rows, repeated and scaled rows, and
// block-diagonal patterns are mixed in with uniform entries.
WeightMatrix random_weight_matrix(Rng& rng, std::size_t max_n, std::size_t max_r, long lo, long hi);

HullQuery random_hull_query(Rng& rng, std::size_t max_dim, std::size_t max_points, long lo, long hi);

// --- theta -----------------------------------------------------------------

// dim h_1 - dim h_0 from the sums of products of block dimensions.
long vinberg_delta_sums(const theta::VinbergClassicalInput& in);

// dim h_1 - dim h_0 by counting weight pairs of the eigenbasis; cases 1-3.
long vinberg_delta_eigen(const theta::VinbergClassicalInput& in);

}  // namespace moment_fiber::oracle

#endif  // MOMENT_FIBER_ORACLE_HPP
