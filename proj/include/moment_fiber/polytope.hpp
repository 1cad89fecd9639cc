#ifndef MOMENT_FIBER_POLYTOPE_HPP
#define MOMENT_FIBER_POLYTOPE_HPP

/*
 * Convex-hull membership of the origin, with Farkas certificates.
 *
 * Two questions are asked of a finite list of integer points A in Q^r:
 *
 *   zero_in_hull               0 in CH(A)
 *   zero_in_relative_interior  0 is a combination of A with every
 *                              coefficient strictly positive
 *
 * Both are answered by one exact phase-one simplex (Bland's rule) on
 *
 *   { alpha >= 0, sum alpha = 1, sum alpha_a a = 0 }      (hull)
 *   { alpha >= 1,               sum alpha_a a = 0 }      (relative interior)
 *
 * The second system is the first one's cone with alpha > 0 replaced by
 * alpha >= 1; relations form a cone, so feasibility is unchanged. When the
 * system is infeasible the phase-one duals give a separating functional,
 * which is returned in integral form (a cocharacter of the torus).
 *
 * Every certificate is checked by exact arithmetic before it is returned.
 */

#include "moment_fiber/exactlin.hpp"

#include <optional>
#include <variant>

namespace moment_fiber {

// Nonempty list of integer points of a common dimension. Repeats and the
// zero vector are allowed; certificates are indexed by input position.
class HullQuery {
public:
    explicit HullQuery(IntMatrix points) : points_(std::move(points)) {
        if (points_.rows() == 0) throw InputError("hull query needs at least one point");
    }

    static HullQuery from_points(const std::vector<IntVector>& pts) {
        if (pts.empty()) throw InputError("hull query needs at least one point");
        for (const auto& p : pts) {
            if (p.size() != pts.front().size()) throw InputError("hull query points have different dimensions");
        }
        return HullQuery(IntMatrix::from_rows(pts));
    }

    std::size_t size() const noexcept { return points_.rows(); }
    std::size_t dim() const noexcept { return points_.cols(); }
    const IntMatrix& points() const noexcept { return points_; }
    IntVector point(std::size_t i) const { return points_.row(i); }

private:
    IntMatrix points_;
};

struct Inside {
    RatVector coeffs;
    friend bool operator==(const Inside&, const Inside&) = default;
};

struct Outside {
    IntVector functional;
    friend bool operator==(const Outside&, const Outside&) = default;
};

using HullCertificate = std::variant<Inside, Outside>;

inline bool is_inside(const HullCertificate& c) { return std::holds_alternative<Inside>(c); }

namespace detail {

struct PhaseOneResult {
    bool feasible = false;
    RatVector solution;  // one entry per structural column
    RatVector duals;     // one entry per constraint row, original orientation
};

// Phase one of the simplex method for { A x = b, x >= 0 }. Bland's rule for
// both entering and leaving variables.
inline PhaseOneResult phase_one(const RatMatrix& a, const RatVector& b) {
    const std::size_t m = a.rows();
    const std::size_t k = a.cols();
    const std::size_t width = k + m;

    RatMatrix t(m, width);
    RatVector rhs(m);
    std::vector<int> flip(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        flip[i] = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < k; ++j) t(i, j) = a(i, j) * flip[i];
        t(i, k + i) = 1;
        rhs[i] = b[i] * flip[i];
    }

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = k + i;

    // Reduced costs of the phase-one objective sum(artificials).
    RatVector cost(width, Rational(0));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < m; ++i) cost[j] -= t(i, j);

    for (;;) {
        std::size_t enter = width;
        for (std::size_t j = 0; j < width; ++j) {
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == width) break;

        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t(i, enter) <= 0) continue;
            Rational ratio = rhs[i] / t(i, enter);
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = std::move(ratio);
            }
        }
        // The phase-one objective is bounded below by zero.
        if (leave == m) throw std::logic_error("phase one reported an unbounded direction");

        const Rational piv = t(leave, enter);
        for (std::size_t j = 0; j < width; ++j) t(leave, j) /= piv;
        rhs[leave] /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t(i, enter) == 0) continue;
            const Rational f = t(i, enter);
            for (std::size_t j = 0; j < width; ++j) t(i, j) -= f * t(leave, j);
            rhs[i] -= f * rhs[leave];
        }
        if (cost[enter] != 0) {
            const Rational f = cost[enter];
            for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t(leave, j);
        }
        basis[leave] = enter;
    }

    PhaseOneResult out;
    Rational objective = 0;
    out.solution.assign(k, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] >= k) {
            objective += rhs[i];
        } else {
            out.solution[basis[i]] = rhs[i];
        }
    }
    out.feasible = objective == 0;
    // Artificial column i has cost 1, so its reduced cost is 1 - y_i.
    out.duals.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.duals[i] = (Rational(1) - cost[k + i]) * flip[i];
    return out;
}

inline RatVector negated(const RatVector& v) {
    RatVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return out;
}

}  // namespace detail

// Clears denominators of a rational separating functional. The result
// defines the same open/closed half-spaces, so it certifies the same query.
inline IntVector integral_subgroup(const RatVector& functional, bool reduce_gcd = true) {
    return clear_denominators(functional, reduce_gcd);
}

inline IntVector integral_subgroup(const Outside& cert, bool reduce_gcd = true) {
    RatVector q(cert.functional.begin(), cert.functional.end());
    return clear_denominators(q, reduce_gcd);
}

inline bool verify_hull(const HullQuery& q, const HullCertificate& cert) {
    if (const auto* in = std::get_if<Inside>(&cert)) {
        if (in->coeffs.size() != q.size()) return false;
        Rational total = 0;
        RatVector sum(q.dim(), Rational(0));
        for (std::size_t a = 0; a < q.size(); ++a) {
            if (in->coeffs[a] < 0) return false;
            total += in->coeffs[a];
            for (std::size_t j = 0; j < q.dim(); ++j) sum[j] += in->coeffs[a] * Rational(q.points()(a, j));
        }
        return total == 1 && is_zero(sum);
    }
    const auto& out = std::get<Outside>(cert);
    if (out.functional.size() != q.dim()) return false;
    for (std::size_t a = 0; a < q.size(); ++a) {
        if (dot(out.functional, q.point(a)) <= 0) return false;
    }
    return true;
}

inline bool verify_relative_interior(const HullQuery& q, const HullCertificate& cert) {
    if (const auto* in = std::get_if<Inside>(&cert)) {
        if (in->coeffs.size() != q.size()) return false;
        RatVector sum(q.dim(), Rational(0));
        for (std::size_t a = 0; a < q.size(); ++a) {
            if (in->coeffs[a] <= 0) return false;
            for (std::size_t j = 0; j < q.dim(); ++j) sum[j] += in->coeffs[a] * Rational(q.points()(a, j));
        }
        return is_zero(sum);
    }
    const auto& out = std::get<Outside>(cert);
    if (out.functional.size() != q.dim()) return false;
    bool some_positive = false;
    for (std::size_t a = 0; a < q.size(); ++a) {
        const Rational v = dot(out.functional, q.point(a));
        if (v < 0) return false;
        if (v > 0) some_positive = true;
    }
    return some_positive;
}

inline HullCertificate zero_in_hull(const HullQuery& q) {
    const std::size_t k = q.size();
    const std::size_t r = q.dim();
    RatMatrix a(r + 1, k);
    RatVector b(r + 1, Rational(0));
    for (std::size_t p = 0; p < k; ++p) {
        for (std::size_t j = 0; j < r; ++j) a(j, p) = Rational(q.points()(p, j));
        a(r, p) = 1;
    }
    b[r] = 1;
    const auto res = detail::phase_one(a, b);

    HullCertificate cert;
    if (res.feasible) {
        cert = Inside{res.solution};
    } else {
        // y^T A <= 0 and y^T b > 0: u.a + t <= 0 < t, so -u separates.
        RatVector u(res.duals.begin(), res.duals.begin() + static_cast<std::ptrdiff_t>(r));
        cert = Outside{integral_subgroup(detail::negated(u))};
    }
    if (!verify_hull(q, cert)) throw std::logic_error("zero_in_hull produced a certificate that does not verify");
    return cert;
}

inline HullCertificate zero_in_relative_interior(const HullQuery& q) {
    const std::size_t k = q.size();
    const std::size_t r = q.dim();
    // alpha = 1 + beta, beta >= 0:  sum beta_a a = -sum a.
    RatMatrix a(r, k);
    RatVector b(r, Rational(0));
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t j = 0; j < r; ++j) {
            a(j, p) = Rational(q.points()(p, j));
            b[j] -= a(j, p);
        }
    const auto res = detail::phase_one(a, b);

    HullCertificate cert;
    if (res.feasible) {
        RatVector alpha(k);
        for (std::size_t p = 0; p < k; ++p) alpha[p] = res.solution[p] + 1;
        cert = Inside{std::move(alpha)};
    } else {
        // y.a <= 0 for all a and y.(-sum a) > 0, so -y is >= 0 everywhere
        // and > 0 somewhere.
        cert = Outside{integral_subgroup(detail::negated(res.duals))};
    }
    if (!verify_relative_interior(q, cert)) {
        throw std::logic_error("zero_in_relative_interior produced a certificate that does not verify");
    }
    return cert;
}

// Scales a strictly positive relation to sum 1.
inline Inside normalized(const Inside& in) {
    Rational total = 0;
    for (const auto& c : in.coeffs) total += c;
    if (total == 0) return in;
    Inside out;
    out.coeffs.reserve(in.coeffs.size());
    for (const auto& c : in.coeffs) out.coeffs.push_back(c / total);
    return out;
}

}  // namespace moment_fiber

#endif  // MOMENT_FIBER_POLYTOPE_HPP
