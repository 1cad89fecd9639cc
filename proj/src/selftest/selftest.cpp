#include "selftest/selftest.hpp"

#include "moment_fiber/parallel.hpp"
#include "moment_fiber/torus.hpp"
#include "oracle/oracle.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

namespace moment_fiber::selftest {

namespace {

const char* const kSuites[] = {"components", "visibility", "stability", "smooth-witness", "nonvisible-witness"};

std::string matrix_text(const WeightMatrix& w) {
    std::ostringstream o;
    o << "[";
    for (std::size_t i = 0; i < w.n(); ++i) {
        o << (i ? ",[" : "[");
        for (std::size_t j = 0; j < w.r(); ++j) o << (j ? "," : "") << w.matrix()(i, j);
        o << "]";
    }
    o << "]";
    return o.str();
}

class Recorder {
public:
    void check(const std::string& suite, bool good, std::uint64_t seed, const WeightMatrix& w, const std::string& detail) {
        std::lock_guard lock(m_);
        ++counts_[suite];
        if (!good) failures_.push_back({suite, seed, matrix_text(w), detail});
    }
    Summary finish(std::size_t cases) {
        Summary s;
        s.cases = cases;
        for (const char* name : kSuites) s.checks.emplace_back(name, counts_[name]);
        std::sort(failures_.begin(), failures_.end(),
                  [](const Failure& a, const Failure& b) { return a.case_seed < b.case_seed; });
        s.failures = std::move(failures_);
        return s;
    }

private:
    std::mutex m_;
    std::map<std::string, std::size_t> counts_;
    std::vector<Failure> failures_;
};

void run_case(const WeightMatrix& w, std::uint64_t seed, bool fault, Recorder& rec) {
    const std::size_t n = w.n();

    auto comps = components(w);
    if (fault && !comps.components.empty()) comps.components.pop_back();
    const auto brute = oracle::brute_components(w);
    rec.check("components", comps.components == brute && comps.count() == Integer(brute.size()), seed, w,
              "component list differs from exhaustive enumeration");

    const auto vis = visible_decomposition(w);
    const bool fast_visible = std::holds_alternative<VisibleDecomposition>(vis);
    if (n <= oracle::kMaxBruteVisible) {
        const bool brute_visible = std::holds_alternative<VisibleDecomposition>(oracle::brute_visible(w));
        bool good = fast_visible == brute_visible;
        if (fast_visible) good = good && oracle::verify_decomposition(w, std::get<VisibleDecomposition>(vis));
        rec.check("visibility", good, seed, w, "visibility verdict differs from partition search");
    }

    IndexSet all = full_range(n);
    const auto st = is_stable(w);
    rec.check("stability", st.stable == oracle::brute_zero_in_relative_interior(w, all), seed, w,
              "stability differs from circuit cover");

    const auto red = reduce_to_locally_free(w);
    const std::size_t rk = rank(red);
    if (n <= 6 && rk > 0) {
        bool good = true;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            IndexSet s;
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1) s.push_back(i);
            const auto p = smooth_witness(red, s);
            good = good && oracle::tangent_dim(red, p) == 2 * n - rk && stabilizer_dim(red, p) == 0;
        }
        rec.check("smooth-witness", good, seed, w, "tangent space at a smooth witness has the wrong dimension");
    }

    const auto wit = nonvisible_closed_witness(w);
    bool good = wit.has_value() != fast_visible;
    if (wit) {
        const auto mu = oracle::moment(w, wit->pair);
        good = good && std::all_of(mu.begin(), mu.end(), [](const Rational& q) { return q == 0; });
        good = good && !oracle::brute_zero_in_hull(w, support(wit->pair.x));
        const auto weight = witness_monomial_weight(w, *wit);
        good = good && std::all_of(weight.begin(), weight.end(), [](const Integer& e) { return e == 0; });
        good = good && witness_monomial_value(*wit) != 0;
    }
    rec.check("nonvisible-witness", good, seed, w, "closed-pair witness fails verification");
}

}  // namespace

Summary run(const Options& opts) {
    Recorder rec;
    const std::size_t total = opts.count + 1;
    parallel_for(total, opts.jobs, [&](std::size_t k) {
        if (k == 0) {
            run_case(WeightMatrix::from_rows({{0}}), 0, opts.inject_fault, rec);
            return;
        }
        const std::uint64_t case_seed = opts.seed * 1000003ULL + k;
        oracle::Rng rng(case_seed);
        const auto w = oracle::random_weight_matrix(rng, opts.max_n, opts.max_r, -5, 5);
        run_case(w, case_seed, false, rec);
    });
    return rec.finish(total);
}

void print(std::ostream& out, const Summary& s, const Options& opts) {
    out << "selftest seed=" << opts.seed << " cases=" << s.cases << "\n";
    for (const auto& [suite, n] : s.checks) {
        std::size_t bad = 0;
        for (const auto& f : s.failures) bad += f.suite == suite;
        out << "  " << suite << ": " << (n - bad) << "/" << n << (bad ? " FAIL" : " ok") << "\n";
    }
    for (const auto& f : s.failures) {
        out << "MISMATCH " << f.suite << " seed=" << f.case_seed << " S=" << f.matrix << ": " << f.detail << "\n";
    }
    out << (s.ok() ? "PASS" : "FAIL") << "\n";
}

}  // namespace moment_fiber::selftest
