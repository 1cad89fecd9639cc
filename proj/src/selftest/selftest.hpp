#ifndef MOMENT_FIBER_SELFTEST_HPP
#define MOMENT_FIBER_SELFTEST_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace moment_fiber::selftest {

struct Options {
    std::uint64_t seed = 1;
    std::size_t count = 200;  // random matrices; S = [[0]] is always added
    std::size_t max_n = 7;
    std::size_t max_r = 4;
    std::size_t jobs = 1;
    bool inject_fault = false;  // corrupts one fast-path result, to test the harness
};

struct Failure {
    std::string suite;
    std::uint64_t case_seed = 0;
    std::string matrix;
    std::string detail;
};

struct Summary {
    std::size_t cases = 0;
    std::vector<std::pair<std::string, std::size_t>> checks;  // suite, checks run
    std::vector<Failure> failures;
    bool ok() const { return failures.empty(); }
};

Summary run(const Options& opts);
void print(std::ostream& out, const Summary& s, const Options& opts);

}  // namespace moment_fiber::selftest

#endif  // MOMENT_FIBER_SELFTEST_HPP
