// moment-fiber: analyze | kac | selftest
//
// Exit codes: 0 success, 1 failed check (selftest mismatch, scan violation),
// 2 malformed input, 3 capability refusal.

#include "moment_fiber/report.hpp"
#include "moment_fiber/theta.hpp"
#include "selftest/selftest.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <unistd.h>

namespace mf = moment_fiber;
namespace th = moment_fiber::theta;
using mf::report::json;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kBadInput = 2, kRefused = 3 };

bool use_color() {
    if (const char* env = std::getenv("MOMENT_FIBER_COLOR")) return std::string(env) == "1";
    return isatty(STDOUT_FILENO) != 0;
}

std::string read_input(const std::string& arg) {
    if (arg == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream f(arg);
    if (f) return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
    // not a readable file: treat the argument as inline data
    return arg;
}

struct AnalyzeArgs {
    std::string input;
    std::string format = "text";
    std::size_t max_components = 4096;
    bool float_hint = false;
};

int cmd_analyze(const AnalyzeArgs& a) {
    const auto w = mf::report::parse_weights(read_input(a.input));
    const auto r = mf::report::analyze(w, {a.max_components});
    if (a.format == "json") {
        std::cout << mf::report::to_json(r, a.float_hint).dump(2) << "\n";
    } else {
        std::cout << mf::report::to_text(r, use_color());
    }
    return kOk;
}

struct KacArgs {
    std::vector<std::string> spec;
    std::string format = "text";
    long delta_ge = 1;
    std::vector<int> not_div;
    bool allow_twisted = false;
    std::size_t jobs = 1;
};

std::string join(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

int cmd_kac(const KacArgs& a) {
    std::string spec;
    for (const auto& s : a.spec) spec += s + " ";
    const auto req = mf::report::parse_kac_spec(spec);
    th::GradingOptions opts;
    opts.general_twisted = a.allow_twisted;
    const std::string name = th::diagram_name(req.type, req.twist);
    const std::string order = req.order == th::NodeOrder::Display ? "display" : "bourbaki";

    if (!req.scan) {
        const auto d = th::diagram_from_user_labels(req.type, req.twist, req.labels, req.order);
        const auto g = th::graded_dims(d, opts);
        if (a.format == "json") {
            json j = {{"diagram", name}, {"order", order}, {"labels", req.labels},
                      {"m", g.m},        {"dims", g.dims}, {"delta", g.delta()}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << name << " labels " << join(req.labels) << " (" << order << " order)\n";
            std::cout << "m = " << g.m << "\ndims =";
            for (long v : g.dims) std::cout << " " << v;
            std::cout << "\ndelta = dim h_1 - dim h_0 = " << g.delta() << "\n";
        }
        return kOk;
    }

    if (req.twist != 1 && !a.allow_twisted) {
        throw mf::CapabilityError("scanning twisted diagrams needs --allow-twisted");
    }
    const long ge = a.delta_ge;
    const auto entries = th::scan_labelings(req.type, req.twist, [ge](long dl) { return dl >= ge; }, opts, a.jobs);
    std::vector<const th::ScanEntry*> violations;
    for (const auto& e : entries)
        for (int dv : a.not_div)
            if (dv != 0 && e.m % dv == 0) {
                violations.push_back(&e);
                break;
            }
    if (a.format == "json") {
        json list = json::array(), bad = json::array();
        for (const auto& e : entries)
            list.push_back({{"labels", th::user_labels(e.diagram, req.order)}, {"m", e.m}, {"delta", e.delta}});
        for (const auto* e : violations)
            bad.push_back({{"labels", th::user_labels(e->diagram, req.order)}, {"m", e->m}, {"delta", e->delta}});
        json j = {{"diagram", name}, {"order", order},  {"delta_ge", ge},
                  {"entries", list}, {"check_order_not_div", a.not_div}, {"violations", bad}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << name << ": " << entries.size() << " labelings with delta >= " << ge << " (" << order
                  << " order)\n";
        for (const auto& e : entries)
            std::cout << "  " << join(th::user_labels(e.diagram, req.order)) << "  m=" << e.m << " delta=" << e.delta
                      << "\n";
        if (!a.not_div.empty()) {
            std::cout << "violations (m divisible by " << join(a.not_div) << "): " << violations.size() << "\n";
            for (const auto* e : violations)
                std::cout << "  " << join(th::user_labels(e->diagram, req.order)) << "  m=" << e->m << "\n";
        }
    }
    return violations.empty() ? kOk : kCheckFailed;
}

int cmd_selftest(const mf::selftest::Options& opts) {
    const auto s = mf::selftest::run(opts);
    mf::selftest::print(std::cout, s, opts);
    return s.ok() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact analysis of torus representations and Kac-diagram gradings"};
    app.require_subcommand(1);
    app.fallthrough();
    std::size_t jobs = 1;
    app.add_option("--jobs", jobs, "worker threads for scans and self-tests")->check(CLI::Range(1, 256));

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "analyze an integer weight matrix (JSON or CSV, file, '-' or inline)");
    analyze->add_option("input", an.input, "file path, '-' for stdin, or inline JSON/CSV")->required();
    analyze->add_option("--format", an.format)->check(CLI::IsMember({"json", "text"}));
    analyze->add_option("--max-components", an.max_components, "list components only up to this count");
    analyze->add_flag("--float-hint", an.float_hint, "add decimal approximations next to exact rationals");

    KacArgs ka;
    auto* kac = app.add_subcommand("kac", "graded dimensions of a Kac diagram, or a scan over {0,1} labelings");
    kac->add_option("spec", ka.spec, "e.g. \"E6 twist=1 labels=1,1,0,1,1,1,1\" or \"E7 twist=1 scan\"")->required();
    kac->add_option("--format", ka.format)->check(CLI::IsMember({"json", "text"}));
    kac->add_option("--delta-ge", ka.delta_ge, "scan: keep labelings with dim h_1 - dim h_0 >= this");
    kac->add_option("--check-order-not-div", ka.not_div, "scan: fail if some order is divisible by one of these")
        ->delimiter(',');
    kac->add_flag("--allow-twisted", ka.allow_twisted, "enable twisted diagrams with arbitrary labels");

    mf::selftest::Options st;
    auto* selftest = app.add_subcommand("selftest", "compare fast paths with brute-force oracles on random inputs");
    selftest->add_option("--seed", st.seed);
    selftest->add_option("--count", st.count, "random matrices per run");
    selftest->add_option("--max-n", st.max_n)->check(CLI::Range(1, 8));
    selftest->add_flag("--inject-fault", st.inject_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadInput;
    }

    try {
        if (*analyze) return cmd_analyze(an);
        if (*kac) {
            ka.jobs = jobs;
            return cmd_kac(ka);
        }
        st.jobs = jobs;
        return cmd_selftest(st);
    } catch (const mf::CapabilityError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kRefused;
    } catch (const mf::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kBadInput;
    } catch (const mf::OperationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
}
