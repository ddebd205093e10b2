// mlq — ML-degrees of generic linear concentration models, computed by
// exact torus localization on the variety of complete quadrics.
//
// Subcommands: compute, table, fixed-points, verify, interpolate.
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 internal-consistency error.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "quadrics/chains.hpp"
#include "quadrics/compass.hpp"
#include "quadrics/errors.hpp"
#include "quadrics/localization.hpp"
#include "quadrics/reference.hpp"

namespace {

using namespace quadrics;

int triangular(int n) { return n * (n + 1) / 2; }

struct CommonOpts {
    int threads = 0; // 0 = auto
    std::string format = "plain";
    std::string subgroup_mode = "pow2";
    uint64_t seed = 1;
    uint64_t bound = 0; // 0 = auto (max(1000, n^3))
};

int resolve_threads(int requested) {
    if (requested > 0)
        return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

Subgroup resolve_subgroup(const CommonOpts& opts, int n) {
    if (opts.subgroup_mode == "pow2")
        return default_subgroup(n);
    uint64_t bound = opts.bound;
    if (bound == 0) {
        const uint64_t n3 = static_cast<uint64_t>(n) * n * n;
        bound = std::max<uint64_t>(1000, n3);
    }
    return random_subgroup(n, opts.seed, bound);
}

// Emits points/sec to stderr while a long summation runs; stdout stays
// machine-parseable.
class ProgressReporter {
public:
    explicit ProgressReporter(bool enabled) {
        if (!enabled)
            return;
        thread_ = std::thread([this] {
            const auto start = std::chrono::steady_clock::now();
            uint64_t last = 0;
            int ticks = 0;
            while (!done_.load()) {
                std::this_thread::sleep_for(std::chrono::milliseconds(100));
                if (++ticks < 20)
                    continue;
                ticks = 0;
                const uint64_t now = counter_.load(std::memory_order_relaxed);
                if (now == last)
                    continue;
                const double secs =
                    std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
                std::cerr << "progress: " << now << " points ("
                          << static_cast<uint64_t>(now / secs) << "/s)\n";
                last = now;
            }
        });
    }
    ~ProgressReporter() {
        done_.store(true);
        if (thread_.joinable())
            thread_.join();
    }
    std::atomic<uint64_t>* counter() { return &counter_; }

private:
    std::atomic<uint64_t> counter_{0};
    std::atomic<bool> done_{false};
    std::thread thread_;
};

int cmd_compute(int n, int a, const CommonOpts& opts) {
    const Subgroup s = resolve_subgroup(opts, n);
    ProgressReporter progress(n >= 8);
    const mpz_class phi =
        ml_degree_row(n, {a}, s, resolve_threads(opts.threads),
                      progress.counter())
            .front();
    if (opts.format == "json") {
        std::cout << "{\"n\":" << n << ",\"a\":" << a << ",\"phi\":\""
                  << phi.get_str() << "\",\"fixed_points\":"
                  << kappa(n).get_str() << ",\"subgroup\":\""
                  << opts.subgroup_mode << "\"}\n";
    } else if (opts.format == "csv") {
        std::cout << "n,a,phi\n" << n << ',' << a << ',' << phi.get_str() << '\n';
    } else {
        std::cout << phi.get_str() << '\n';
    }
    return 0;
}

int cmd_table(int n, const CommonOpts& opts) {
    const Subgroup s = resolve_subgroup(opts, n);
    std::vector<int> as(static_cast<size_t>(triangular(n)));
    for (size_t i = 0; i < as.size(); ++i)
        as[i] = static_cast<int>(i) + 1;
    ProgressReporter progress(n >= 8);
    const auto row = ml_degree_row(n, as, s, resolve_threads(opts.threads),
                                   progress.counter());
    if (opts.format == "json") {
        std::cout << '[';
        for (size_t i = 0; i < row.size(); ++i) {
            if (i)
                std::cout << ',';
            std::cout << "{\"n\":" << n << ",\"a\":" << as[i] << ",\"phi\":\""
                      << row[i].get_str() << "\"}";
        }
        std::cout << "]\n";
    } else if (opts.format == "csv") {
        std::cout << "n,a,phi\n";
        for (size_t i = 0; i < row.size(); ++i)
            std::cout << n << ',' << as[i] << ',' << row[i].get_str() << '\n';
    } else {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i)
                std::cout << ',';
            std::cout << row[i].get_str();
        }
        std::cout << '\n';
    }
    return 0;
}

int cmd_fixed_points(int n, bool count_only) {
    if (count_only) {
        std::cout << kappa(n).get_str() << '\n';
        return 0;
    }
    std::ostringstream buf;
    uint64_t in_buf = 0;
    for_each_fixed_point(n, [&](const FixedPoint& p) {
        buf << "{\"blocks\":[";
        for (size_t k = 0; k < p.blocks.size(); ++k) {
            if (k)
                buf << ',';
            buf << '[' << p.blocks[k].lo;
            if (p.blocks[k].is_pair())
                buf << ',' << p.blocks[k].hi;
            buf << ']';
        }
        buf << "],\"compass\":[";
        const auto chars = compass(p);
        for (size_t c = 0; c < chars.size(); ++c) {
            if (c)
                buf << ',';
            buf << '[';
            for (size_t i = 0; i < chars[c].coeffs.size(); ++i) {
                if (i)
                    buf << ',';
                buf << chars[c].coeffs[i];
            }
            buf << ']';
        }
        buf << "]}\n";
        if (++in_buf == 256) {
            std::cout << buf.str();
            buf.str({});
            in_buf = 0;
        }
    });
    std::cout << buf.str();
    return 0;
}

struct CheckTally {
    int passed = 0;
    int failed = 0;
    int warned = 0;

    void pass(const std::string& name, const std::string& detail) {
        std::cout << "PASS " << name << ": " << detail << '\n';
        ++passed;
    }
    void fail(const std::string& name, const std::string& detail) {
        std::cout << "FAIL " << name << ": " << detail << '\n';
        ++failed;
    }
    void warn(const std::string& name, const std::string& detail) {
        std::cout << "WARN " << name << ": " << detail << '\n';
        ++warned;
    }
};

int cmd_verify(int n_max, const CommonOpts& opts) {
    const int threads = resolve_threads(opts.threads);
    CheckTally tally;

    // fixed-point counts against the recursion
    for (int n = 1; n <= n_max; ++n) {
        uint64_t count = 0;
        for_each_fixed_point(n, [&](const FixedPoint&) { ++count; });
        if (mpz_class(static_cast<unsigned long>(count)) == kappa(n))
            tally.pass("fixed-point-count",
                       "n=" + std::to_string(n) + " has " +
                           std::to_string(count) + " points");
        else
            tally.fail("fixed-point-count",
                       "n=" + std::to_string(n) + " enumerated " +
                           std::to_string(count) + ", recursion gives " +
                           kappa(n).get_str());
    }

    // compass cardinality, distinctness, zero coefficient sums
    for (int n = 1; n <= n_max; ++n) {
        const size_t expected = static_cast<size_t>(triangular(n)) - 1;
        bool ok = true;
        std::string detail;
        try {
            for_each_fixed_point(n, [&](const FixedPoint& p) {
                const auto chars = compass(p); // self-checks count+distinct
                for (const Character& c : chars) {
                    if (c.coeff_sum() != 0)
                        throw internal_error("nonzero coefficient sum of " +
                                             c.to_string() + " at " +
                                             p.to_json());
                }
            });
        } catch (const internal_error& e) {
            ok = false;
            detail = e.what();
        }
        if (ok)
            tally.pass("compass",
                       "n=" + std::to_string(n) + ": all compasses have " +
                           std::to_string(expected) + " distinct characters");
        else
            tally.fail("compass", detail);
    }

    // full rows, shared by the remaining checks
    std::vector<std::vector<mpz_class>> rows(static_cast<size_t>(n_max) + 1);
    for (int n = 1; n <= n_max; ++n) {
        std::vector<int> as(static_cast<size_t>(triangular(n)));
        for (size_t i = 0; i < as.size(); ++i)
            as[i] = static_cast<int>(i) + 1;
        rows[static_cast<size_t>(n)] =
            ml_degree_row(n, as, default_subgroup(n), threads);
    }

    // closed forms, a <= 5
    {
        bool ok = true;
        std::string detail;
        for (int n = 1; n <= n_max && ok; ++n) {
            const auto& row = rows[static_cast<size_t>(n)];
            for (int a = 1; a <= std::min(5, triangular(n)); ++a) {
                if (mpq_class(row[static_cast<size_t>(a - 1)]) !=
                    phi_closed_form(n, a)) {
                    ok = false;
                    detail = "phi(" + std::to_string(n) + "," +
                             std::to_string(a) + ") = " +
                             row[static_cast<size_t>(a - 1)].get_str() +
                             " but the closed form gives " +
                             phi_closed_form(n, a).get_str();
                    break;
                }
            }
        }
        if (ok)
            tally.pass("closed-form", "a <= 5 matches for all n <= " +
                                          std::to_string(n_max));
        else
            tally.fail("closed-form", detail);
    }

    // conjectured formulas, 6 <= a <= 12 (reported, never fatal)
    {
        int checked = 0;
        bool ok = true;
        for (int n = 1; n <= n_max; ++n) {
            const auto& row = rows[static_cast<size_t>(n)];
            for (int a = 6; a <= std::min(12, triangular(n)); ++a) {
                ++checked;
                if (mpq_class(row[static_cast<size_t>(a - 1)]) !=
                    phi_closed_form(n, a)) {
                    ok = false;
                    tally.warn("conjecture",
                               "phi(" + std::to_string(n) + "," +
                                   std::to_string(a) + ") = " +
                                   row[static_cast<size_t>(a - 1)].get_str() +
                                   " disagrees with the conjectured formula " +
                                   phi_closed_form(n, a).get_str());
                }
            }
        }
        if (ok)
            tally.pass("conjecture", std::to_string(checked) +
                                         " conjectured values agree");
    }

    // palindromic symmetry and boundary values
    for (int n = 1; n <= n_max; ++n) {
        const auto& row = rows[static_cast<size_t>(n)];
        bool sym = true;
        for (size_t i = 0; i < row.size() / 2; ++i)
            if (row[i] != row[row.size() - 1 - i]) {
                sym = false;
                tally.fail("symmetry",
                           "phi(" + std::to_string(n) + "," +
                               std::to_string(i + 1) + ") != phi(" +
                               std::to_string(n) + "," +
                               std::to_string(row.size() - i) + ")");
                break;
            }
        if (sym)
            tally.pass("symmetry",
                       "n=" + std::to_string(n) + " row is palindromic");
        if (row.front() == 1 && row.back() == 1)
            tally.pass("boundary", "phi(" + std::to_string(n) +
                                       ",1) = phi(" + std::to_string(n) + "," +
                                       std::to_string(row.size()) + ") = 1");
        else
            tally.fail("boundary",
                       "n=" + std::to_string(n) + " endpoints are " +
                           row.front().get_str() + ", " + row.back().get_str());
    }

    // subgroup independence: pow2 row vs three random-subgroup rows
    for (int n = 1; n <= n_max; ++n) {
        std::vector<int> as(static_cast<size_t>(triangular(n)));
        for (size_t i = 0; i < as.size(); ++i)
            as[i] = static_cast<int>(i) + 1;
        bool ok = true;
        const uint64_t bound =
            std::max<uint64_t>(1000, static_cast<uint64_t>(n) * n * n);
        for (uint64_t seed = 1; seed <= 3 && ok; ++seed) {
            const auto other = ml_degree_row(
                n, as, random_subgroup(n, seed, bound), threads);
            if (other != rows[static_cast<size_t>(n)]) {
                ok = false;
                tally.fail("subgroup-independence",
                           "n=" + std::to_string(n) + " row differs for seed " +
                               std::to_string(seed));
            }
        }
        if (ok)
            tally.pass("subgroup-independence",
                       "n=" + std::to_string(n) +
                           " row identical for pow2 and seeds 1..3");
    }

    std::cout << (tally.failed == 0 ? "OK" : "FAILED") << ": " << tally.passed
              << " passed, " << tally.failed << " failed, " << tally.warned
              << " warnings\n";
    return tally.failed == 0 ? 0 : 1;
}

int cmd_interpolate(int a, int n_min, int n_max, const CommonOpts& opts) {
    if (n_min < 1)
        throw std::invalid_argument("interpolate: --n-min must be >= 1");
    if (n_max - n_min + 1 < a)
        throw std::invalid_argument(
            "interpolate: need at least a = " + std::to_string(a) +
            " sample points; range " + std::to_string(n_min) + ".." +
            std::to_string(n_max) + " has " +
            std::to_string(n_max - n_min + 1));
    const int threads = resolve_threads(opts.threads);
    std::vector<std::pair<long, mpz_class>> samples;
    for (int n = n_min; n <= n_max; ++n) {
        if (a > triangular(n))
            throw std::invalid_argument(
                "interpolate: a = " + std::to_string(a) +
                " exceeds C(n+1,2) at n = " + std::to_string(n));
        samples.emplace_back(n,
                             ml_degree(n, a, resolve_subgroup(opts, n), threads));
    }
    const PhiPolynomial poly = interpolate_phi(a, samples);
    if (opts.format == "json") {
        std::cout << "{\"a\":" << a << ",\"coefficients\":[";
        for (size_t k = 0; k < poly.coeffs.size(); ++k) {
            if (k)
                std::cout << ',';
            std::cout << '"' << poly.coeffs[k].get_str() << '"';
        }
        std::cout << "]}\n";
    } else if (opts.format == "csv") {
        std::cout << "degree,coefficient\n";
        for (size_t k = 0; k < poly.coeffs.size(); ++k)
            std::cout << k << ',' << poly.coeffs[k].get_str() << '\n';
    } else {
        for (size_t k = 0; k < poly.coeffs.size(); ++k) {
            if (k)
                std::cout << ' ';
            std::cout << poly.coeffs[k].get_str();
        }
        std::cout << '\n';
    }
    return 0;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_subgroup = true) {
    cmd->add_option("--threads", opts.threads,
                    "worker threads (0 = all hardware threads)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"plain", "json", "csv"}));
    if (with_subgroup) {
        cmd->add_option("--subgroup", opts.subgroup_mode,
                        "one-parameter subgroup weights")
            ->check(CLI::IsMember({"pow2", "random"}));
        cmd->add_option("--seed", opts.seed, "seed for --subgroup random");
        cmd->add_option("--bound", opts.bound,
                        "weight bound for --subgroup random (0 = max(1000, n^3))");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ML-degrees of generic linear concentration models via "
                 "torus localization on complete quadrics"};
    app.require_subcommand(1);

    int n = 0, a = 0, n_min = 0, n_max = 0;
    bool count_only = false;
    CommonOpts opts;

    auto* compute = app.add_subcommand("compute", "compute one phi(n,a)");
    compute->add_option("--n", n, "matrix size")->required();
    compute->add_option("--a", a, "model dimension, 1..C(n+1,2)")->required();
    add_common(compute, opts);

    auto* table =
        app.add_subcommand("table", "compute the full row phi(n,1..C(n+1,2))");
    table->add_option("--n", n, "matrix size")->required();
    add_common(table, opts);

    auto* fixed = app.add_subcommand(
        "fixed-points", "stream the torus-fixed points with their compasses");
    fixed->add_option("--n", n, "matrix size")->required();
    fixed->add_flag("--count-only", count_only, "print only kappa(n)");

    auto* verify =
        app.add_subcommand("verify", "run the invariant checks up to --n-max");
    verify->add_option("--n-max", n_max, "largest n to check")->required();
    add_common(verify, opts, /*with_subgroup=*/false);

    auto* interpolate = app.add_subcommand(
        "interpolate", "interpolate phi(., a) from computed values");
    interpolate->add_option("--a", a, "model dimension")->required();
    interpolate->add_option("--n-min", n_min, "first sample n")->required();
    interpolate->add_option("--n-max", n_max, "last sample n")->required();
    add_common(interpolate, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (compute->parsed())
            return cmd_compute(n, a, opts);
        if (table->parsed())
            return cmd_table(n, opts);
        if (fixed->parsed())
            return cmd_fixed_points(n, count_only);
        if (verify->parsed())
            return cmd_verify(n_max, opts);
        if (interpolate->parsed())
            return cmd_interpolate(a, n_min, n_max, opts);
    } catch (const quadrics::internal_error& e) {
        std::cerr << "internal consistency error: " << e.what() << '\n';
        return 3;
    } catch (const quadrics::inconsistent_samples& e) {
        std::cerr << "inconsistency: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
