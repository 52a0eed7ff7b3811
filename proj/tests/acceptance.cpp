// Acceptance suite: one self-contained check per contract the library must
// honor, each printed as a single PASS/FAIL line with its runtime budget.
// Run directly or through ctest.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <pmspace/pmspace.hpp>

#include "oracle.hpp"

using namespace pmspace;

namespace {

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<bool(std::string&)> body;
};

// 1. For each n in 2..8 the canonical form has exactly n(n-1)/2 - 1 closed
//    coordinates and one half-open coordinate.
bool chart_dimensions(std::string& detail) {
    std::mt19937_64 gen(101);
    bool ok = true;
    for (std::size_t n = 2; n <= 8; ++n) {
        const NaturalCoords c = testutil::random_coords(n, gen);
        std::size_t natural_count = 0;
        for (const ChartLevel& level : c.levels) natural_count += 1 + level.u.size();
        const CanonicalCoords q = to_canonical(c);
        ok &= natural_count == coordinate_count(n);
        ok &= q.closed.size() == coordinate_count(n) - 1;
        ok &= q.half_open >= 0.0 && q.half_open < 1.0;
    }
    detail = "closed count n(n-1)/2 - 1 plus one half-open factor, n = 2..8";
    return ok;
}

// 2. 10^4 uniform coordinate draws per n in 2..8 all decode to brute-force
//    pseudometrics at tolerance 1e-9, with no feasible-interval collapse.
bool decode_validity(std::string& detail) {
    int failures = 0;
    long total = 0;
    for (std::size_t n = 2; n <= 8; ++n) {
        for (std::uint64_t i = 0; i < 10000; ++i) {
            ++total;
            try {
                const DistanceMatrix m = sample_pseudometric(n, 1000003 * n + i);
                if (!testutil::brute_force_verdict(m, 1e-9).pseudometric) ++failures;
            } catch (const internal_error&) {
                ++failures;  // interval collapse fired
            }
        }
    }
    std::ostringstream ss;
    ss << total << " draws, " << failures << " failures";
    detail = ss.str();
    return failures == 0;
}

// Interval widths recomputed from the matrix, used to exclude degenerate
// coordinates from the coords-side roundtrip.
std::vector<double> interval_widths(const DistanceMatrix& m) {
    std::vector<double> widths;
    for (std::size_t p = 1; p < m.size(); ++p) {
        std::vector<double> t(p);
        for (std::size_t i = 0; i < p; ++i) t[i] = m(i, p);
        for (std::size_t i = 1; i < p; ++i) {
            double lo = 0.0, hi = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < i; ++j) {
                lo = std::max(lo, std::abs(m(j, i) - t[j]));
                hi = std::min(hi, m(j, i) + t[j]);
            }
            widths.push_back(hi - lo);
        }
    }
    return widths;
}

// 3. Both chart roundtrips hold within 1e-9 on 10^3 instances per n in 2..7
//    (coords-side roundtrip skips degenerate-interval coordinates), and the
//    square packing maps invert each other within 1e-9 on 10^5 points.
bool roundtrips(std::string& detail) {
    std::mt19937_64 gen(303);
    double worst = 0.0;
    bool ok = true;
    for (std::size_t n = 2; n <= 7; ++n) {
        for (int iter = 0; iter < 1000; ++iter) {
            // Matrix side. Instances of moderate scale from both generators.
            const DistanceMatrix d = (iter % 2 == 0)
                                         ? testutil::random_pseudometric(n, gen, 0.99)
                                         : testutil::random_shortest_path_metric(n, gen);
            const double err = sup_distance(decode_natural(encode_natural(d)), d);
            worst = std::max(worst, err);
            ok &= err <= 1e-9;

            // Coords side.
            const NaturalCoords c = testutil::random_coords(n, gen, 0.99);
            const DistanceMatrix m = decode_natural(c);
            const NaturalCoords back = encode_natural(m);
            const std::vector<double> widths = interval_widths(m);
            std::size_t w = 0;
            for (std::size_t l = 0; l + 1 < n; ++l) {
                ok &= std::abs(back.levels[l].s - c.levels[l].s) <= 1e-9;
                for (std::size_t i = 0; i < l; ++i, ++w)
                    if (widths[w] > 1e-9)
                        ok &= std::abs(back.levels[l].u[i] - c.levels[l].u[i]) <= 1e-9;
            }
        }
    }
    for (int iter = 0; iter < 100000; ++iter) {
        const double a = testutil::unit(gen);
        const double b = testutil::unit(gen);
        const auto [c, h] = square_pack(a, b);
        const auto [a2, b2] = square_unpack(c, h);
        ok &= std::abs(a2 - a) <= 1e-9 && std::abs(b2 - b) <= 1e-9;
        const auto [c2, h2] = square_pack(a2, b2);
        ok &= std::abs(c2 - c) <= 1e-9 && std::abs(h2 - h) <= 1e-9;
    }
    std::ostringstream ss;
    ss << "worst matrix-side error " << worst;
    detail = ss.str();
    return ok;
}

// 4. densify yields a metric within epsilon, touching nothing at or above
//    epsilon; sup-distance hits epsilon only when some entry sits below it.
bool densify_contract(std::string& detail) {
    std::mt19937_64 gen(404);
    const double epsilons[] = {1e-3, 1e-1, 1.0};
    bool ok = true;
    long checked = 0;
    for (int iter = 0; iter < 1000; ++iter) {
        const std::size_t n = 2 + iter % 7;  // n in 2..8
        const DistanceMatrix d = testutil::random_pseudometric(n, gen);
        for (double eps : epsilons) {
            ++checked;
            const DistanceMatrix rho = densify(d, eps);
            ok &= testutil::brute_force_verdict(rho, 1e-9).metric;
            const double gap = sup_distance(d, rho);
            ok &= gap <= eps;
            if (gap == eps) {
                bool some_small = false;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) some_small |= i != j && d(i, j) < eps;
                ok &= some_small;
            }
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (d(i, j) >= eps) ok &= rho(i, j) == d(i, j);
        }
    }
    std::ostringstream ss;
    ss << checked << " (pseudometric, epsilon) instances";
    detail = ss.str();
    return ok;
}

// 5. extend_metric restricts bitwise to the input, stays under the cap, and
//    produces a metric.
bool extension_contract(std::string& detail) {
    std::mt19937_64 gen(505);
    bool ok = true;
    for (int iter = 0; iter < 1000; ++iter) {
        const std::size_t n = 2 + iter % 7;
        const DistanceMatrix full = testutil::random_shortest_path_metric(n, gen);
        const DistanceMatrix target = testutil::random_shortest_path_metric(n, gen);
        const std::size_t k = 1 + gen() % n;
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        std::shuffle(all.begin(), all.end(), gen);
        const std::vector<std::size_t> subset(all.begin(), all.begin() + k);
        DistanceMatrix e(k);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) e(a, b) = full(subset[a], subset[b]);

        const double cap = iter % 2 == 0 ? 1.0 : 1.5;
        const DistanceMatrix out = extend_metric(e, n, subset, target, cap, 0.125);

        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) ok &= out(subset[a], subset[b]) == e(a, b);
        ok &= out.max_entry() <= cap;
        ok &= testutil::brute_force_verdict(out, 1e-12).metric;
    }
    detail = "1000 (metric, subset, target, cap) instances";
    return ok;
}

// 6. perturb stays within the sup budget while jumping by at least epsilon
//    across the designated pair, both as computed.
bool perturbation_witness(std::string& detail) {
    std::mt19937_64 gen(606);
    const double epsilons[] = {1e-3, 1e-1, 1.0};
    bool ok = true;
    for (int iter = 0; iter < 1000; ++iter) {
        const std::size_t n = 2 + iter % 7;
        const DistanceMatrix d = testutil::random_pseudometric(n, gen);
        const double eps = epsilons[iter % 3];
        const std::size_t i = gen() % n;
        std::size_t j = gen() % n;
        if (j == i) j = (j + 1) % n;
        const DistanceMatrix rho = perturb(d, i, j, eps);
        ok &= sup_distance(d, rho) <= eps;
        ok &= rho(i, j) - rho(i, i) >= eps;
    }
    detail = "1000 random (pseudometric, pair, epsilon) instances";
    return ok;
}

// 7. Distinct binary-family selectors sit at sup-distance exactly 1.
bool family_separation_check(std::string& detail) {
    std::mt19937_64 gen(707);
    bool ok = true;
    const auto draw = [&gen](std::size_t k) {
        FamilySelector sel;
        for (std::size_t b = 0; b < k; ++b) sel.bits.push_back(static_cast<int>(gen() % 2));
        return sel;
    };
    int pairs = 0;
    while (pairs < 200) {
        const FamilySelector a = draw(10), b = draw(10);
        if (a.bits == b.bits) continue;
        ++pairs;
        ok &= sup_distance(family_member(a), family_member(b)) == 1.0;
    }
    std::vector<FamilySelector> four;
    for (int mask = 0; mask < 4; ++mask) four.push_back({{mask & 1, (mask >> 1) & 1}});
    ok &= family_separation(four) == 1.0;
    detail = "200 sampled pairs at k = 10; full family at k = 2";
    return ok;
}

// 8. validate agrees with the independent triple-loop oracle on every
//    symmetric matrix over the grid {0, 0.5, 1, 2}, n = 2..5.
bool oracle_equivalence(std::string& detail) {
    const double grid[] = {0.0, 0.5, 1.0, 2.0};
    long total = 0;
    long disagreements = 0;
    for (std::size_t n = 2; n <= 5; ++n) {
        const std::size_t cells = coordinate_count(n);
        std::vector<std::size_t> odo(cells, 0);
        while (true) {
            DistanceMatrix m(n);
            std::size_t c = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, grid[odo[c++]]);
            ++total;
            const ValidationReport got = validate(m);
            const testutil::Verdict want = testutil::brute_force_verdict(m, Tolerance{}.eps_abs);
            if (got.is_pseudometric != want.pseudometric || got.is_metric != want.metric)
                ++disagreements;

            std::size_t pos = 0;
            while (pos < cells && odo[pos] == 3) odo[pos++] = 0;
            if (pos == cells) break;
            ++odo[pos];
        }
    }
    std::ostringstream ss;
    ss << total << " matrices, " << disagreements << " disagreements";
    detail = ss.str();
    return disagreements == 0;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "canonical chart dimensions (n = 2..8)", 1.0, chart_dimensions},
        {2, "decode validity and interval feasibility (7 x 10^4 draws)", 30.0, decode_validity},
        {3, "chart roundtrips and square packing inverses", 30.0, roundtrips},
        {4, "densify contract (metric within epsilon)", 10.0, densify_contract},
        {5, "extension contract (restriction, cap, metricity)", 10.0, extension_contract},
        {6, "perturbation witness (sup budget, exact jump)", 5.0, perturbation_witness},
        {7, "binary family separation is exactly 1", 5.0, family_separation_check},
        {8, "validate agrees with the brute-force oracle", 10.0, oracle_equivalence},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        std::string detail;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = c.body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds >= c.budget_seconds) {
            ok = false;
            detail += " [over budget]";
        }
        if (!ok) ++failed;
        std::printf("[%s] %d %-55s %6.2fs (budget %2.0fs)  %s\n", ok ? "PASS" : "FAIL", c.id,
                    c.name, seconds, c.budget_seconds, detail.c_str());
    }
    if (failed) std::printf("%d criterion(s) failed\n", failed);
    return failed == 0 ? 0 : 1;
}
