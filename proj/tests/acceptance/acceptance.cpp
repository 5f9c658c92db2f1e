// One criterion per invocation: `numrad_acceptance <1..9>` prints a single
// PASS/FAIL line and exits 0 on PASS.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>
#include <streambuf>
#include <string>
#include <thread>

#include "numrad/campaign.hpp"
#include "numrad/errors.hpp"
#include "numrad/numrange.hpp"
#include "numrad/quadrature.hpp"
#include "numrad/registry.hpp"
#include "numrad/sampler.hpp"
#include "numrad/scalardist.hpp"
#include "numrad/transforms.hpp"
#include "support/oracles.hpp"

using namespace numrad;

namespace {

// Pinned tolerances.
constexpr double kShiftOmegaTol = 1e-9;
constexpr double kShiftNormTol = 1e-12;
constexpr double kShiftRadiusTol = 1e-9;
constexpr double kOracleAbove = 1e-9;
constexpr double kOracleRelGap = 1e-6;
constexpr int kOracleMinClose = 95;
constexpr double kPositiveIdentityTol = 1e-7;
constexpr double kQuadAnchorTol = 1e-7;
constexpr double kAmGmIdentityTol = 1e-7;
constexpr double kScalarDistTol = 1e-6;
constexpr double kCampaignBudgetS = 600.0;
const TolerancePolicy kPolicy{1e-10, 1e-8};

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

int dim_of(std::uint64_t i) { return 2 + static_cast<int>(i % 7); }

ComplexMatrix draw(BaseFamily f, int n, std::uint64_t stream, std::uint64_t i) {
    return sample({Family{f}, n, derive_seed(stream, i)});
}

Outcome shift_anchor() {
    ComplexMatrix t = ComplexMatrix::Zero(2, 2);
    t(0, 1) = 1.0;
    const double w = numradius(t);
    const double nt = operator_norm(t);
    const double r = spectral_radius(t);
    const CharacterizationProbe p = characterization_probe(t, 360);
    const bool ok = std::abs(w - 0.5) <= kShiftOmegaTol && std::abs(nt - 1.0) <= kShiftNormTol &&
                    std::abs(r) <= kShiftRadiusTol && p.premise && p.conclusion && p.consistent();
    return {ok, fmt("omega=%.17g norm=%.17g r=%.3g probe premise=%d conclusion=%d max_dev=%.3g", w, nt, r,
                    p.premise, p.conclusion, p.max_deviation)};
}

// Scans streamed JSONL for violations without keeping the text.
class ViolationCounter : public std::streambuf {
public:
    std::size_t violations = 0;
    std::size_t lines = 0;

protected:
    int_type overflow(int_type c) override {
        if (c != traits_type::eof()) put(static_cast<char>(c));
        return c;
    }
    std::streamsize xsputn(const char* s, std::streamsize n) override {
        for (std::streamsize k = 0; k < n; ++k) put(s[k]);
        return n;
    }

private:
    void put(char c) {
        if (c != '\n') {
            line_ += c;
            return;
        }
        ++lines;
        if (line_.find("\"holds\":false") != std::string::npos) ++violations;
        line_.clear();
    }
    std::string line_;
};

struct Deadline {};

Outcome campaign_soundness() {
    CampaignConfig c; // seed 1, 1000 samples, dims 2..8, every entry
    c.seed = 1;
    c.tolerance = kPolicy;
    c.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    ViolationCounter counter;
    std::ostream sink(&counter);
    const auto start = std::chrono::steady_clock::now();
    std::size_t done_samples = 0;
    std::size_t total_samples = 0;
    const auto progress = [&](std::size_t done, std::size_t total) {
        done_samples = done;
        total_samples = total;
        const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (el > kCampaignBudgetS && done < total) throw Deadline{};
    };
    try {
        const CampaignReport r = run_campaign(c, &sink, progress);
        const bool ok = r.violations == 0 && r.elapsed_s <= kCampaignBudgetS;
        return {ok, fmt("%zu samples, %zu reports, %zu violations, %.1f s on %d thread(s), budget %.0f s", r.samples,
                        r.reports, r.violations, r.elapsed_s, c.jobs, kCampaignBudgetS)};
    } catch (const Deadline&) {
        const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const double projected = el * static_cast<double>(total_samples) / static_cast<double>(done_samples);
        return {false, fmt("budget %.0f s exceeded on %d thread(s): %zu/%zu samples, %zu reports, %zu violations "
                           "so far, projected %.0f s",
                           kCampaignBudgetS, c.jobs, done_samples, total_samples, counter.lines, counter.violations,
                           projected)};
    }
}

Outcome oracle_agreement() {
    int close = 0;
    int above = 0;
    double worst_gap = -1e300;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const ComplexMatrix t = draw(BaseFamily::ginibre, 4, 3, i);
        const double w = numradius(t);
        const double o = fov_oracle(t);
        if (o > w + kOracleAbove) ++above;
        const double gap = (w - o) / w;
        worst_gap = std::max(worst_gap, gap);
        if (gap <= kOracleRelGap) ++close;
    }
    return {above == 0 && close >= kOracleMinClose,
            fmt("oracle above omega: %d, relative gap <= %.0e: %d/100, worst gap %.3g", above, kOracleRelGap, close,
                worst_gap)};
}

Outcome positive_identity() {
    double worst = 0.0;
    const std::vector<double>& grid = EvalSettings{}.closed_grid();
    for (std::uint64_t i = 0; i < 200; ++i) {
        const int n = dim_of(i);
        const ComplexMatrix a = draw(BaseFamily::positive, n, 4, 2 * i);
        const ComplexMatrix b = draw(BaseFamily::positive, n, 4, 2 * i + 1);
        const double half = 0.5 * operator_norm(a + b);
        for (double t : grid) {
            // segment point of [[O, A], [B, O]] with B* = B, A* = A
            const ComplexMatrix blk = off_diagonal((1.0 - t) * a + t * b, (1.0 - t) * b + t * a);
            worst = std::max(worst, std::abs(numradius(blk) - half));
        }
    }
    return {worst <= kPositiveIdentityTol, fmt("200 pairs x 11 t, max |omega - ||A+B||/2| = %.3g", worst)};
}

Outcome quadrature_anchors() {
    double worst_h = 0.0;
    double worst_s = 0.0;
    double worst_hh = -1e300; // largest sandwich excess over tolerance
    int hh_fail = 0;
    int integrals = 0;
    const auto sandwich = [&](const QuadResult& q, double scale) {
        ++integrals;
        const double tol = kPolicy.tolerance(scale);
        const double excess = std::max(q.f_mid - q.value, q.value - 0.5 * (q.f_left + q.f_right));
        worst_hh = std::max(worst_hh, excess);
        if (excess > tol) ++hh_fail;
    };
    for (std::uint64_t i = 0; i < 50; ++i) {
        const ComplexMatrix h = draw(BaseFamily::hermitian, dim_of(i), 5, i);
        const QuadResult q = int_numrad_segment(h);
        worst_h = std::max(worst_h, std::abs(q.value - numradius(h)));
        sandwich(q, operator_norm(h));
        sandwich(int_norm_segment(h), operator_norm(h));

        const ComplexMatrix s = draw(BaseFamily::skew, dim_of(i), 6, i);
        const QuadResult qs = int_numrad_segment(s);
        worst_s = std::max(worst_s, std::abs(qs.value - 0.5 * numradius(s)));
        sandwich(qs, operator_norm(s));
        sandwich(int_norm_segment(s), operator_norm(s));
    }
    const bool ok = worst_h <= kQuadAnchorTol && worst_s <= kQuadAnchorTol && hh_fail == 0;
    return {ok, fmt("self-adjoint max err %.3g, skew max err %.3g, sandwich failures %d/%d (max excess %.3g)",
                    worst_h, worst_s, hh_fail, integrals, worst_hh)};
}

Outcome am_gm_chain() {
    int fail_lower = 0;
    int fail_upper = 0;
    double worst_identity = 0.0;
    for (std::uint64_t i = 0; i < 500; ++i) {
        const int n = dim_of(i);
        const ComplexMatrix a = draw(BaseFamily::positive, n, 7, 2 * i);
        const ComplexMatrix b = draw(BaseFamily::positive, n, 7, 2 * i + 1);
        const double tol = kPolicy.tolerance(std::max(operator_norm(a), operator_norm(b)));
        const ComplexMatrix ab = a * b;
        const double geo = operator_norm(oracle::psd_sqrt(a) * oracle::psd_sqrt(b));
        const double w = std::sqrt(numradius(ab));
        const double r = std::sqrt(spectral_radius(ab));
        const double half = 0.5 * operator_norm(a + b);
        if (geo > w + tol) ++fail_lower;
        if (w > half + tol) ++fail_upper;
        worst_identity = std::max(worst_identity, std::abs(geo - r));
    }
    const bool ok = fail_lower == 0 && fail_upper == 0 && worst_identity <= kAmGmIdentityTol;
    return {ok, fmt("500 pairs: geo>w^1/2 %d, w^1/2>||A+B||/2 %d, max |geo - r^1/2| %.3g", fail_lower, fail_upper,
                    worst_identity)};
}

Outcome scalar_distance() {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const ComplexMatrix t = draw(BaseFamily::normal_diag, dim_of(i), 8, i);
        std::vector<Complex> eig;
        for (Eigen::Index j = 0; j < t.rows(); ++j) eig.push_back(t(j, j));
        worst = std::max(worst, std::abs(min_scalar_distance(t).distance - oracle::enclosing_radius(eig)));
    }
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    int convex_fail = 0;
    for (int k = 0; k < 1000; ++k) {
        const ComplexMatrix t = draw(BaseFamily::ginibre, dim_of(static_cast<std::uint64_t>(k)), 9, k / 10);
        const auto h = [&](Complex l) { return operator_norm(t - l * ComplexMatrix::Identity(t.rows(), t.cols())); };
        const Complex a(g(rng), g(rng));
        const Complex b(g(rng), g(rng));
        if (h(0.5 * (a + b)) > 0.5 * (h(a) + h(b)) + kPolicy.tolerance(operator_norm(t))) ++convex_fail;
    }
    return {worst <= kScalarDistTol && convex_fail == 0,
            fmt("100 normal matrices, max |d - chebyshev radius| %.3g; midpoint convexity failures %d/1000", worst,
                convex_fail)};
}

Outcome block_bound() {
    int fail_block = 0;
    int fail_low = 0;
    int fail_up = 0;
    double min_slack = 1e300;
    const auto fams = base_families();
    for (std::uint64_t i = 0; i < 300; ++i) {
        const int n = dim_of(i);
        const BaseFamily f = fams[i % fams.size()].base;
        const ComplexMatrix a = draw(f, n, 10, 2 * i);
        const ComplexMatrix b = draw(f, n, 10, 2 * i + 1);
        const double tol = kPolicy.tolerance(std::max(operator_norm(a), operator_norm(b)));
        const ComplexMatrix blk = off_diagonal(a, b);
        const double d = min_scalar_distance(blk).distance;
        const double rhs = std::sqrt(std::max(numradius(ComplexMatrix(a * b)), numradius(ComplexMatrix(b * a))) + d * d);
        const double lhs = numradius(blk);
        min_slack = std::min(min_slack, rhs - lhs);
        if (lhs > rhs + tol) ++fail_block;

        const ComplexMatrix t = draw(f, n, 11, i);
        const double tt = kPolicy.tolerance(operator_norm(t));
        const double w = numradius(t);
        const double w2 = numradius(ComplexMatrix(t * t));
        const double dt = min_scalar_distance(t).distance;
        if (w2 < w * w - dt * dt - tt) ++fail_low;
        if (w2 > w * w + tt) ++fail_up;
    }
    return {fail_block == 0 && fail_low == 0 && fail_up == 0,
            fmt("300 pairs block-bound failures %d (min slack %.3g); 300 singles square-lower failures %d, power "
                "failures %d",
                fail_block, min_slack, fail_low, fail_up)};
}

std::string without_timing(const std::string& jsonl) {
    static const std::regex elapsed(R"("elapsed_s":[^,]*,)");
    return std::regex_replace(jsonl, elapsed, "");
}

Outcome determinism() {
    CampaignConfig c;
    c.seed = 11;
    c.samples_per_family = 7;
    c.dims = {2, 3, 4};
    c.quadruple_samples = 2;
    c.tolerance = kPolicy;
    const auto run = [&](int jobs) {
        c.jobs = jobs;
        std::ostringstream out;
        run_campaign(c, &out);
        return out.str();
    };
    const std::string a = run(1);
    const std::string b = run(1);
    const std::string p = run(8);
    const bool same_runs = without_timing(a) == without_timing(b);
    const bool same_jobs = without_timing(a) == without_timing(p);
    const std::size_t lines = static_cast<std::size_t>(std::count(a.begin(), a.end(), '\n'));
    return {same_runs && same_jobs && lines > 0,
            fmt("%zu lines; repeat run identical: %s; jobs 1 vs 8 identical: %s", lines, same_runs ? "yes" : "no",
                same_jobs ? "yes" : "no")};
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: numrad_acceptance <1..9>\n";
        return 2;
    }
    const int id = std::atoi(argv[1]);
    static const char* names[] = {"",
                                  "shift-matrix anchor",
                                  "campaign soundness",
                                  "sweep vs oracle",
                                  "positive-pair identity",
                                  "quadrature anchors",
                                  "AM-GM chain",
                                  "scalar distance",
                                  "block bound and ingredients",
                                  "determinism"};
    if (id < 1 || id > 9) {
        std::cerr << "unknown criterion " << argv[1] << "\n";
        return 2;
    }
    Outcome o;
    try {
        switch (id) {
        case 1: o = shift_anchor(); break;
        case 2: o = campaign_soundness(); break;
        case 3: o = oracle_agreement(); break;
        case 4: o = positive_identity(); break;
        case 5: o = quadrature_anchors(); break;
        case 6: o = am_gm_chain(); break;
        case 7: o = scalar_distance(); break;
        case 8: o = block_bound(); break;
        case 9: o = determinism(); break;
        }
    } catch (const std::exception& e) {
        o = {false, std::string("error: ") + e.what()};
    }
    std::cout << "criterion " << id << " (" << names[id] << "): " << (o.pass ? "PASS" : "FAIL") << ": " << o.detail
              << std::endl;
    return o.pass ? 0 : 1;
}
