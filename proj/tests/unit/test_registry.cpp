#include <doctest.h>

#include <numbers>
#include <set>

#include "numrad/errors.hpp"
#include "numrad/numrange.hpp"
#include "numrad/registry.hpp"
#include "numrad/sampler.hpp"
#include "numrad/transforms.hpp"

using namespace numrad;

namespace {

ComplexMatrix shift2() {
    ComplexMatrix t = ComplexMatrix::Zero(2, 2);
    t(0, 1) = 1.0;
    return t;
}

ComplexMatrix diag(double a, double b) {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = a;
    d(1, 1) = b;
    return d;
}

const CheckReport& find(const std::vector<CheckReport>& reports, const std::string& variant) {
    for (const CheckReport& r : reports)
        if (r.variant == variant) return r;
    FAIL("variant not reported: " << variant);
    throw std::logic_error("unreachable");
}

} // namespace

TEST_CASE("catalog has thirty ordered unique entries") {
    const auto& cat = catalog();
    REQUIRE(cat.size() == 30);
    std::set<std::string> ids;
    for (std::size_t k = 0; k < cat.size(); ++k) {
        char expect[8];
        std::snprintf(expect, sizeof expect, "E%02zu", k + 1);
        CHECK(cat[k].id == expect);
        CHECK_FALSE(cat[k].title.empty());
        CHECK(static_cast<bool>(cat[k].evaluate));
        ids.insert(cat[k].id);
    }
    CHECK(ids.size() == 30);
    CHECK(find_entry("E17").id == "E17");
    CHECK(find_entry("E25").positive_only);
    CHECK(find_entry("E27").positive_only);
    CHECK(find_entry("E29").operands == OperandKind::quadruple);
    CHECK_THROWS_AS(find_entry("E31"), UnknownEntry);
    CHECK_THROWS_AS(find_entry("e01"), UnknownEntry);
}

TEST_CASE("evaluate rejects mismatched operands") {
    const ComplexMatrix t = shift2();
    CHECK_THROWS_AS(evaluate("E01", {t, t}), OperandMismatch);
    CHECK_THROWS_AS(evaluate("E04", {t}), OperandMismatch);
    CHECK_THROWS_AS(evaluate("E04", {t, ComplexMatrix::Identity(3, 3)}), OperandMismatch);
    CHECK_THROWS_AS(evaluate("E25", {t, t}), OperandMismatch); // not positive
    CHECK_THROWS_AS(evaluate("E99", {t}), UnknownEntry);
}

TEST_CASE("chain slack") {
    CHECK(chain_slack({1.0, 3.0, 3.5}) == 0.5);
    CHECK(chain_slack({2.0, 1.0}) == -1.0);
    CHECK(std::isinf(chain_slack({1.0})));
    CHECK(TolerancePolicy{}.tolerance(0.5) == doctest::Approx(1e-10 + 1e-8));
    CHECK(TolerancePolicy{}.tolerance(100.0) == doctest::Approx(1e-10 + 1e-6));
}

TEST_CASE("E01 on the shift matrix") {
    const auto reports = evaluate("E01", {shift2()});
    const CheckReport& r = find(reports, "spectral-radius");
    REQUIRE(r.chain_values.size() == 3);
    CHECK(std::abs(r.chain_values[0]) < 1e-9);
    CHECK(r.chain_values[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.chain_values[2] == doctest::Approx(1.0).epsilon(1e-12));
    const CheckReport& h = find(reports, "half-norm");
    CHECK(h.chain_values[0] == doctest::Approx(0.5));
    CHECK(h.chain_values[1] == doctest::Approx(0.5));
    CHECK(std::abs(h.slack) < 1e-12); // equality case
    for (const CheckReport& x : reports) {
        CHECK(x.holds);
        CHECK(x.status() == "ok");
        CHECK(x.operand_digest == operand_digest({shift2()}));
    }
}

TEST_CASE("E25 on diag(1,2), diag(3,1)") {
    const auto reports = evaluate("E25", {diag(1, 2), diag(3, 1)});
    REQUIRE(reports.size() == 11);
    for (const CheckReport& r : reports) {
        REQUIRE(r.t.has_value());
        CHECK(r.chain_values[0] == doctest::Approx(2.0).epsilon(1e-10));
        CHECK(r.chain_values[1] == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(r.holds);
    }
    CHECK(*reports.front().t == 0.0);
    CHECK(*reports.back().t == 1.0);
}

TEST_CASE("E05 with S = T = I is tight") {
    const auto reports = evaluate("E05", {identity(3), identity(3)});
    REQUIRE(reports.size() == 1);
    CHECK(std::abs(reports[0].slack) < 1e-12);
    CHECK(reports[0].holds);
}

TEST_CASE("zero operator: every single-operand entry holds") {
    const ComplexMatrix z = ComplexMatrix::Zero(3, 3);
    for (const InequalityEntry& e : catalog()) {
        if (e.operands != OperandKind::single) continue;
        CAPTURE(e.id);
        for (const CheckReport& r : evaluate(e.id, {z})) {
            CAPTURE(r.variant);
            CHECK(r.holds);
            if (e.id == "E14") CHECK(r.skipped);
        }
    }
}

TEST_CASE("tightness witnesses") {
    SUBCASE("Hermitian operators meet the spectral-radius chain with equality") {
        const ComplexMatrix h = sample({Family{BaseFamily::hermitian}, 4, 2});
        const CheckReport r = find(evaluate("E01", {h}), "spectral-radius");
        CHECK(std::abs(r.slack) < 1e-10);
    }
    SUBCASE("skew-adjoint operators meet the segment bound with equality") {
        const ComplexMatrix s = sample({Family{BaseFamily::skew}, 3, 2});
        const CheckReport r = find(evaluate("E13", {s}), "segment");
        CHECK(std::abs(r.slack) < 1e-8);
        CHECK(r.holds);
    }
    SUBCASE("positive pairs meet the identity exactly") {
        const ComplexMatrix a = sample({Family{BaseFamily::positive}, 3, 2});
        const ComplexMatrix b = sample({Family{BaseFamily::positive}, 3, 3});
        for (const CheckReport& r : evaluate("E25", {a, b})) CHECK(std::abs(r.slack) < 1e-9);
    }
}

TEST_CASE("positive-only entries accept positive semidefinite pairs") {
    const ComplexMatrix a = sample({Family{BaseFamily::psd_singular}, 4, 5});
    const ComplexMatrix b = sample({Family{BaseFamily::positive}, 4, 6});
    CHECK(operands_positive({a, b}));
    CHECK_FALSE(operands_positive({a, shift2()}));
    for (const char* id : {"E25", "E27"})
        for (const CheckReport& r : evaluate(id, {a, b})) CHECK(r.holds);
}

TEST_CASE("characterization probe") {
    const CharacterizationProbe s = characterization_probe(shift2());
    CHECK(s.premise);
    CHECK(s.conclusion);
    CHECK(s.consistent());
    CHECK(s.max_deviation < 1e-12);

    const CharacterizationProbe g = characterization_probe(sample({Family{BaseFamily::ginibre}, 3, 4}));
    CHECK_FALSE(g.premise);
    CHECK_FALSE(g.conclusion);
    CHECK(g.consistent());

    const CharacterizationProbe n = characterization_probe(sample({Family{BaseFamily::nilpotent_jordan}, 2, 9}));
    CHECK(n.premise);
    CHECK(n.consistent());

    const auto e18 = evaluate("E18", {shift2()});
    REQUIRE(e18.size() == 2);
    for (const CheckReport& r : e18) CHECK(r.holds);
}

TEST_CASE("operand digest") {
    const ComplexMatrix t = sample({Family{BaseFamily::ginibre}, 3, 1});
    const std::string d = operand_digest({t});
    CHECK(d.size() == 16);
    CHECK(d.find_first_not_of("0123456789abcdef") == std::string::npos);
    CHECK(d == operand_digest({ComplexMatrix(t)}));
    ComplexMatrix u = t;
    u(2, 2) += 1e-15;
    CHECK(d != operand_digest({u}));
    CHECK(operand_digest({t, t}) != d);
    // positive and negative zero are different bit patterns
    CHECK(operand_digest({ComplexMatrix::Zero(1, 1)}) != operand_digest({-ComplexMatrix::Zero(1, 1)}) );
}

TEST_CASE("shared contexts give the same reports as fresh evaluations") {
    const std::vector<ComplexMatrix> ops{sample({Family{}, 3, 7}), sample({Family{}, 3, 8})};
    EvalContext ctx(ops);
    for (const char* id : {"E04", "E05", "E06", "E07"}) {
        const auto shared = evaluate(find_entry(id), ctx);
        const auto fresh = evaluate(id, ops);
        REQUIRE(shared.size() == fresh.size());
        for (std::size_t k = 0; k < shared.size(); ++k) CHECK(shared[k].chain_values == fresh[k].chain_values);
    }
}

TEST_CASE("product bound: screened scan equals a full scan over every angle") {
    const EvalSettings settings;
    for (std::uint64_t k = 0; k < 6; ++k) {
        const Family f = k % 2 == 0 ? Family{BaseFamily::ginibre} : Family{BaseFamily::unitary};
        const ComplexMatrix a = sample({f, 3, derive_seed(21, 2 * k)});
        const ComplexMatrix b = sample({f, 3, derive_seed(21, 2 * k + 1)});
        const CheckReport screened = find(evaluate("E30", {a, b}), "product");

        const ComplexMatrix ab = a * b;
        const ComplexMatrix ba = b * a;
        const ComplexMatrix bbs = b * b.adjoint();
        const ComplexMatrix asa = a.adjoint() * a;
        double brute = std::numeric_limits<double>::infinity();
        const int grid = settings.theta_grid;
        for (int j = 0; j < grid; ++j) {
            const double th = 2.0 * std::numbers::pi * j / grid;
            const Complex e = std::polar(1.0, th);
            const ComplexMatrix m = make_block(FullBlock{e * ba, std::conj(e) * bbs, e * asa, (e * ba).adjoint()});
            const double lhs = operator_norm(real_part(rotate(ab, th)));
            brute = std::min(brute, 0.5 * numradius(m, settings.sweep) - lhs);
        }
        const double scale = std::max({1.0, operator_norm(a), operator_norm(b)});
        CHECK(std::abs(screened.slack - brute) <= 1e-12 * scale * scale);
    }
}

TEST_CASE("evaluate_all honours operand availability") {
    OperandSet ops;
    ops.single = sample({Family{}, 2, 1});
    const auto singles = evaluate_all(ops);
    std::set<std::string> ids;
    for (const CheckReport& r : singles) ids.insert(r.entry_id);
    for (const InequalityEntry& e : catalog()) CHECK((ids.count(e.id) == 1) == (e.operands == OperandKind::single));

    ops.pair = {sample({Family{}, 2, 2}), sample({Family{}, 2, 3})};
    ids.clear();
    for (const CheckReport& r : evaluate_all(ops)) ids.insert(r.entry_id);
    CHECK(ids.count("E04") == 1);
    CHECK(ids.count("E25") == 0);
    CHECK(ids.count("E29") == 0);
}

TEST_CASE("mini soundness sweep over all families") {
    std::size_t reports = 0;
    for (const Family& f : base_families()) {
        CAPTURE(f.name());
        for (std::uint64_t k = 0; k < 2; ++k) {
            const int n = 2 + static_cast<int>(k);
            OperandSet ops;
            ops.single = sample({f, n, derive_seed(k, 0)});
            ops.pair = {sample({f, n, derive_seed(k, 1)}), sample({f, n, derive_seed(k, 2)})};
            ops.quadruple = {sample({f, n, derive_seed(k, 3)}), sample({f, n, derive_seed(k, 4)}),
                             sample({f, n, derive_seed(k, 5)}), sample({f, n, derive_seed(k, 6)})};
            for (const CheckReport& r : evaluate_all(ops)) {
                CAPTURE(r.entry_id);
                CAPTURE(r.variant);
                CHECK(r.holds);
                ++reports;
            }
        }
    }
    CHECK(reports > 1000);
}
