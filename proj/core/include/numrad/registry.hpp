#pragma once

// Catalog of numerical-radius inequalities and a uniform way to evaluate them.
//
// Every entry turns its operands into one or more chains v_0 <= v_1 <= ... of
// real numbers. The slack of a chain is min_k (v_{k+1} - v_k); an identity
// a = b is encoded as the chain [a, b, a].

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "numrad/matrix.hpp"
#include "numrad/numrange.hpp"
#include "numrad/quadrature.hpp"
#include "numrad/scalardist.hpp"

namespace numrad {

enum class OperandKind {
    single,   // T
    pair,     // (A, B) or (S, T)
    quadruple // X1, X2, X3, X4
};

enum class ParamKind { none, t_grid, open_t_grid, theta_grid };

std::string_view to_string(OperandKind kind);
std::string_view to_string(ParamKind kind);

struct TolerancePolicy {
    double atol = 1e-10;
    double rtol = 1e-8;

    /// atol + rtol * max(1, scale)
    double tolerance(double scale) const;
};

struct CheckReport {
    std::string entry_id;
    std::string operand_digest;
    std::string variant;
    std::optional<double> t;
    std::optional<double> theta;
    std::vector<double> chain_values;
    double slack = 0.0;
    bool holds = true;
    double tolerance = 0.0;
    double elapsed_s = 0.0;
    bool skipped = false; // status "skipped-degenerate"

    std::string_view status() const { return skipped ? "skipped-degenerate" : "ok"; }
};

/// min over adjacent pairs of (right - left); +inf for chains shorter than 2.
double chain_slack(const std::vector<double>& chain);

/// Knobs shared by all entries. Defaults follow the catalog conventions.
struct EvalSettings {
    TolerancePolicy tolerance{};
    /// Used for every omega. The coarse grid only seeds the branch and bound,
    /// so a small grid loses no accuracy.
    SweepOptions sweep{32, 1, 1e-12, 1024};
    /// Quadrature tolerance is quad_rel_tol * max(1, operand scale).
    double quad_rel_tol = 1e-9;
    int quad_max_evaluations = 4000;
    ScalarDistOptions scalar_dist{};
    OracleOptions oracle{};
    /// Closed grid {0, 0.1, ..., 1} and open grid {0.1, ..., 0.9} unless overridden.
    std::vector<double> t_grid;
    std::vector<double> open_t_grid;
    /// Uniform points for entries quantified over theta (characterization
    /// probe and product bounds).
    int theta_grid = 360;
    /// Uniform points for the sup-over-theta integral entries; the maximizing
    /// angles of the rotation sweep are always added.
    int integral_theta_grid = 4;
    /// Weights used for the Aluthge instantiations of the product bounds.
    std::vector<double> aluthge_weights{0.25, 0.5, 0.75};
    /// Operator norms below this make rescaled bounds degenerate.
    double degenerate_norm = 1e-12;

    const std::vector<double>& closed_grid() const;
    const std::vector<double>& open_grid() const;
};

class EvalContext;

/// Collects the reports of one entry evaluation.
class ReportSink {
public:
    ReportSink(std::string entry_id, std::string digest, double operand_scale, const TolerancePolicy& policy);

    void chain(std::string variant, std::vector<double> values, std::optional<double> t = std::nullopt,
               std::optional<double> theta = std::nullopt);
    void skipped(std::string variant);

    /// Evaluates `values(theta)` on every angle and keeps the angle with the
    /// smallest slack.
    void worst_over_theta(std::string variant, const std::vector<double>& thetas,
                          const std::function<std::vector<double>(double)>& values);

    std::vector<CheckReport> take() { return std::move(reports_); }

private:
    void stamp(CheckReport& report);

    std::string entry_id_;
    std::string digest_;
    double operand_scale_;
    TolerancePolicy policy_;
    std::vector<CheckReport> reports_;
    double last_clock_;
};

/// Operands plus memoized derived quantities for one evaluation site. Entries
/// evaluated through the same context share every omega, norm and integral
/// they have in common.
class EvalContext {
public:
    EvalContext(std::vector<ComplexMatrix> operands, EvalSettings settings = {});

    const ComplexMatrix& op(std::size_t i) const { return operands_.at(i); }
    std::size_t size() const { return operands_.size(); }
    const EvalSettings& settings() const { return settings_; }
    /// Largest operator norm among the operands.
    double operand_scale() const { return operand_scale_; }
    const std::string& digest() const { return digest_; }

    /// Memoized scalar.
    double value(const std::string& key, const std::function<double()>& compute);
    const AngleSweep& sweep(const std::string& key, const std::function<ComplexMatrix()>& make);
    double omega(const std::string& key, const std::function<ComplexMatrix()>& make);
    double norm(const std::string& key, const std::function<ComplexMatrix()>& make);
    const QuadResult& integral(const std::string& key,
                               const std::function<QuadResult(const SegmentIntegralOptions&)>& compute);
    const ScalarDistResult& scalar_dist(const std::string& key, const std::function<ComplexMatrix()>& make);
    const ComplexMatrix& matrix(const std::string& key, const std::function<ComplexMatrix()>& make);

    /// Integrals computed so far, by key (for Hermite-Hadamard checks).
    const std::map<std::string, QuadResult>& integrals() const { return integrals_; }

private:
    std::vector<ComplexMatrix> operands_;
    EvalSettings settings_;
    double operand_scale_ = 0.0;
    std::string digest_;
    std::map<std::string, double> values_;
    std::map<std::string, AngleSweep> sweeps_;
    std::map<std::string, QuadResult> integrals_;
    std::map<std::string, ScalarDistResult> dists_;
    std::map<std::string, ComplexMatrix> matrices_;
};

using Evaluator = std::function<void(EvalContext&, ReportSink&)>;

struct InequalityEntry {
    std::string id;
    std::string title;
    OperandKind operands = OperandKind::single;
    ParamKind params = ParamKind::none;
    bool positive_only = false; // operands must be positive semidefinite
    Evaluator evaluate;
};

/// All entries, E01..E30 in order.
const std::vector<InequalityEntry>& catalog();

/// Throws UnknownEntry.
const InequalityEntry& find_entry(std::string_view id);

/// True when every operand is Hermitian with no eigenvalue below -tol * ||.||.
bool operands_positive(const std::vector<ComplexMatrix>& operands);

/// Evaluates one entry. Throws UnknownEntry, or OperandMismatch when the
/// operand count, dimensions or positivity do not fit the entry.
std::vector<CheckReport> evaluate(std::string_view entry_id, const std::vector<ComplexMatrix>& operands,
                                  const EvalSettings& settings = {});

/// Same, reusing a context shared with other entries.
std::vector<CheckReport> evaluate(const InequalityEntry& entry, EvalContext& context);

/// Operands for evaluate_all; any subset may be present.
struct OperandSet {
    std::optional<ComplexMatrix> single;
    std::optional<std::pair<ComplexMatrix, ComplexMatrix>> pair;
    std::optional<std::array<ComplexMatrix, 4>> quadruple;
};

/// Runs every entry whose operand kind is supplied (positive-only entries only
/// when the pair is positive), in catalog order.
std::vector<CheckReport> evaluate_all(const OperandSet& operands, const EvalSettings& settings = {});

/// Both directions of the characterization omega(T) = ||T|| / 2 <=>
/// ||Re e^{i theta} T|| = ||Im e^{i theta} T|| = ||T|| / 2 for all theta,
/// with theta restricted to a uniform grid.
struct CharacterizationProbe {
    bool premise = false;      // |omega - ||T|| / 2| <= tol
    bool conclusion = false;   // every grid angle within tol
    double max_deviation = 0.0; // largest | ||Re/Im e^{i theta} T|| - ||T|| / 2 |
    double tolerance = 0.0;

    bool consistent() const { return premise == conclusion; }
};

CharacterizationProbe characterization_probe(const ComplexMatrix& t, int theta_grid = 360,
                                             const EvalSettings& settings = {});

/// FNV-1a 64 over dimensions and IEEE bytes of all entries, as 16 hex digits.
std::string operand_digest(const std::vector<ComplexMatrix>& operands);

} // namespace numrad
