#include "numrad/registry.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>

#include "numrad/errors.hpp"

namespace numrad {

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::vector<double> uniform_grid(double lo, double hi, int count) {
    std::vector<double> out;
    for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
    return out;
}

class Fnv1a {
public:
    void byte(unsigned char b) {
        hash_ ^= b;
        hash_ *= 0x100000001b3ULL;
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) byte(static_cast<unsigned char>(v >> (8 * i)));
    }
    void f64(double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        u64(bits);
    }
    std::uint64_t value() const { return hash_; }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

} // namespace

std::string_view to_string(OperandKind kind) {
    switch (kind) {
    case OperandKind::single: return "single";
    case OperandKind::pair: return "pair";
    case OperandKind::quadruple: return "quadruple";
    }
    return "?";
}

std::string_view to_string(ParamKind kind) {
    switch (kind) {
    case ParamKind::none: return "none";
    case ParamKind::t_grid: return "t-grid";
    case ParamKind::open_t_grid: return "open-t-grid";
    case ParamKind::theta_grid: return "theta-grid";
    }
    return "?";
}

double TolerancePolicy::tolerance(double scale) const { return atol + rtol * std::max(1.0, scale); }

double chain_slack(const std::vector<double>& chain) {
    double slack = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) slack = std::min(slack, chain[k + 1] - chain[k]);
    return slack;
}

const std::vector<double>& EvalSettings::closed_grid() const {
    static const std::vector<double> def = uniform_grid(0.0, 1.0, 11);
    return t_grid.empty() ? def : t_grid;
}

const std::vector<double>& EvalSettings::open_grid() const {
    static const std::vector<double> def = uniform_grid(0.1, 0.9, 9);
    return open_t_grid.empty() ? def : open_t_grid;
}

ReportSink::ReportSink(std::string entry_id, std::string digest, double operand_scale, const TolerancePolicy& policy)
    : entry_id_(std::move(entry_id)), digest_(std::move(digest)), operand_scale_(operand_scale), policy_(policy),
      last_clock_(now_seconds()) {}

void ReportSink::stamp(CheckReport& report) {
    const double now = now_seconds();
    report.elapsed_s = now - last_clock_;
    last_clock_ = now;
}

void ReportSink::chain(std::string variant, std::vector<double> values, std::optional<double> t,
                       std::optional<double> theta) {
    CheckReport report;
    report.entry_id = entry_id_;
    report.operand_digest = digest_;
    report.variant = std::move(variant);
    report.t = t;
    report.theta = theta;
    double scale = operand_scale_;
    for (double v : values) {
        if (!std::isfinite(v)) throw Error(entry_id_ + "/" + report.variant + ": non-finite chain value");
        scale = std::max(scale, std::abs(v));
    }
    report.chain_values = std::move(values);
    report.slack = chain_slack(report.chain_values);
    report.tolerance = policy_.tolerance(scale);
    report.holds = report.slack >= -report.tolerance;
    stamp(report);
    reports_.push_back(std::move(report));
}

void ReportSink::skipped(std::string variant) {
    CheckReport report;
    report.entry_id = entry_id_;
    report.operand_digest = digest_;
    report.variant = std::move(variant);
    report.skipped = true;
    report.tolerance = policy_.tolerance(operand_scale_);
    stamp(report);
    reports_.push_back(std::move(report));
}

void ReportSink::worst_over_theta(std::string variant, const std::vector<double>& thetas,
                                  const std::function<std::vector<double>(double)>& values) {
    if (thetas.empty()) throw DomainError("empty theta grid");
    std::vector<double> worst;
    double worst_theta = thetas.front();
    double worst_slack = std::numeric_limits<double>::infinity();
    for (double theta : thetas) {
        std::vector<double> v = values(theta);
        const double s = chain_slack(v);
        if (worst.empty() || s < worst_slack) {
            worst_slack = s;
            worst_theta = theta;
            worst = std::move(v);
        }
    }
    chain(std::move(variant), std::move(worst), std::nullopt, worst_theta);
}

EvalContext::EvalContext(std::vector<ComplexMatrix> operands, EvalSettings settings)
    : operands_(std::move(operands)), settings_(std::move(settings)) {
    for (const auto& m : operands_) {
        require_valid(m);
        operand_scale_ = std::max(operand_scale_, spectral_norm(m));
    }
    digest_ = operand_digest(operands_);
}

double EvalContext::value(const std::string& key, const std::function<double()>& compute) {
    if (auto it = values_.find(key); it != values_.end()) return it->second;
    const double v = compute();
    values_.emplace(key, v);
    return v;
}

const ComplexMatrix& EvalContext::matrix(const std::string& key, const std::function<ComplexMatrix()>& make) {
    if (auto it = matrices_.find(key); it != matrices_.end()) return it->second;
    return matrices_.emplace(key, make()).first->second;
}

const AngleSweep& EvalContext::sweep(const std::string& key, const std::function<ComplexMatrix()>& make) {
    if (auto it = sweeps_.find(key); it != sweeps_.end()) return it->second;
    AngleSweep s = numerical_radius(make(), settings_.sweep);
    // Grid samples are not needed downstream.
    s.thetas.clear();
    s.g_values.clear();
    return sweeps_.emplace(key, std::move(s)).first->second;
}

double EvalContext::omega(const std::string& key, const std::function<ComplexMatrix()>& make) {
    return sweep(key, make).omega;
}

double EvalContext::norm(const std::string& key, const std::function<ComplexMatrix()>& make) {
    return value("norm:" + key, [&] { return spectral_norm(make()); });
}

const QuadResult& EvalContext::integral(const std::string& key,
                                        const std::function<QuadResult(const SegmentIntegralOptions&)>& compute) {
    if (auto it = integrals_.find(key); it != integrals_.end()) return it->second;
    SegmentIntegralOptions opts;
    opts.quad.tol = settings_.quad_rel_tol * std::max(1.0, operand_scale_);
    opts.quad.max_evaluations = settings_.quad_max_evaluations;
    opts.sweep = settings_.sweep;
    return integrals_.emplace(key, compute(opts)).first->second;
}

const ScalarDistResult& EvalContext::scalar_dist(const std::string& key, const std::function<ComplexMatrix()>& make) {
    if (auto it = dists_.find(key); it != dists_.end()) return it->second;
    return dists_.emplace(key, min_scalar_distance(make(), settings_.scalar_dist)).first->second;
}

const InequalityEntry& find_entry(std::string_view id) {
    for (const auto& e : catalog())
        if (e.id == id) return e;
    throw UnknownEntry("unknown catalog entry '" + std::string(id) + "'");
}

bool operands_positive(const std::vector<ComplexMatrix>& operands) {
    for (const auto& m : operands) {
        const double scale = std::max(1.0, spectral_norm(m));
        if (!is_hermitian(m, default_tolerance(scale))) return false;
        const HermEigResult eig = herm_eig(m);
        if (eig.eigenvalues(0) < -default_tolerance(scale)) return false;
    }
    return true;
}

namespace {

std::size_t operand_count(OperandKind kind) {
    switch (kind) {
    case OperandKind::single: return 1;
    case OperandKind::pair: return 2;
    case OperandKind::quadruple: return 4;
    }
    return 0;
}

void check_operands(const InequalityEntry& entry, const std::vector<ComplexMatrix>& operands) {
    const std::size_t want = operand_count(entry.operands);
    if (operands.size() != want)
        throw OperandMismatch(entry.id + " expects " + std::to_string(want) + " operand(s), got " +
                              std::to_string(operands.size()));
    for (const auto& m : operands) {
        if (m.rows() != m.cols() || m.rows() != operands.front().rows())
            throw OperandMismatch(entry.id + ": operands must be square and of equal dimension");
    }
    if (entry.positive_only && !operands_positive(operands))
        throw OperandMismatch(entry.id + " requires positive semidefinite operands");
}

} // namespace

std::vector<CheckReport> evaluate(const InequalityEntry& entry, EvalContext& context) {
    std::vector<ComplexMatrix> ops;
    for (std::size_t i = 0; i < context.size(); ++i) ops.push_back(context.op(i));
    check_operands(entry, ops);
    ReportSink sink(entry.id, context.digest(), context.operand_scale(), context.settings().tolerance);
    entry.evaluate(context, sink);
    return sink.take();
}

std::vector<CheckReport> evaluate(std::string_view entry_id, const std::vector<ComplexMatrix>& operands,
                                  const EvalSettings& settings) {
    const InequalityEntry& entry = find_entry(entry_id);
    check_operands(entry, operands);
    EvalContext context(operands, settings);
    return evaluate(entry, context);
}

std::vector<CheckReport> evaluate_all(const OperandSet& operands, const EvalSettings& settings) {
    std::optional<EvalContext> single;
    std::optional<EvalContext> pair;
    std::optional<EvalContext> quad;
    bool pair_positive = false;
    if (operands.single) single.emplace(std::vector<ComplexMatrix>{*operands.single}, settings);
    if (operands.pair) {
        const auto& [a, b] = *operands.pair;
        if (a.rows() != b.rows() || a.cols() != b.cols())
            throw OperandMismatch("pair operands must have equal dimensions");
        pair.emplace(std::vector<ComplexMatrix>{a, b}, settings);
        pair_positive = operands_positive({a, b});
    }
    if (operands.quadruple) {
        const auto& x = *operands.quadruple;
        for (const auto& m : x)
            if (m.rows() != x[0].rows() || m.cols() != x[0].cols())
                throw OperandMismatch("quadruple operands must have equal dimensions");
        quad.emplace(std::vector<ComplexMatrix>(x.begin(), x.end()), settings);
    }

    std::vector<CheckReport> out;
    for (const auto& entry : catalog()) {
        EvalContext* ctx = nullptr;
        switch (entry.operands) {
        case OperandKind::single: ctx = single ? &*single : nullptr; break;
        case OperandKind::pair: ctx = pair && (!entry.positive_only || pair_positive) ? &*pair : nullptr; break;
        case OperandKind::quadruple: ctx = quad ? &*quad : nullptr; break;
        }
        if (!ctx) continue;
        auto reports = evaluate(entry, *ctx);
        out.insert(out.end(), std::make_move_iterator(reports.begin()), std::make_move_iterator(reports.end()));
    }
    return out;
}

std::string operand_digest(const std::vector<ComplexMatrix>& operands) {
    Fnv1a h;
    h.u64(operands.size());
    for (const auto& m : operands) {
        h.u64(static_cast<std::uint64_t>(m.rows()));
        h.u64(static_cast<std::uint64_t>(m.cols()));
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                h.f64(m(i, j).real());
                h.f64(m(i, j).imag());
            }
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out(16, '0');
    std::uint64_t v = h.value();
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[v & 0xf];
        v >>= 4;
    }
    return out;
}

} // namespace numrad
