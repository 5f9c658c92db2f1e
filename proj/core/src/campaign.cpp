#include "numrad/campaign.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "numrad/errors.hpp"
#include "numrad/quadrature.hpp"
#include "numrad/scalardist.hpp"
#include "numrad/transforms.hpp"

namespace numrad {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

int parse_int(std::string_view text, const char* what) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ConfigError(std::string("invalid ") + what + " '" + std::string(text) + "'");
    return v;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

template <class T> T get_as(const json& v, const std::string& key) {
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config field '" + key + "' has the wrong type");
    }
}

int get_int(const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw ConfigError("config field '" + key + "' must be an integer");
    return v.get<int>();
}

double get_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("config field '" + key + "' must be a number");
    return v.get<double>();
}

EvalSettings settings_for(const CampaignConfig& c) {
    EvalSettings s;
    s.tolerance = c.tolerance;
    s.theta_grid = c.theta_grid;
    if (!c.t_grid.empty()) {
        s.t_grid = c.t_grid;
        for (double t : c.t_grid)
            if (t > 0.0 && t < 1.0) s.open_t_grid.push_back(t);
    }
    return s;
}

struct Task {
    std::size_t family;
    int dim;
    std::uint64_t index;
};

struct TaskResult {
    std::vector<CheckReport> reports;
    SampleTag tag;
};

// Tasks in (family, dim, sample) order; sample i has dimension dims[i % |dims|].
std::vector<Task> make_tasks(const CampaignConfig& c) {
    std::vector<Task> tasks;
    const auto samples = static_cast<std::uint64_t>(c.samples_per_family);
    const auto ndims = static_cast<std::uint64_t>(c.dims.size());
    for (std::size_t f = 0; f < c.families.size(); ++f)
        for (std::uint64_t d = 0; d < ndims; ++d)
            for (std::uint64_t i = d; i < samples; i += ndims) tasks.push_back({f, c.dims[d], i});
    return tasks;
}

TaskResult run_task(const CampaignConfig& c, const EvalSettings& settings,
                    const std::vector<const InequalityEntry*>& entries, const Task& task) {
    const Family& family = c.families[task.family];
    const std::uint64_t seed = derive_seed(c.seed, (static_cast<std::uint64_t>(task.family) << 32) | task.index);
    const auto draw = [&](std::uint64_t k) { return sample({family, task.dim, derive_seed(seed, k)}); };

    TaskResult result;
    result.tag = {family.name(), task.dim, task.index};
    std::optional<EvalContext> single, pair, quad;
    for (const InequalityEntry* entry : entries) {
        EvalContext* ctx = nullptr;
        switch (entry->operands) {
        case OperandKind::single:
            if (!single) single.emplace(std::vector<ComplexMatrix>{draw(0)}, settings);
            ctx = &*single;
            break;
        case OperandKind::pair:
            if (entry->positive_only && !is_positive_family(family)) break;
            if (!pair) pair.emplace(std::vector<ComplexMatrix>{draw(1), draw(2)}, settings);
            ctx = &*pair;
            break;
        case OperandKind::quadruple:
            if (task.index >= static_cast<std::uint64_t>(c.quadruple_samples)) break;
            if (!quad) quad.emplace(std::vector<ComplexMatrix>{draw(3), draw(4), draw(5), draw(6)}, settings);
            ctx = &*quad;
            break;
        }
        if (!ctx) continue;
        try {
            auto reports = evaluate(*entry, *ctx);
            std::move(reports.begin(), reports.end(), std::back_inserter(result.reports));
        } catch (const std::exception& e) {
            throw Error(entry->id + " failed on " + result.tag.family + " dim " + std::to_string(task.dim) +
                        " sample " + std::to_string(task.index) + ": " + e.what());
        }
    }
    return result;
}

// Runs tasks on `jobs` threads and hands results to `consume` in task order.
// At most `window` results wait for the consumer at any time.
template <class Consume>
void run_ordered(std::size_t count, int jobs, const std::function<TaskResult(std::size_t)>& work, Consume consume) {
    if (jobs <= 1) {
        for (std::size_t k = 0; k < count; ++k) consume(work(k));
        return;
    }
    const std::size_t window = static_cast<std::size_t>(jobs) * 8;
    std::mutex mu;
    std::condition_variable ready;
    std::condition_variable space;
    std::size_t next_task = 0;
    std::size_t next_out = 0;
    std::map<std::size_t, TaskResult> done;
    std::exception_ptr failure;

    const auto worker = [&] {
        for (;;) {
            std::size_t k;
            {
                std::unique_lock lock(mu);
                space.wait(lock, [&] { return failure || next_task >= count || next_task < next_out + window; });
                if (failure || next_task >= count) return;
                k = next_task++;
            }
            try {
                TaskResult r = work(k);
                std::lock_guard lock(mu);
                done.emplace(k, std::move(r));
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure) failure = std::current_exception();
                space.notify_all();
            }
            ready.notify_all();
        }
    };
    std::vector<std::thread> threads;
    for (int j = 0; j < jobs; ++j) threads.emplace_back(worker);

    std::exception_ptr consumer_failure;
    for (std::size_t k = 0; k < count; ++k) {
        TaskResult r;
        {
            std::unique_lock lock(mu);
            ready.wait(lock, [&] { return failure || done.count(k) > 0; });
            if (failure) break;
            auto node = done.extract(k);
            r = std::move(node.mapped());
            ++next_out;
        }
        space.notify_all();
        try {
            consume(std::move(r));
        } catch (...) {
            consumer_failure = std::current_exception();
            std::lock_guard lock(mu);
            failure = consumer_failure;
            space.notify_all();
            break;
        }
    }
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
}

double median(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

ordered_json optional_number(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json quad_json(const QuadResult& q) {
    ordered_json j;
    j["value"] = q.value;
    j["error_estimate"] = q.error_estimate;
    j["evaluations"] = q.evaluations;
    j["converged"] = q.converged;
    return j;
}

} // namespace

std::vector<Family> default_campaign_families() {
    std::vector<Family> out = base_families();
    out.push_back(Family{BaseFamily::ginibre, 100.0, true});
    return out;
}

std::vector<int> parse_dim_range(std::string_view text) {
    const std::string s = trim(text);
    const auto dots = s.find("..");
    if (dots == std::string::npos) return {parse_int(s, "dimension")};
    const int lo = parse_int(std::string_view(s).substr(0, dots), "dimension range");
    const int hi = parse_int(std::string_view(s).substr(dots + 2), "dimension range");
    if (lo > hi) throw ConfigError("empty dimension range '" + s + "'");
    std::vector<int> out;
    for (int d = lo; d <= hi; ++d) out.push_back(d);
    return out;
}

std::vector<std::string> parse_entry_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = text.find(',', start);
        const std::string item = trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
        if (item.empty()) throw ConfigError("empty item in entry list '" + std::string(text) + "'");
        out.push_back(item);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

void validate(const CampaignConfig& c) {
    if (c.samples_per_family < 0) throw ConfigError("samples_per_family must be >= 0");
    if (c.quadruple_samples < 0) throw ConfigError("quadruple_samples must be >= 0");
    if (c.dims.empty()) throw ConfigError("dims must not be empty");
    for (int d : c.dims)
        if (d < 1 || d > 32) throw ConfigError("dimension " + std::to_string(d) + " outside 1..32");
    if (c.families.empty()) throw ConfigError("families must not be empty");
    for (const auto& id : c.entries) {
        try {
            find_entry(id);
        } catch (const UnknownEntry& e) {
            throw ConfigError(e.what());
        }
    }
    for (double t : c.t_grid)
        if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("t_grid values must lie in [0,1]");
    if (!c.t_grid.empty() && std::none_of(c.t_grid.begin(), c.t_grid.end(), [](double t) { return t > 0.0 && t < 1.0; }))
        throw ConfigError("t_grid needs at least one point strictly inside (0,1)");
    if (c.theta_grid < 1) throw ConfigError("theta_grid must be >= 1");
    if (!(c.tolerance.atol >= 0.0 && std::isfinite(c.tolerance.atol))) throw ConfigError("atol must be finite and >= 0");
    if (!(c.tolerance.rtol >= 0.0 && std::isfinite(c.tolerance.rtol))) throw ConfigError("rtol must be finite and >= 0");
    if (c.jobs < 1) throw ConfigError("jobs must be >= 1");
}

CampaignConfig parse_campaign_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    CampaignConfig c;
    for (const auto& [key, v] : doc.items()) {
        if (key == "seed") {
            if (!v.is_number_unsigned()) throw ConfigError("config field 'seed' must be a non-negative integer");
            c.seed = v.get<std::uint64_t>();
        } else if (key == "samples_per_family") {
            c.samples_per_family = get_int(v, key);
        } else if (key == "dims") {
            if (v.is_string())
                c.dims = parse_dim_range(v.get<std::string>());
            else {
                if (!v.is_array()) throw ConfigError("config field 'dims' must be a list or \"a..b\"");
                c.dims.clear();
                for (const auto& d : v) c.dims.push_back(get_int(d, key));
            }
        } else if (key == "families") {
            if (!v.is_array()) throw ConfigError("config field 'families' must be a list");
            c.families.clear();
            for (const auto& f : v) {
                try {
                    c.families.push_back(parse_family(get_as<std::string>(f, key)));
                } catch (const BadSpec& e) {
                    throw ConfigError(e.what());
                }
            }
        } else if (key == "entries") {
            if (v.is_string())
                c.entries = parse_entry_list(v.get<std::string>());
            else
                c.entries = get_as<std::vector<std::string>>(v, key);
        } else if (key == "t_grid") {
            if (!v.is_array()) throw ConfigError("config field 't_grid' must be a list");
            c.t_grid.clear();
            for (const auto& t : v) c.t_grid.push_back(get_number(t, key));
        } else if (key == "theta_grid") {
            c.theta_grid = get_int(v, key);
        } else if (key == "quadruple_samples") {
            c.quadruple_samples = get_int(v, key);
        } else if (key == "atol") {
            c.tolerance.atol = get_number(v, key);
        } else if (key == "rtol") {
            c.tolerance.rtol = get_number(v, key);
        } else if (key == "out") {
            c.out_path = get_as<std::string>(v, key);
        } else if (key == "format") {
            c.format = parse_report_format(get_as<std::string>(v, key));
        } else if (key == "jobs") {
            c.jobs = get_int(v, key);
        } else {
            throw ConfigError("unknown config field '" + key + "'");
        }
    }
    validate(c);
    return c;
}

CampaignConfig load_campaign_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_campaign_config(text.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string config_to_json(const CampaignConfig& c) {
    ordered_json j;
    j["seed"] = c.seed;
    j["samples_per_family"] = c.samples_per_family;
    j["dims"] = c.dims;
    std::vector<std::string> fams;
    for (const auto& f : c.families) fams.push_back(f.name());
    j["families"] = fams;
    std::vector<std::string> ids = c.entries;
    if (ids.empty())
        for (const auto& e : catalog()) ids.push_back(e.id);
    j["entries"] = ids;
    j["t_grid"] = c.t_grid;
    j["theta_grid"] = c.theta_grid;
    j["quadruple_samples"] = c.quadruple_samples;
    j["atol"] = c.tolerance.atol;
    j["rtol"] = c.tolerance.rtol;
    j["out"] = c.out_path;
    j["format"] = to_string(c.format);
    j["jobs"] = c.jobs;
    return j.dump();
}

CampaignReport run_campaign(const CampaignConfig& config, std::ostream* out, const CampaignProgress& progress) {
    validate(config);
    const auto start = std::chrono::steady_clock::now();

    std::ofstream file;
    if (!out && !config.out_path.empty()) {
        file.open(config.out_path);
        if (!file) throw ConfigError("cannot write report file " + config.out_path);
        out = &file;
    }
    if (out && config.format == ReportFormat::csv) *out << csv_header() << '\n';

    std::vector<const InequalityEntry*> entries;
    for (const auto& e : catalog())
        if (config.entries.empty() || std::find(config.entries.begin(), config.entries.end(), e.id) != config.entries.end())
            entries.push_back(&e);

    CampaignReport report;
    report.config = config;
    std::map<std::string, std::vector<double>> slacks;
    for (const auto* e : entries) {
        EntryStats st;
        st.entry_id = e->id;
        report.entries.push_back(std::move(st));
    }
    const auto stats_for = [&](const std::string& id) -> EntryStats& {
        return *std::find_if(report.entries.begin(), report.entries.end(),
                             [&](const EntryStats& s) { return s.entry_id == id; });
    };

    const EvalSettings settings = settings_for(config);
    const std::vector<Task> tasks = make_tasks(config);
    report.samples = tasks.size();
    std::size_t consumed = 0;
    run_ordered(
        tasks.size(), config.jobs, [&](std::size_t k) { return run_task(config, settings, entries, tasks[k]); },
        [&](TaskResult r) {
            for (auto& rep : r.reports) {
                if (out) write_report(*out, config.format, rep, r.tag);
                EntryStats& st = stats_for(rep.entry_id);
                ++report.reports;
                if (rep.skipped) {
                    ++st.skips;
                    ++report.skips;
                    continue;
                }
                ++st.count;
                slacks[rep.entry_id].push_back(rep.slack);
                if (!rep.holds) {
                    ++st.violations;
                    ++report.violations;
                    report.violation_details.push_back({std::move(rep), r.tag});
                }
            }
            if (progress) progress(++consumed, tasks.size());
        });
    if (out) {
        out->flush();
        if (!*out) throw Error("failed writing reports" + (config.out_path.empty() ? "" : " to " + config.out_path));
    }

    for (auto& st : report.entries) {
        const auto it = slacks.find(st.entry_id);
        if (it == slacks.end() || it->second.empty()) continue;
        st.min_slack = *std::min_element(it->second.begin(), it->second.end());
        st.median_slack = median(it->second);
    }
    report.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string campaign_summary_json(const CampaignReport& r) {
    ordered_json j;
    j["config"] = ordered_json::parse(config_to_json(r.config));
    j["samples"] = r.samples;
    j["reports"] = r.reports;
    j["violations"] = r.violations;
    j["skips"] = r.skips;
    ordered_json entries = ordered_json::array();
    for (const auto& s : r.entries) {
        ordered_json e;
        e["entry_id"] = s.entry_id;
        e["count"] = s.count;
        e["min_slack"] = optional_number(s.min_slack);
        e["median_slack"] = optional_number(s.median_slack);
        e["violations"] = s.violations;
        e["skips"] = s.skips;
        entries.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    ordered_json details = ordered_json::array();
    for (const auto& v : r.violation_details) details.push_back(ordered_json::parse(report_to_json(v.report, v.tag)));
    j["violation_details"] = std::move(details);
    j["elapsed_s"] = r.elapsed_s;
    return j.dump(2);
}

BoundsResult bounds_report(const ComplexMatrix& t, const EvalSettings& settings) {
    require_valid(t);
    ordered_json j;
    const AngleSweep sw = numerical_radius(t);
    const ScalarDistResult dist = min_scalar_distance(t, settings.scalar_dist);
    SegmentIntegralOptions quad;
    quad.quad.tol = settings.quad_rel_tol * std::max(1.0, spectral_norm(t));

    j["n"] = t.rows();
    j["norm"] = operator_norm(t);
    j["numerical_radius"] = sw.omega;
    j["numerical_radius_upper"] = sw.omega_upper;
    j["spectral_radius"] = spectral_radius(t);
    j["norm_real_part"] = spectral_norm(real_part(t));
    j["norm_imag_part"] = spectral_norm(imag_part(t));
    ordered_json d;
    d["distance"] = dist.distance;
    d["lambda"] = {dist.lambda_star.real(), dist.lambda_star.imag()};
    d["converged"] = dist.converged;
    j["min_scalar_distance"] = std::move(d);
    ordered_json integrals;
    integrals["numrad_segment"] = quad_json(int_numrad_segment(t, quad));
    integrals["numrad_segment_star"] = quad_json(int_numrad_segment_star(t, quad));
    integrals["norm_segment"] = quad_json(int_norm_segment(t, quad));
    integrals["norm_segment_star"] = quad_json(int_norm_segment_star(t, quad));
    j["segment_integrals"] = std::move(integrals);

    BoundsResult result;
    EvalContext context({t}, settings);
    ordered_json chains = ordered_json::array();
    for (const auto& entry : catalog()) {
        if (entry.operands != OperandKind::single) continue;
        for (const auto& rep : evaluate(entry, context)) {
            ordered_json c = ordered_json::parse(report_to_json(rep));
            c.erase("operand_digest");
            c.erase("elapsed_s");
            chains.push_back(std::move(c));
            if (!rep.holds) ++result.violations;
        }
    }
    j["chains"] = std::move(chains);
    j["violations"] = result.violations;
    result.json = j.dump(2);
    return result;
}

AngleSweep sweep_export(const ComplexMatrix& t, int grid_size) {
    AngleSweep out = sample_rotation(t, grid_size);
    const AngleSweep refined = numerical_radius(t);
    out.omega = refined.omega;
    out.omega_upper = refined.omega_upper;
    out.argmax_theta = refined.argmax_theta;
    return out;
}

} // namespace numrad
