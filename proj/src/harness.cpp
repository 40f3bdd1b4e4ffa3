#include "geewe/harness.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>
#include <tuple>

#include "geewe/adversaries.hpp"
#include "geewe/errors.hpp"
#include "geewe/explorers.hpp"
#include "geewe/instance_io.hpp"

namespace geewe {

namespace {

struct Point {
    std::optional<int> k;
    std::optional<int> depth;
    Rational alpha;
    std::optional<int> m;
    std::optional<int> n;
};

bool seeded(const std::string& family) { return family == "random" || family == "random-complete"; }

std::vector<Point> points(const SweepConfig& c) {
    std::vector<Point> out;
    for (const Rational& a : c.alpha) {
        if (c.family == "recursive") {
            for (int k : c.k)
                for (int d : c.depth) out.push_back({k, d, a, {}, {}});
        } else if (c.family == "complete" || c.family == "bipartite") {
            for (int k : c.k) out.push_back({k, {}, a, {}, {}});
        } else if (c.family == "grid") {
            for (int m : c.m) out.push_back({{}, {}, a, m, {}});
        } else {
            for (int n : c.n) out.push_back({{}, {}, a, {}, n});
        }
    }
    return out;
}

ReportRow blank(const SweepConfig& c, const Point& p, const std::string& explorer, std::optional<std::uint64_t> seed) {
    ReportRow r;
    r.family = c.family;
    r.k = p.k;
    r.depth = p.depth;
    r.alpha = p.alpha;
    r.m = p.m;
    r.n = p.n.value_or(0);
    r.seed = seed;
    r.explorer = explorer;
    return r;
}

void fill(ReportRow& row, const RunReport& rep) {
    row.online_cost = rep.online_cost;
    row.offline_cost = rep.offline_cost;
    row.offline_kind = rep.offline_kind;
    row.ratio = rep.ratio;
    if (rep.ratio) row.ratio_decimal = rep.ratio->decimal(6);
}

void check_upper(ReportRow& row, const Rational& bound) {
    row.theoretical_bound = bound;
    if (row.ratio) row.bound_satisfied = *row.ratio <= bound;
}

// Runs every explorer (and seed) at one parameter point.
std::vector<ReportRow> run_point(const SweepConfig& c, const Point& p) {
    std::vector<ReportRow> rows;
    auto attempt = [&](ReportRow row, const std::function<void(ReportRow&)>& body) {
        try {
            body(row);
        } catch (const std::exception& ex) {
            row.online_cost.reset();
            row.offline_cost.reset();
            row.offline_kind = OfflineKind::none;
            row.ratio.reset();
            row.ratio_decimal.clear();
            row.theoretical_bound.reset();
            row.bound_satisfied.reset();
            row.error = ex.what();
        }
        rows.push_back(std::move(row));
    };
    RunOptions opt;
    opt.limits = c.limits;

    if (seeded(c.family)) {
        for (std::uint64_t seed : c.seeds) {
            const bool complete = c.family == "random-complete";
            RandomSpec spec{*p.n, complete ? 1.0 : 0.5, complete ? IntervalLaw::uniform : IntervalLaw::mixed, p.alpha, seed, complete};
            for (const auto& name : c.explorers) {
                attempt(blank(c, p, name, seed), [&](ReportRow& row) {
                    auto ri = random_instance(spec);
                    row.n = ri.graph.vertex_count();
                    FixedAssignment src(ri.weights);
                    auto ex = make_explorer(name, c.limits);
                    fill(row, run_episode(ri.graph, src, *ex, opt));
                    const Rational alpha = alpha_of(ri.graph).alpha;
                    if (name == "precompute") check_upper(row, alpha);
                    else if (name == "adaptive" && complete) check_upper(row, (alpha + 1) / 2);
                });
            }
        }
        return rows;
    }

    if (c.family == "recursive") {
        for (const auto& name : c.explorers) {
            attempt(blank(c, p, name, {}), [&](ReportRow& row) {
                auto inst = build_recursive({*p.k, *p.depth, p.alpha});
                row.alpha = inst.spec.alpha;
                row.n = inst.graph.vertex_count();
                RecursiveAdversary adv(inst);
                auto ex = make_explorer(name, c.limits);
                RunOptions ro = opt;
                ro.certificate = [&](const WeightAssignment& w) { return std::optional(recursive_certificate(inst, w)); };
                fill(row, run_episode(inst.graph, adv, *ex, ro));
                row.theoretical_bound = recursive_online_bound(*p.k, *p.depth, inst.spec.alpha) / recursive_offline_cost(*p.k, *p.depth);
                if (row.ratio) row.bound_satisfied = *row.ratio >= *row.theoretical_bound;
            });
        }
        return rows;
    }

    if (c.family == "complete" || c.family == "bipartite") {
        for (const auto& name : c.explorers) {
            attempt(blank(c, p, name, {}), [&](ReportRow& row) {
                auto pi = c.family == "complete" ? build_complete_adversary(2 * *p.k, p.alpha)
                                                 : build_bipartite_adversary(*p.k, *p.k, p.alpha);
                row.alpha = pi.alpha;
                row.n = pi.graph.vertex_count();
                PhaseAdversary adv(pi.graph, pi.phase, pi.alpha, c.family);
                auto ex = make_explorer(name, c.limits);
                fill(row, run_episode(pi.graph, adv, *ex, opt));
                if (name == "precompute") check_upper(row, pi.alpha);
                else if (name == "adaptive") check_upper(row, (pi.alpha + 1) / 2);
            });
        }
        return rows;
    }

    // grid: one trap shared by all explorers
    std::optional<GridTrap> trap;
    std::string failure;
    try {
        trap = build_grid_trap({*p.m, p.alpha}, c.limits);
    } catch (const std::exception& ex) {
        failure = ex.what();
    }
    for (const auto& name : c.explorers) {
        attempt(blank(c, p, name, {}), [&](ReportRow& row) {
            if (!trap) throw InvariantViolation(failure);
            row.n = trap->graph.vertex_count();
            FixedAssignment src(trap->weights);
            auto ex = make_explorer(name, c.limits);
            RunOptions ro = opt;
            ro.certificate = [&](const WeightAssignment&) { return std::optional(trap->certificate); };
            fill(row, run_episode(trap->graph, src, *ex, ro));
            if (name == "precompute") check_upper(row, p.alpha);
        });
    }
    return rows;
}

auto sort_key(const ReportRow& r) { return std::tie(r.family, r.k, r.depth, r.alpha, r.m, r.n, r.seed, r.explorer); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

template <class T>
std::string text(const std::optional<T>& v) {
    if (!v) return "";
    if constexpr (std::is_same_v<T, Rational>) return v->str();
    else if constexpr (std::is_same_v<T, bool>) return *v ? "true" : "false";
    else return std::to_string(*v);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& s) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> rec;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if (quoted) {
            if (ch == '"' && i + 1 < s.size() && s[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            rec.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            rec.push_back(std::move(field));
            field.clear();
            records.push_back(std::move(rec));
            rec.clear();
        } else {
            field += ch;
        }
    }
    if (quoted) throw InvalidInput("unterminated quote in CSV report");
    if (!field.empty() || !rec.empty()) {
        rec.push_back(std::move(field));
        records.push_back(std::move(rec));
    }
    return records;
}

OfflineKind kind_from(const std::string& s) {
    if (s == "exact") return OfflineKind::exact;
    if (s == "certificate") return OfflineKind::certificate;
    if (s == "none") return OfflineKind::none;
    throw InvalidInput("unknown offline_kind '" + s + "'");
}

std::optional<int> int_from(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::stoi(s);
}

std::optional<Rational> rational_from(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return Rational::parse(s);
}

std::vector<std::string> row_fields(const ReportRow& r) {
    return {r.family, text(r.k), text(r.depth), r.alpha.str(), text(r.m), std::to_string(r.n), text(r.seed), r.explorer,
            text(r.online_cost), text(r.offline_cost), to_string(r.offline_kind), text(r.ratio), r.ratio_decimal,
            text(r.theoretical_bound), text(r.bound_satisfied), r.error};
}

ReportRow row_from_fields(const std::vector<std::string>& f) {
    if (f.size() != report_columns().size()) throw InvalidInput("report row has " + std::to_string(f.size()) + " fields");
    ReportRow r;
    r.family = f[0];
    r.k = int_from(f[1]);
    r.depth = int_from(f[2]);
    r.alpha = Rational::parse(f[3]);
    r.m = int_from(f[4]);
    r.n = std::stoi(f[5]);
    if (!f[6].empty()) r.seed = std::stoull(f[6]);
    r.explorer = f[7];
    r.online_cost = rational_from(f[8]);
    r.offline_cost = rational_from(f[9]);
    r.offline_kind = kind_from(f[10]);
    r.ratio = rational_from(f[11]);
    r.ratio_decimal = f[12];
    r.theoretical_bound = rational_from(f[13]);
    if (!f[14].empty()) r.bound_satisfied = f[14] == "true";
    r.error = f[15];
    return r;
}

}  // namespace

const std::vector<std::string>& family_names() {
    static const std::vector<std::string> names{"random", "random-complete", "recursive", "complete", "bipartite", "grid"};
    return names;
}

void validate(const SweepConfig& c) {
    const auto& fams = family_names();
    if (std::find(fams.begin(), fams.end(), c.family) == fams.end()) {
        throw InvalidInput("unknown family '" + c.family + "'");
    }
    if (c.alpha.empty()) throw InvalidInput("sweep needs at least one alpha");
    for (const auto& a : c.alpha) {
        if (a < Rational(1)) throw InvalidInput("alpha must be at least 1, got " + a.str());
        if (c.family == "grid" && a >= Rational(2)) throw InvalidInput("grid family needs alpha < 2");
    }
    if (c.explorers.empty()) throw InvalidInput("sweep needs at least one explorer");
    for (const auto& name : c.explorers) make_explorer(name);
    auto need = [&](const std::vector<int>& v, const char* what, int lo, int hi) {
        if (v.empty()) throw InvalidInput(c.family + " family needs --" + what);
        for (int x : v) {
            if (x < lo || x > hi) {
                throw InvalidInput(std::string(what) + " = " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                                   std::to_string(hi) + "] for the " + c.family + " family");
            }
        }
    };
    if (c.family == "recursive") {
        need(c.k, "k", 2, 64);
        need(c.depth, "depth", 0, 8);
    } else if (c.family == "complete" || c.family == "bipartite") {
        need(c.k, "k", 2, 32);
    } else if (c.family == "grid") {
        need(c.m, "m", 4, 8);
    } else {
        need(c.n, "n", 2, 64);
        if (c.seeds.empty()) throw InvalidInput("random families need at least one seed");
    }
}

std::vector<ReportRow> run_sweep(const SweepConfig& config) {
    validate(config);
    const auto pts = points(config);
    std::vector<std::vector<ReportRow>> results(pts.size());
    std::atomic<std::size_t> next{0};
    unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(pts.size(), 1)));
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back([&] {
                for (std::size_t j; (j = next.fetch_add(1)) < pts.size();) results[j] = run_point(config, pts[j]);
            });
        }
    }
    std::vector<ReportRow> rows;
    for (auto& part : results) rows.insert(rows.end(), part.begin(), part.end());
    std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) { return sort_key(a) < sort_key(b); });
    return rows;
}

const std::vector<std::string>& report_columns() {
    static const std::vector<std::string> cols{"family", "k", "depth", "alpha", "m", "n", "seed", "explorer",
                                               "online_cost", "offline_cost", "offline_kind", "ratio", "ratio_decimal",
                                               "theoretical_bound", "bound_satisfied", "error"};
    return cols;
}

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
    std::ostringstream out;
    const auto& cols = report_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& r : rows) {
        auto f = row_fields(r);
        for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << csv_field(f[i]);
        out << '\n';
    }
    return out.str();
}

std::vector<ReportRow> rows_from_csv(const std::string& text) {
    auto records = parse_csv(text);
    if (records.empty() || records.front() != report_columns()) throw InvalidInput("CSV report header does not match");
    std::vector<ReportRow> rows;
    for (std::size_t i = 1; i < records.size(); ++i) rows.push_back(row_from_fields(records[i]));
    return rows;
}

nlohmann::json rows_to_json(const std::vector<ReportRow>& rows) {
    auto doc = nlohmann::json::array();
    const auto& cols = report_columns();
    for (const auto& r : rows) {
        auto f = row_fields(r);
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < cols.size(); ++i) {
            const std::string& col = cols[i];
            if (f[i].empty() && col != "error" && col != "ratio_decimal") {
                obj[col] = nullptr;
            } else if (col == "k" || col == "depth" || col == "m" || col == "n") {
                obj[col] = std::stoi(f[i]);
            } else if (col == "seed") {
                obj[col] = *r.seed;
            } else if (col == "bound_satisfied") {
                obj[col] = *r.bound_satisfied;
            } else {
                obj[col] = f[i];
            }
        }
        doc.push_back(std::move(obj));
    }
    return doc;
}

std::vector<ReportRow> rows_from_json(const nlohmann::json& doc) {
    if (!doc.is_array()) throw InvalidInput("JSON report must be an array");
    std::vector<ReportRow> rows;
    for (const auto& obj : doc) {
        std::vector<std::string> f;
        for (const auto& col : report_columns()) {
            const auto& v = obj.at(col);
            if (v.is_null()) f.emplace_back();
            else if (v.is_string()) f.push_back(v.get<std::string>());
            else if (v.is_boolean()) f.emplace_back(v.get<bool>() ? "true" : "false");
            else f.push_back(v.dump());
        }
        rows.push_back(row_from_fields(f));
    }
    return rows;
}

void write_report(const std::vector<ReportRow>& rows, const std::string& stem) {
    write_text_file(stem + ".csv", rows_to_csv(rows));
    write_text_file(stem + ".json", rows_to_json(rows).dump(2) + "\n");
}

}  // namespace geewe
