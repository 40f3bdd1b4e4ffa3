#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "geewe/engine.hpp"
#include "geewe/solver.hpp"

namespace geewe {

/*
 * Families and the parameters they read:
 *   random           n, alpha, seeds   (edge probability 1/2, mixed intervals)
 *   random-complete  n, alpha, seeds   (K_n, every interval [1, alpha])
 *   recursive        k, depth, alpha
 *   complete         k, alpha          (phase adversary on K_2k)
 *   bipartite        k, alpha          (phase adversary on K_k,k)
 *   grid             m, alpha
 * Deterministic families ignore the seed list.
 */
struct SweepConfig {
    std::string family;
    std::vector<int> k;
    std::vector<int> depth;
    std::vector<Rational> alpha;
    std::vector<int> m;
    std::vector<int> n;
    std::vector<std::string> explorers{"precompute", "adaptive", "nn"};
    std::vector<std::uint64_t> seeds{1};
    std::string output;     // report path without extension; empty writes nothing
    SolverLimits limits;
    unsigned threads = 0;   // 0: hardware concurrency
};

const std::vector<std::string>& family_names();

/// Throws InvalidInput naming the first unusable setting.
void validate(const SweepConfig& config);

struct ReportRow {
    std::string family;
    std::optional<int> k;
    std::optional<int> depth;
    Rational alpha;
    std::optional<int> m;
    int n = 0;
    std::optional<std::uint64_t> seed;
    std::string explorer;
    std::optional<Rational> online_cost;
    std::optional<Rational> offline_cost;
    OfflineKind offline_kind = OfflineKind::none;
    std::optional<Rational> ratio;
    std::string ratio_decimal;
    // Recursive rows carry a lower bound (ratio >= bound); every other bound is an upper one.
    std::optional<Rational> theoretical_bound;
    std::optional<bool> bound_satisfied;
    std::string error;  // set when the row's episode failed; the sweep carries on

    bool operator==(const ReportRow&) const = default;
};

/// Rows in canonical order whatever the thread count.
std::vector<ReportRow> run_sweep(const SweepConfig& config);

const std::vector<std::string>& report_columns();
std::string rows_to_csv(const std::vector<ReportRow>& rows);
std::vector<ReportRow> rows_from_csv(const std::string& text);
nlohmann::json rows_to_json(const std::vector<ReportRow>& rows);
std::vector<ReportRow> rows_from_json(const nlohmann::json& doc);

/// Writes <stem>.csv and <stem>.json.
void write_report(const std::vector<ReportRow>& rows, const std::string& stem);

}  // namespace geewe
