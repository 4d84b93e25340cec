#include "forage/metrics.hpp"

#include <cmath>

#include <fmt/format.h>

namespace forage {

void MetricsLedger::record(std::span<const RobotStepEvent> events) {
    if (events.size() != robots_.size()) {
        throw ContractViolation(
            fmt::format("metrics ledger tracks {} robots but got {} events", robots_.size(), events.size()));
    }
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& ev = events[i];
        if (!ev.alive) continue;
        auto& m = robots_[i];
        m.travel_distance += ev.moved;
        switch (ev.activity) {
            case TaskType::GoToRecharge: ++m.go_to_recharge_time; break;
            case TaskType::WaitForRecharging: ++m.wait_for_recharge_time; break;
            case TaskType::Recharging: ++m.recharge_time; break;
            default: break;
        }
        if (ev.completed) ++m.treasures_completed;
    }
}

RobotMetrics MetricsLedger::fleet_totals() const {
    RobotMetrics total;
    for (const auto& m : robots_) {
        total.travel_distance += m.travel_distance;
        total.go_to_recharge_time += m.go_to_recharge_time;
        total.wait_for_recharge_time += m.wait_for_recharge_time;
        total.recharge_time += m.recharge_time;
        total.treasures_completed += m.treasures_completed;
    }
    return total;
}

std::array<double, 5> metric_values(const RobotMetrics& t) {
    return {t.travel_distance, static_cast<double>(t.go_to_recharge_time),
            static_cast<double>(t.wait_for_recharge_time), static_cast<double>(t.recharge_time),
            static_cast<double>(t.treasures_completed)};
}

AggregateStats aggregate(std::span<const MetricsReport> reports) {
    if (reports.size() < 2) {
        throw InsufficientData(fmt::format("aggregate needs at least 2 trials, got {}", reports.size()));
    }
    AggregateStats stats;
    stats.scenario = reports.front().scenario;
    stats.trials = reports.size();
    const double n = static_cast<double>(reports.size());
    for (std::size_t k = 0; k < kMetricNames.size(); ++k) {
        double sum = 0.0;
        for (const auto& r : reports) sum += metric_values(r.totals)[k];
        const double mean = sum / n;
        double ss = 0.0;
        for (const auto& r : reports) {
            const double d = metric_values(r.totals)[k] - mean;
            ss += d * d;
        }
        stats.metrics[k] = {mean, std::sqrt(ss / (n - 1.0))};
    }
    return stats;
}

std::string trials_csv_header() {
    return "scenario,seed,travel_distance,go_to_recharge,wait_for_recharge,recharge,completions";
}

std::string trials_csv_row(const MetricsReport& r) {
    const auto& t = r.totals;
    return fmt::format("{},{},{:.6f},{},{},{},{}", r.scenario, r.seed, t.travel_distance, t.go_to_recharge_time,
                       t.wait_for_recharge_time, t.recharge_time, t.treasures_completed);
}

std::string aggregate_csv_header() {
    std::string header = "scenario,trials";
    for (auto name : kMetricNames) header += fmt::format(",{0}_mean,{0}_std", name);
    return header;
}

std::string aggregate_csv_row(const AggregateStats& stats) {
    std::string row = fmt::format("{},{}", stats.scenario, stats.trials);
    for (const auto& m : stats.metrics) row += fmt::format(",{:.6f},{:.6f}", m.mean, m.std);
    return row;
}

}  // namespace forage
