#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forage/types.hpp"

namespace forage {

struct RobotMetrics {
    double travel_distance = 0.0;
    std::int64_t go_to_recharge_time = 0;
    std::int64_t wait_for_recharge_time = 0;
    std::int64_t recharge_time = 0;
    std::int64_t treasures_completed = 0;

    friend bool operator==(const RobotMetrics&, const RobotMetrics&) = default;
};

/// What one robot did during one iteration, as seen by the metrics ledger.
struct RobotStepEvent {
    bool alive = true;
    double moved = 0.0;
    // State the iteration was spent in.
    TaskType activity = TaskType::Idle;
    bool completed = false;
};

class MetricsLedger {
public:
    MetricsLedger() = default;
    explicit MetricsLedger(std::size_t n_robots) : robots_(n_robots) {}

    /// One event per robot, indexed by robot id.
    void record(std::span<const RobotStepEvent> events);

    const std::vector<RobotMetrics>& robots() const { return robots_; }

    /// Sum over robots.
    RobotMetrics fleet_totals() const;

private:
    std::vector<RobotMetrics> robots_;
};

struct MetricsReport {
    std::string scenario;
    std::uint64_t seed = 0;
    RobotMetrics totals;

    friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

inline constexpr std::array<std::string_view, 5> kMetricNames = {
    "travel_distance", "go_to_recharge", "wait_for_recharge", "recharge", "completions",
};

/// The five fleet totals as doubles, in kMetricNames order.
std::array<double, 5> metric_values(const RobotMetrics& totals);

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

struct AggregateStats {
    std::string scenario;
    std::size_t trials = 0;
    std::array<MeanStd, 5> metrics{};  // kMetricNames order
};

/// Mean and sample (n-1) standard deviation per metric. Needs at least two
/// reports; throws InsufficientData otherwise.
AggregateStats aggregate(std::span<const MetricsReport> reports);

class InsufficientData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// CSV rendering. Fixed-precision output so reruns are byte-identical.
std::string trials_csv_header();
std::string trials_csv_row(const MetricsReport& report);
std::string aggregate_csv_header();
std::string aggregate_csv_row(const AggregateStats& stats);

}  // namespace forage
