#pragma once

#include <algorithm>
#include <chrono>
#include <string>

#include "prmi/am_engine.hpp"

namespace prmi::detail {

template <class State>
struct Iterate {
    State sigma{};
    State tau{};
    double x = 0.0;
    double q = 0.0;
};

// Accumulates iteration records and state snapshots of one run.
template <class State>
class TraceBuilder {
public:
    using Clock = std::chrono::steady_clock;

    TraceBuilder(double alpha, double eps0, bool record_all, std::string algorithm, double c0)
        : record_all_(record_all), started_(Clock::now()) {
        trace_.alpha = alpha;
        trace_.eps0 = eps0;
        trace_.algorithm = std::move(algorithm);
        trace_.c0 = c0;
    }

    void record(std::size_t n, const Iterate<State>& it, ExtendedReal eps) {
        const double secs = std::chrono::duration<double>(Clock::now() - started_).count();
        trace_.records.push_back({n, it.x, eps, it.q, secs});
        if (record_all_ || trace_.snapshots.empty()) trace_.snapshots.push_back({n, it.sigma, it.tau});
    }

    BasicTrace<State> finish(const Iterate<State>& last, Termination t) {
        const std::size_t n = trace_.iterations();
        if (trace_.snapshots.back().n != n) trace_.snapshots.push_back({n, last.sigma, last.tau});
        trace_.final_x = last.x;
        trace_.final_sigma_a = last.sigma;
        trace_.final_tau_b = last.tau;
        trace_.terminated_by = t;
        return std::move(trace_);
    }

private:
    bool record_all_;
    Clock::time_point started_;
    BasicTrace<State> trace_;
};

/// Clamped descent x_{n-1} - x_n; throws MonotonicityViolation below -1e-10.
inline double descent(double previous, double current) {
    const double d = previous - current;
    if (d < -1e-10) throw MonotonicityViolation("objective increased by " + std::to_string(-d));
    return std::max(0.0, d);
}

}  // namespace prmi::detail
