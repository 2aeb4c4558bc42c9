// Grid runner for the verification suites: enumerates (e, p, selector),
// evaluates one scope per point on a worker pool and emits reports in grid order.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cyclocert/report.hpp"

namespace cyclocert::suite {

enum class Scope { stickelberger, contents, units, swan, davenport_hasse, all };

std::optional<Scope> parse_scope(const std::string& s);
std::string scope_name(Scope s);

struct GridPoint {
  i64 e = 0, p = 0, selector = 0, f = 0;
};

struct GridSpec {
  i64 max_e = 9;
  i64 max_pf = 1000;
  /// Explicit e values; max_e is ignored when set. Even entries are skipped.
  std::vector<i64> e_values;
  std::optional<i64> p;
  std::optional<i64> selector;
};

/// Odd e >= 3 ascending (e = 1 only when listed explicitly), then primes p
/// not dividing e with p^f <= max_pf ascending, then every selector ascending.
std::vector<GridPoint> grid(const GridSpec& spec);

/// All checks of one scope at one point. Exceptions become a failing check.
Report run_point(Scope scope, const GridPoint& pt);

struct SuiteResult {
  std::vector<Report> reports;
  i64 checks = 0, failures = 0;
  bool pass() const { return failures == 0; }
};

/// Runs the points on `threads` workers; on_report sees the reports in grid order.
SuiteResult run_suite(Scope scope, const std::vector<GridPoint>& points, unsigned threads,
                      const std::function<void(const Report&)>& on_report = {});

/// CYCLOCERT_JOBS if set and positive, else the hardware concurrency (at least 1).
unsigned default_parallelism();

}  // namespace cyclocert::suite
