#include "cyclocert/suite.hpp"

#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "cyclocert/homrep.hpp"
#include "cyclocert/stickelberger.hpp"
#include "cyclocert/sums.hpp"

namespace cyclocert::suite {

std::optional<Scope> parse_scope(const std::string& s) {
  if (s == "stickelberger") return Scope::stickelberger;
  if (s == "contents") return Scope::contents;
  if (s == "units") return Scope::units;
  if (s == "swan") return Scope::swan;
  if (s == "davenport-hasse") return Scope::davenport_hasse;
  if (s == "all") return Scope::all;
  return std::nullopt;
}

std::string scope_name(Scope s) {
  switch (s) {
    case Scope::stickelberger: return "stickelberger";
    case Scope::contents: return "contents";
    case Scope::units: return "units";
    case Scope::swan: return "swan";
    case Scope::davenport_hasse: return "davenport-hasse";
    case Scope::all: return "all";
  }
  return "";
}

std::vector<GridPoint> grid(const GridSpec& spec) {
  std::vector<i64> es = spec.e_values;
  if (es.empty())
    for (i64 e = 3; e <= spec.max_e; e += 2) es.push_back(e);
  std::vector<GridPoint> out;
  for (i64 e : es) {
    if (e < 1 || e % 2 == 0) continue;
    const i64 first = spec.p ? *spec.p : 2;
    const i64 last = spec.p ? *spec.p : spec.max_pf;
    for (i64 p = first; p <= last; ++p) {
      if (!is_prime(p) || e % p == 0) continue;
      const i64 f = multiplicative_order(p % e, e);
      // p^f <= max_pf without overflow
      i64 pf = 1;
      bool within = true;
      for (i64 k = 0; k < f && within; ++k) {
        if (pf > spec.max_pf / p) within = false;
        else pf *= p;
      }
      if (!within || pf > spec.max_pf) continue;
      const i64 sels = euler_phi(e) / f;
      for (i64 s = 0; s < sels; ++s)
        if (!spec.selector || *spec.selector == s) out.push_back({e, p, s, f});
    }
  }
  return out;
}

namespace {

json point_params(const GridPoint& pt) {
  return json{{"e", std::to_string(pt.e)}, {"p", std::to_string(pt.p)}, {"selector", std::to_string(pt.selector)}};
}

void davenport_hasse(Report& R, const GridPoint& pt) {
  const residue::PrimeAboveP P = residue::split_prime(cyclo::CycField::make(pt.e), pt.p, pt.selector);
  for (i64 ep : divisors(pt.e)) {
    json pr = point_params(pt);
    pr["e'"] = std::to_string(ep);
    const bool jac = sums::davenport_hasse_jacobi(P, ep);
    R.add("Davenport-Hasse (Jacobi form)", pr, true, jac, jac);
    const bool gau = sums::davenport_hasse_gauss(P, ep);
    R.add("Davenport-Hasse (Gauss form)", pr, true, gau, gau);
  }
}

void run_scope(Report& R, Scope scope, const GridPoint& pt) {
  switch (scope) {
    case Scope::stickelberger:
      R.merge(stickelberger::verify_stickelberger(residue::split_prime(cyclo::CycField::make(pt.e), pt.p, pt.selector)));
      break;
    case Scope::contents: R.merge(stickelberger::verify_contents(pt.e, pt.p, pt.selector)); break;
    case Scope::units: R.merge(homrep::unit_certificates(pt.e, pt.p, pt.selector).report); break;
    case Scope::swan:
      // Selector independent: checked once per (e, p).
      if (pt.selector == 0) R.merge(homrep::swan_unit_certificate(pt.e, pt.p));
      break;
    case Scope::davenport_hasse: davenport_hasse(R, pt); break;
    case Scope::all:
      // units already carries the Swan certificate
      for (Scope s : {Scope::stickelberger, Scope::contents, Scope::units, Scope::davenport_hasse}) run_scope(R, s, pt);
      break;
  }
}

}  // namespace

Report run_point(Scope scope, const GridPoint& pt) {
  Report R;
  R.e = pt.e;
  R.p = pt.p;
  R.selector = pt.selector;
  try {
    run_scope(R, scope, pt);
  } catch (const std::exception& ex) {
    R.add("exception", point_params(pt), "none", ex.what(), false);
  }
  return R;
}

SuiteResult run_suite(Scope scope, const std::vector<GridPoint>& points, unsigned threads,
                      const std::function<void(const Report&)>& on_report) {
  std::vector<std::optional<Report>> slots(points.size());
  std::mutex mu;
  std::condition_variable cv;
  size_t next = 0;
  auto worker = [&] {
    for (;;) {
      size_t i;
      {
        std::lock_guard lock(mu);
        if (next == points.size()) return;
        i = next++;
      }
      Report r = run_point(scope, points[i]);
      {
        std::lock_guard lock(mu);
        slots[i] = std::move(r);
      }
      cv.notify_all();
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<size_t>(points.size(), 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);

  SuiteResult out;
  for (size_t i = 0; i < points.size(); ++i) {
    Report r;
    {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return slots[i].has_value(); });
      r = std::move(*slots[i]);
      slots[i].reset();
    }
    out.checks += static_cast<i64>(r.checks.size());
    out.failures += r.failures();
    if (on_report) on_report(r);
    out.reports.push_back(std::move(r));
  }
  for (auto& t : pool) t.join();
  return out;
}

unsigned default_parallelism() {
  if (const char* v = std::getenv("CYCLOCERT_JOBS")) {
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace cyclocert::suite
