// redei: command-line front end.
//
//   redei A B C                     Redei symbol certificate
//   redei selmer --p P [--field q|plus|minus]
//   redei report P [--field auto|plus|minus] [--json] [--cache PATH] [--no-cache]
//   redei scan --from A --to B [--class RmodM] [--jobs N] [--cache PATH] [--no-cache]
//   redei points P [--exhaustive]
//
// Exit codes: 0 ok, 1 internal error, 2 symbol not defined, 3 budget exhausted or
// incomplete certificate, 64 usage error.

#include <atomic>
#include <condition_variable>
#include <iostream>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "redei/cache.hpp"
#include "redei/errors.hpp"
#include "redei/family.hpp"
#include "redei/points.hpp"
#include "redei/redei_symbol.hpp"
#include "redei/report_json.hpp"
#include "redei/selmer.hpp"

using namespace redei;

namespace {

constexpr int kExitOk = 0, kExitInternal = 1, kExitNotDefined = 2, kExitBudget = 3, kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Integer parse_integer(const std::string& s) {
  static const std::regex re("[+-]?[0-9]+");
  if (!std::regex_match(s, re)) throw UsageError("not an integer: " + s);
  return Integer(s[0] == '+' ? s.substr(1) : s);
}

Integer parse_prime(const std::string& s) {
  Integer p = parse_integer(s);
  if (p <= 3 || !is_prime(p)) throw UsageError("expected a prime > 3, got " + s);
  return p;
}

bool budget_error(ErrorKind k) { return k == ErrorKind::BudgetExceeded || k == ErrorKind::SearchBudgetExhausted; }

Json error_json(const Error& e) { return {{"kind", to_string(e.kind())}, {"message", e.what()}}; }

int field_sign(const std::string& f) { return f == "plus" ? 1 : f == "minus" ? -1 : 0; }

std::optional<ResultCache> open_cache(const std::string& path, bool disabled) {
  if (disabled) return std::nullopt;
  if (!path.empty()) return std::optional<ResultCache>(std::in_place, path);
  if (std::getenv("REDEI_CACHE")) return std::optional<ResultCache>(std::in_place, default_cache_path());
  return std::nullopt;
}

// One report record; errors are embedded in the result, exit code in *code.
Json report_record(const Integer& p, int sign, ResultCache* cache, int* code) {
  Json params{{"p", p.get_si()}, {"field", sign > 0 ? "plus" : sign < 0 ? "minus" : "auto"}};
  if (cache) {
    if (auto hit = cache->lookup("report", params)) {
      *code = kExitOk;
      return *hit;
    }
  }
  try {
    Json rec = make_record("report", params, to_json(report(p, known_divisor_rank(p), sign)));
    if (cache) cache->insert(rec);
    *code = kExitOk;
    return rec;
  } catch (const Error& e) {
    *code = budget_error(e.kind()) ? kExitBudget : e.kind() == ErrorKind::InvalidArgument ? kExitUsage : kExitInternal;
    return make_record("report", params, {{"p", p.get_si()}, {"error", error_json(e)}});
  } catch (const std::exception& e) {
    *code = kExitInternal;
    return make_record("report", params, {{"p", p.get_si()}, {"error", {{"kind", "Internal"}, {"message", e.what()}}}});
  }
}

int cmd_redei(const std::string& sa, const std::string& sb, const std::string& sc) {
  const Integer a = parse_integer(sa), b = parse_integer(sb), c = parse_integer(sc);
  if (a == 0 || b == 0 || c == 0) throw UsageError("arguments must be nonzero");
  try {
    std::cout << to_json(redei_symbol(a, b, c)).dump(2) << '\n';
    return kExitOk;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotDefined) throw;
    Json j{{"a", a.get_str()}, {"b", b.get_str()}, {"c", c.get_str()}, {"defined", false}, {"error", error_json(e)}};
    j["admissibility"] = to_json(admissible(squarefree_part(a), squarefree_part(b), squarefree_part(c)));
    std::cout << j.dump(2) << '\n';
    return kExitNotDefined;
  }
}

int cmd_selmer(const std::string& sp, const std::string& field) {
  const Integer p = parse_prime(sp);
  Json result;
  if (field == "q") {
    DescentProblem prob = descent_over_q(QuinticModel::scaled(p));
    result = selmer_json(prob, selmer_group(prob), {});
  } else {
    QuadSelmerResult r = selmer_J_over_quad(p, field_sign(field));
    result = selmer_json(r.problem, r.group, r.symbols);
  }
  std::cout << result.dump(2) << '\n';
  return kExitOk;
}

int cmd_report(const std::string& sp, const std::string& field, bool as_record, const std::string& cache_path,
               bool no_cache) {
  const Integer p = parse_prime(sp);
  auto cache = open_cache(cache_path, no_cache);
  int code = kExitOk;
  Json rec = report_record(p, field_sign(field), cache ? &*cache : nullptr, &code);
  if (as_record) std::cout << rec.dump() << '\n';
  else std::cout << rec["result"].dump(2) << '\n';
  return code;
}

struct ClassFilter {
  long r = 0, m = 1;
  bool admits(const Integer& p) const { return Integer(p % m) == r; }
};

ClassFilter parse_class(const std::string& s) {
  static const std::regex re("([0-9]+)mod([0-9]+)");
  std::smatch mt;
  if (!std::regex_match(s, mt, re)) throw UsageError("class must look like 23mod48");
  ClassFilter f{std::stol(mt[1]), std::stol(mt[2])};
  if (f.m <= 0 || f.r >= f.m) throw UsageError("bad class " + s);
  return f;
}

int cmd_scan(const std::string& sfrom, const std::string& sto, const std::string& cls, int jobs,
             const std::string& cache_path, bool no_cache) {
  const Integer from = parse_integer(sfrom), to = parse_integer(sto);
  if (from > to) throw UsageError("empty range");
  if (jobs < 1) throw UsageError("--jobs must be positive");
  const ClassFilter filter = cls.empty() ? ClassFilter{} : parse_class(cls);
  std::vector<Integer> primes;
  for (Integer p = std::max(from, Integer(5)); p <= to; p = next_prime(p)) {
    if (!is_prime(p)) continue;
    if (filter.admits(p)) primes.push_back(p);
  }
  auto cache = open_cache(cache_path, no_cache);

  // Workers fill slots; the main thread prints them in order of p.
  std::vector<std::optional<std::string>> slots(primes.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < primes.size();) {
      int code = 0;
      std::string line = report_record(primes[i], 0, cache ? &*cache : nullptr, &code).dump();
      std::lock_guard<std::mutex> lock(mu);
      slots[i] = std::move(line);
      cv.notify_all();
    }
  };
  std::vector<std::jthread> pool;
  for (int t = 0; t < std::min<int>(jobs, static_cast<int>(primes.size())); ++t) pool.emplace_back(worker);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    std::unique_lock<std::mutex> lock(mu);
    cv.wait(lock, [&] { return slots[i].has_value(); });
    std::cout << *slots[i] << '\n' << std::flush;
    slots[i] = std::string();
  }
  return kExitOk;
}

int cmd_points(const std::string& sp, bool exhaustive) {
  const Integer p = parse_prime(sp);
  PointsResult r = points_certificate(p);
  Json j = to_json(r);
  if (exhaustive) {
    Json survey = Json::array();
    for (const auto& e : two_cover_survey(p)) survey.push_back(to_json(e));
    j["survey"] = {{"label", "conic battery: upper set, not exact; local solvability of X_s: exact"},
                   {"elements", survey}};
  }
  std::cout << j.dump(2) << '\n';
  return r.complete ? kExitOk : kExitBudget;
}

}  // namespace

int main(int argc, char** argv) {
  // A bare "redei A B C" is the symbol command; everything else goes through CLI11.
  if (argc == 4 && std::string(argv[1]).find_first_not_of("+-0123456789") == std::string::npos) {
    try {
      return cmd_redei(argv[1], argv[2], argv[3]);
    } catch (const UsageError& e) {
      std::cerr << "usage: " << e.what() << '\n';
      return kExitUsage;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitInternal;
    }
  }

  CLI::App app{"Redei symbols, 2-Selmer groups and rank reports for y^2 = x(x^2 - p^2)(x^2 - 4p^2)"};
  app.require_subcommand(1);
  int code = kExitOk;

  auto* selmer = app.add_subcommand("selmer", "2-Selmer group of J_p over Q or J over Q(sqrt(+-p))");
  std::string sel_p, sel_field = "q";
  selmer->add_option("--p", sel_p, "prime > 3")->required();
  selmer->add_option("--field", sel_field)->check(CLI::IsMember({"q", "plus", "minus"}));

  auto* rep = app.add_subcommand("report", "per-prime report");
  std::string rep_p, rep_field = "auto", rep_cache;
  bool rep_json = false, rep_nocache = false;
  rep->add_option("p", rep_p)->required();
  rep->add_option("--field", rep_field)->check(CLI::IsMember({"auto", "plus", "minus"}));
  rep->add_flag("--json", rep_json, "print the full ReportRecord on one line");
  rep->add_option("--cache", rep_cache, "cache file (default $REDEI_CACHE)");
  rep->add_flag("--no-cache", rep_nocache);

  auto* scan = app.add_subcommand("scan", "reports for a range of primes, JSONL ordered by p");
  std::string scan_from, scan_to, scan_class, scan_cache;
  int scan_jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bool scan_nocache = false;
  scan->add_option("--from", scan_from)->required();
  scan->add_option("--to", scan_to)->required();
  scan->add_option("--class", scan_class, "residue class, e.g. 23mod48");
  scan->add_option("--jobs", scan_jobs);
  scan->add_option("--cache", scan_cache);
  scan->add_flag("--no-cache", scan_nocache);

  auto* pts = app.add_subcommand("points", "rational points of C_p with their certificate chain");
  std::string pts_p;
  bool pts_exhaustive = false;
  pts->add_option("p", pts_p)->required();
  pts->add_flag("--exhaustive", pts_exhaustive, "add the survey of every Selmer element");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*selmer) code = cmd_selmer(sel_p, sel_field);
    else if (*rep) code = cmd_report(rep_p, rep_field, rep_json, rep_cache, rep_nocache);
    else if (*scan) code = cmd_scan(scan_from, scan_to, scan_class, scan_jobs, scan_cache, scan_nocache);
    else if (*pts) code = cmd_points(pts_p, pts_exhaustive);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cout << Json{{"error", error_json(e)}}.dump(2) << '\n';
    return budget_error(e.kind()) ? kExitBudget : kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return code;
}
