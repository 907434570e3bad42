// ctident: exact verification of the Dyson / Morris / Aomoto / Forrester
// constant term identities, their proof replays, root tables, and the
// closing coefficient conjecture.
//
// Exit codes: 0 pass, 1 identity mismatch, 2 usage error, 3 resource limit.

#include <atomic>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <ctident/ct_engine.hpp>
#include <ctident/identities.hpp>
#include <ctident/json_io.hpp>
#include <ctident/vanishing.hpp>
#include <ctident/verify.hpp>

namespace {

using namespace ctident;

constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct CommonFlags {
  std::string family;
  std::vector<long> a;
  std::optional<long> a_scalar;
  int n = 0;
  int m = 0;
  long b = 0;
  long k = 0;
  int n0 = 0;
  int n1 = 0;
  unsigned jobs = 0;
  std::size_t max_terms = kDefaultTermLimit;
  std::string out;
  std::string instance_json;
  std::string mode = "verify";
};

void add_param_flags(CLI::App* cmd, CommonFlags& f, bool with_a) {
  cmd->add_option("--family", f.family, "dyson | morris | aomoto | forrester")
      ->required();
  if (with_a)
    cmd->add_option("--a", f.a,
                    "dyson: comma list a0,..,an; other families: single value")
        ->delimiter(',');
  cmd->add_option("--n", f.n, "number of undistinguished variables");
  cmd->add_option("--m", f.m, "aomoto index");
  cmd->add_option("--b", f.b, "parameter b");
  cmd->add_option("--k", f.k, "parameter k");
  cmd->add_option("--n0", f.n0, "forrester n0");
  cmd->add_option("--n1", f.n1, "forrester n1");
  cmd->add_option("--max-terms", f.max_terms, "expanded term cap");
  cmd->add_option("--out", f.out, "also write the payload to this file");
}

Family parse_family(const std::string& name) {
  if (name == "dyson") return Family::dyson;
  if (name == "morris") return Family::morris;
  if (name == "aomoto") return Family::aomoto;
  if (name == "forrester") return Family::forrester;
  throw usage_error("unknown family '" + name + "'");
}

IdentityInstance instance_from_flags(const CommonFlags& f) {
  if (!f.instance_json.empty())
    return instance_from_json(Json::parse(f.instance_json));
  switch (parse_family(f.family)) {
    case Family::dyson: {
      if (f.a.empty()) throw usage_error("dyson: --a a0,..,an is required");
      return IdentityInstance{DysonParams{f.a}};
    }
    case Family::morris: {
      long a = f.a.empty() ? 0 : f.a.front();
      return IdentityInstance{MorrisParams{f.n, a, f.b, f.k}};
    }
    case Family::aomoto: {
      long a = f.a.empty() ? 0 : f.a.front();
      return IdentityInstance{AomotoParams{f.n, f.m, a, f.b, f.k}};
    }
    case Family::forrester: {
      long a = f.a.empty() ? 0 : f.a.front();
      return IdentityInstance{ForresterParams{f.n0, f.n1, a, f.b, f.k}};
    }
  }
  throw usage_error("unknown family");
}

void emit_payload(const std::string& payload, const std::string& out_path) {
  std::cout << payload;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw usage_error("cannot open output file '" + out_path + "'");
    out << payload;
  }
}

int report_exit(const VerificationReport& rep, const std::string& out_path) {
  emit_payload(report_to_json(rep).dump(2) + "\n", out_path);
  std::cerr << "# elapsed_s=" << rep.elapsed_seconds << "\n";
  return rep.overall() ? kExitPass : kExitMismatch;
}

// ---------------------------------------------------------------------------
// scan grids

struct ScanRow {
  std::string params;  // quoted CSV cell
  std::vector<CheckResult> checks;
  bool resource_failure = false;
};

std::string csv_quote(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += "\"";
  return q;
}

std::vector<IdentityInstance> scan_instances(const CommonFlags& f) {
  std::vector<IdentityInstance> grid;
  switch (parse_family(f.family)) {
    case Family::dyson: {
      // all a with n <= --n and sum <= --a (single bound value)
      const long max_sum = f.a.empty() ? 0 : f.a.front();
      for (int n = 0; n <= f.n; ++n) {
        std::vector<long> a(static_cast<std::size_t>(n) + 1, 0);
        // odometer over compositions with sum <= max_sum
        while (true) {
          long sum = 0;
          for (long v : a) sum += v;
          if (sum <= max_sum) grid.push_back(IdentityInstance{DysonParams{a}});
          std::size_t i = 0;
          while (i < a.size()) {
            if (++a[i] <= max_sum) break;
            a[i] = 0;
            ++i;
          }
          if (i == a.size()) break;
        }
      }
      break;
    }
    case Family::morris: {
      const long max_a = f.a.empty() ? 0 : f.a.front();
      for (int n = 1; n <= f.n; ++n)
        for (long b = 0; b <= f.b; ++b)
          for (long k = 0; k <= f.k; ++k) {
            if (f.mode == "replay") {
              if (b >= 1 && k >= b)
                grid.push_back(IdentityInstance{MorrisParams{n, 0, b, k}});
            } else {
              for (long a = 0; a <= max_a; ++a)
                grid.push_back(IdentityInstance{MorrisParams{n, a, b, k}});
            }
          }
      break;
    }
    case Family::aomoto: {
      const long max_a = f.a.empty() ? 0 : f.a.front();
      for (int n = 2; n <= f.n; ++n)
        for (int m = 1; m <= n - 1; ++m)
          for (long b = 0; b <= f.b; ++b)
            for (long k = 0; k <= f.k; ++k) {
              if (f.mode == "replay") {
                if (k >= b)
                  grid.push_back(IdentityInstance{AomotoParams{n, m, 0, b, k}});
              } else {
                for (long a = 0; a <= max_a; ++a)
                  grid.push_back(IdentityInstance{AomotoParams{n, m, a, b, k}});
              }
            }
      break;
    }
    case Family::forrester: {
      const long max_a = f.a.empty() ? 0 : f.a.front();
      for (int n = 1; n <= f.n; ++n)
        for (int n0 = 0; n0 <= n; ++n0)
          for (long b = 0; b <= f.b; ++b)
            for (long k = 0; k <= f.k; ++k) {
              const int n1 = n - n0;
              if (f.mode == "replay") {
                if (k >= b)
                  grid.push_back(IdentityInstance{ForresterParams{n0, n1, 0, b, k}});
              } else {
                for (long a = 0; a <= max_a; ++a)
                  grid.push_back(IdentityInstance{ForresterParams{n0, n1, a, b, k}});
              }
            }
      break;
    }
  }
  return grid;
}

std::string params_cell(const IdentityInstance& inst, bool suppress_a) {
  const Json j = instance_to_json(inst, suppress_a);
  std::ostringstream out;
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "family") continue;
    if (!first) out << ";";
    first = false;
    out << it.key() << "=" << it.value().dump();
  }
  return out.str();
}

VerificationReport run_one(const IdentityInstance& inst, const std::string& mode,
                           const EngineLimits& limits) {
  if (mode == "verify") return verify_identity(inst, limits);
  switch (inst.family()) {
    case Family::dyson: {
      std::vector<long> rest(inst.dyson().a.begin() + 1, inst.dyson().a.end());
      return replay_dyson(rest, limits);
    }
    case Family::morris: {
      const MorrisParams& p = inst.morris();
      return replay_morris(p.n, p.b, p.k, limits);
    }
    case Family::aomoto: {
      const AomotoParams& p = inst.aomoto();
      return replay_aomoto(p.n, p.m, p.b, p.k, limits);
    }
    case Family::forrester: {
      const ForresterParams& p = inst.forrester();
      return replay_forrester(p.n0, p.n1, p.b, p.k, limits);
    }
  }
  throw usage_error("unknown family");
}

int cmd_scan(const CommonFlags& f) {
  if (f.mode != "verify" && f.mode != "replay")
    throw usage_error("scan: --mode must be verify or replay");
  const std::vector<IdentityInstance> grid = scan_instances(f);
  const EngineLimits limits{f.max_terms};
  std::vector<ScanRow> rows(grid.size());

  const unsigned jobs = f.jobs > 0 ? f.jobs
                                   : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      ScanRow& row = rows[i];
      row.params = params_cell(grid[i], f.mode == "replay");
      try {
        row.checks = run_one(grid[i], f.mode, limits).checks;
      } catch (const resource_error& e) {
        row.resource_failure = true;
        row.checks.push_back({"error", "completed run", e.what(), false});
      } catch (const usage_error& e) {
        row.checks.push_back({"error", "completed run", e.what(), false});
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "family,params,check,expected,actual,pass\n";
  bool any_fail = false;
  bool any_resource = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::string fam = family_name(grid[i].family());
    for (const CheckResult& c : rows[i].checks) {
      csv << fam << "," << csv_quote(rows[i].params) << "," << c.name << ","
          << csv_quote(c.expected) << "," << csv_quote(c.actual) << ","
          << (c.pass ? "true" : "false") << "\n";
      if (!c.pass) any_fail = true;
    }
    if (rows[i].resource_failure) any_resource = true;
  }
  emit_payload(csv.str(), f.out);
  if (any_fail) return any_resource ? kExitResource : kExitMismatch;
  return kExitPass;
}

int cmd_roots(const CommonFlags& f) {
  std::ostringstream out;
  switch (parse_family(f.family)) {
    case Family::morris:
      out << morris_root_table(f.n, f.b, f.k).to_csv();
      break;
    case Family::aomoto:
      out << aomoto_root_table(f.n, f.m, f.b, f.k).to_csv();
      break;
    case Family::forrester: {
      const RootTable t = forrester_guaranteed_roots(f.n0, f.n1, f.b, f.k);
      out << t.to_csv();
      const long missing = static_cast<long>(t.missing_count());
      out << "# missing=" << missing << "\n";
      if (auto bound = forrester_missing_bound(f.n0 + f.n1, f.n1)) {
        out << "# diagram_bound=" << *bound << "\n";
        out << "# within_bound=" << (missing <= *bound ? "true" : "false") << "\n";
      }
      break;
    }
    case Family::dyson:
      throw usage_error("roots: the dyson table is -1..-d; use replay");
  }
  emit_payload(out.str(), f.out);
  return kExitPass;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"exact constant-term identity verification"};
  app.require_subcommand(1);

  CommonFlags vf, rf, sf, tf, cf;

  CLI::App* verify = app.add_subcommand("verify", "constant term vs closed form");
  add_param_flags(verify, vf, true);
  verify->add_option("--json", vf.instance_json, "flat instance record, overrides flags");

  CLI::App* replay = app.add_subcommand("replay", "replay the vanishing-roots proof");
  add_param_flags(replay, rf, true);

  CLI::App* roots = app.add_subcommand("roots", "emit a root table as CSV");
  add_param_flags(roots, tf, false);

  CLI::App* scan = app.add_subcommand("scan", "verify/replay across a parameter grid");
  add_param_flags(scan, sf, true);
  scan->add_option("--mode", sf.mode, "verify (default) or replay");
  scan->add_option("--jobs", sf.jobs, "worker threads (default: cores)");

  CLI::App* cgamma = app.add_subcommand("cgamma", "closing coefficient conjecture check");
  add_param_flags(cgamma, cf, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  if (verify->parsed()) {
    const EngineLimits limits{vf.max_terms};
    return report_exit(verify_identity(instance_from_flags(vf), limits), vf.out);
  }
  if (replay->parsed()) {
    const EngineLimits limits{rf.max_terms};
    IdentityInstance inst = instance_from_flags(rf);
    return report_exit(run_one(inst, "replay", limits), rf.out);
  }
  if (roots->parsed()) return cmd_roots(tf);
  if (scan->parsed()) return cmd_scan(sf);
  if (cgamma->parsed()) {
    const EngineLimits limits{cf.max_terms};
    std::vector<long> bs;
    if (cf.b > 0) bs.push_back(cf.b);
    return report_exit(check_cgamma(cf.n0, cf.n1, cf.k, bs, limits), cf.out);
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ctident::usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ctident::resource_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
