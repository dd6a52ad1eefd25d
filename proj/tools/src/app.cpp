#include "app.hpp"

#include <limits>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "fsetkit/selftest.hpp"
#include "scenario.hpp"

namespace fsetkit::cli {

using nlohmann::ordered_json;

namespace {

struct Options {
  std::string format = "json";
  std::optional<std::int64_t> bound;
  std::optional<std::uint64_t> cap;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
  std::string file;
};

struct Outcome {
  ordered_json report;
  int code = 0;
};

ordered_json big_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

ordered_json vec_json(const IntVector& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(big_json(x));
  return a;
}

ordered_json coeffs_json(const CoeffVector& c) { return ordered_json(c); }

std::size_t negative_count(const IntersectionResult& r) {
  std::size_t n = 0;
  for (const auto& w : r.witnesses)
    for (auto x : w.coeffs)
      if (x < 0) {
        ++n;
        break;
      }
  return n;
}

ordered_json witnesses_json(const std::vector<CoeffVector>& ws) {
  ordered_json a = ordered_json::array();
  for (const auto& c : ws) a.push_back(coeffs_json(c));
  return a;
}

// The fields every certificate report carries, in this order.
void put_certificate(ordered_json& j, const CertificateReport& r) {
  j["verdict"] = to_string(r.verdict);
  j["bound"] = r.bound;
  j["cap"] = r.cap;
  j["witnesses"] = witnesses_json(r.witnesses);
  ordered_json sf = ordered_json::array();
  for (const auto& f : r.soundness_failures) sf.push_back({{"set", f.set}, {"member", f.member}, {"reason", f.reason}});
  j["soundness_failures"] = sf;
  ordered_json cf = ordered_json::array();
  for (const auto& f : r.completeness_failures)
    cf.push_back({{"witness", coeffs_json(f.witness)}, {"certified_absent", f.certified_absent}});
  j["completeness_failures"] = cf;
}

ordered_json recurrence_json(const IntPoly& h, std::uint64_t N, const RecurrenceCheck& rc) {
  ordered_json j;
  j["h"] = h.to_string();
  j["N"] = N;
  j["verified"] = rc.ok;
  j["exact_through"] = rc.exact_through;
  j["places"] = rc.places;
  j["first_failure"] = rc.first_failure ? ordered_json(*rc.first_failure) : ordered_json(nullptr);
  return j;
}

int worst(int a, int b) {
  if (a == 2 || b == 2) return 2;
  return std::max(a, b);
}

// ---- scenario commands

Outcome cmd_charpoly(const Options& o) {
  const Scenario sc = load_scenario_file(o.file);
  Outcome out;
  out.report["command"] = "charpoly";
  out.report["scenario"] = sc.name;
  ordered_json curves = ordered_json::array();
  for (const auto& E : sc.group->curves) {
    const IntPoly cp = char_poly_frobenius(E, sc.q);
    ordered_json c;
    c["curve"] = E.to_string();
    c["q"] = big_json(sc.q);
    c["charpoly"] = cp.to_string();
    c["trace"] = big_json(-cp.coeff(1));
    curves.push_back(c);
  }
  out.report["curves"] = curves;
  return out;
}

const Subvariety& need_variety(const Scenario& sc) {
  if (!sc.variety) throw ValidationError("scenario has no variety");
  return *sc.variety;
}

const Subgroup& need_gamma(const Scenario& sc) {
  if (!sc.gamma) throw ValidationError("scenario has no gamma");
  return *sc.gamma;
}

Outcome cmd_intersect(const Options& o) {
  const Scenario sc = load_scenario_file(o.file);
  SpanContext ctx(sc.tower, sc.curves());
  const std::int64_t B = o.bound.value_or(sc.bound);
  const IntersectionResult r = brute_intersect(ctx, need_variety(sc), need_gamma(sc), B, o.threads);
  Outcome out;
  out.report["command"] = "intersect";
  out.report["scenario"] = sc.name;
  out.report["bound"] = B;
  out.report["count"] = r.witnesses.size();
  out.report["negative_witnesses"] = negative_count(r);
  std::vector<CoeffVector> ws;
  for (const auto& w : r.witnesses) ws.push_back(w.coeffs);
  out.report["witnesses"] = witnesses_json(ws);
  return out;
}

Outcome cmd_certify(const Options& o) {
  const Scenario sc = load_scenario_file(o.file);
  if (!sc.certificate) throw ValidationError("scenario has no certificate");
  Certificate cert = *sc.certificate;
  if (o.bound) cert.bound = *o.bound;
  if (o.cap) cert.cap = *o.cap;
  SpanContext ctx(sc.tower, sc.curves());
  const CertificateReport r = check_certificate(ctx, need_variety(sc), need_gamma(sc), cert, o.threads);
  Outcome out;
  out.report["command"] = "certify";
  out.report["scenario"] = sc.name;
  put_certificate(out.report, r);
  out.code = exit_code(r.verdict);
  return out;
}

Outcome cmd_recurrence(const Options& o) {
  const Scenario sc = load_scenario_file(o.file);
  if (!sc.recurrence) throw ValidationError("scenario has no recurrence block");
  const RecurrenceSpec& rs = *sc.recurrence;
  const std::uint64_t N = o.cap.value_or(rs.N);
  const RecurrenceCheck rc = check_recurrence(rs.P, rs.h, N, sc.tower, sc.frobenius());
  Outcome out;
  out.report["command"] = "recurrence";
  out.report["scenario"] = sc.name;
  out.report["point"] = rs.point;
  out.report["factor"] = rs.factor;
  ordered_json vs = ordered_json::array();
  for (const auto& v : recurrence_state(rs.h, N).vectors) vs.push_back(vec_json(v));
  out.report["vectors"] = vs;
  out.report["check"] = recurrence_json(rs.h, N, rc);
  out.code = rc.ok ? 0 : 2;
  return out;
}

// ---- built-in examples

Outcome run_example(const ExampleScenario& sc, const Options& o) {
  const std::int64_t B = o.bound.value_or(130);
  const std::uint64_t N = o.cap.value_or(3);
  SpanContext ctx(sc.tower, {sc.curve});
  const IntersectionResult witnesses = brute_intersect(ctx, sc.X, sc.gamma, B, o.threads);

  Outcome out;
  out.report["command"] = sc.name;
  out.report["charpoly"] = char_poly_frobenius(sc.curve, sc.op.q()).to_string();
  out.report["negative_witnesses"] = negative_count(witnesses);

  auto check = [&](Certificate cert) {
    cert.bound = B;
    cert.cap = N;
    return check_certificate(ctx, sc.X, sc.gamma, cert, witnesses, o.threads);
  };
  const CertificateReport gen = check(sc.generalized);
  if (!sc.decomposition.claimed.empty()) {
    const CertificateReport dec = check(sc.decomposition);
    out.report["certificate"] = "decomposition";
    put_certificate(out.report, dec);
    ordered_json ids = ordered_json::array();
    bool all = true;
    for (const auto& c : check_decomposition_identity(sc, N)) {
      ids.push_back({{"n", c.n}, {"holds", c.holds}, {"explicit", c.explicit_checked}, {"places", c.places}});
      all = all && c.holds;
    }
    out.report["identity"] = ids;
    out.code = worst(exit_code(dec.verdict), all ? 0 : 2);
    ordered_json g;
    put_certificate(g, gen);
    out.report["generalized"] = g;
    out.code = worst(out.code, exit_code(gen.verdict));
  } else {
    out.report["certificate"] = "generalized";
    put_certificate(out.report, gen);
    out.code = exit_code(gen.verdict);
    const IntPoly h = char_poly_frobenius(sc.curve, sc.op.q());
    const RecurrenceCheck rc = check_recurrence(sc.Q.elliptic()[0], h, 25, sc.tower, sc.op);
    out.report["recurrence"] = recurrence_json(h, 25, rc);
    out.code = worst(out.code, rc.ok ? 0 : 2);
  }
  return out;
}

Outcome cmd_example3(const Options& o) {
  const IntPoly h = IntPoly::from_ints({5, -2, 1});
  const std::uint64_t N = o.cap.value_or(3);
  Outcome out;
  out.report["command"] = "example3";
  out.report["h"] = h.to_string();
  out.report["N"] = N;
  ordered_json vs = ordered_json::array();
  for (const auto& v : example3_intersection(h, N)) vs.push_back(vec_json(v));
  out.report["vectors"] = vs;
  const ExampleScenario sc = example2_scenario();
  const RecurrenceCheck rc = check_recurrence(sc.Q.elliptic()[0], h, 25, sc.tower, sc.op);
  out.report["recurrence"] = recurrence_json(h, 25, rc);
  out.code = rc.ok ? 0 : 2;
  return out;
}

Outcome cmd_selftest(const Options& o) {
  Outcome out;
  out.report["command"] = "selftest";
  out.report["seed"] = o.seed;
  ordered_json suites = ordered_json::array();
  bool all = true;
  auto record = [&](const SuiteResult& r) {
    ordered_json s;
    s["name"] = r.name;
    s["samples"] = r.samples;
    s["failures"] = r.failures;
    if (!r.passed()) s["first_failure"] = r.first_failure;
    suites.push_back(s);
    all = all && r.passed();
  };
  for (const auto& r : run_property_suites(o.seed)) record(r);

  // Built-in scenarios at reduced bounds.
  for (const auto& sc : {example1_scenario(), example2_scenario()}) {
    SuiteResult r;
    r.name = "scenario " + sc.name;
    auto check = [&](bool ok, const std::string& what) {
      ++r.samples;
      if (!ok && r.failures++ == 0) r.first_failure = what;
    };
    check(contains(sc.X, sc.Q), "Q not in X");
    check(contains(sc.X, sc.Q1), "Q1 not in X");
    SpanContext ctx(sc.tower, {sc.curve});
    const IntersectionResult w = brute_intersect(ctx, sc.X, sc.gamma, 30, o.threads);
    check(w.witnesses.size() == 3, "expected witnesses 1, 5, 25 at B=30");
    for (Certificate cert : {sc.decomposition, sc.generalized}) {
      if (cert.claimed.empty()) continue;
      cert.bound = 30;
      cert.cap = 2;
      check(check_certificate(ctx, sc.X, sc.gamma, cert, w, o.threads).verdict == Verdict::Pass,
            "certificate does not pass at B=30, N=2");
    }
    record(r);
  }
  out.report["suites"] = suites;
  out.report["passed"] = all;
  out.code = all ? 0 : 2;
  return out;
}

void render(const ordered_json& j, const std::string& indent, std::string& out) {
  auto scalar = [](const ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (const auto& [key, v] : j.items()) {
    if (v.is_object()) {
      out += indent + key + ":\n";
      render(v, indent + "  ", out);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      out += indent + key + ":\n";
      for (const auto& e : v) {
        std::string line;
        for (const auto& [k2, v2] : e.items()) line += (line.empty() ? "" : ", ") + k2 + "=" + scalar(v2);
        out += indent + "  - " + line + "\n";
      }
    } else if (v.is_array()) {
      std::string line;
      for (const auto& e : v) line += (line.empty() ? "" : " ") + scalar(e);
      out += indent + key + ": " + (v.empty() ? "none" : line) + "\n";
    } else {
      out += indent + key + ": " + scalar(v) + "\n";
    }
  }
}

}  // namespace

std::string render_text(const ordered_json& report) {
  std::string out;
  render(report, "", out);
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fsetkit: F-sets, Frobenius relations and bounded intersections X(K) ∩ Gamma"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--bound", o.bound, "Coefficient bound B");
  app.add_option("--cap", o.cap, "Exponent cap N");
  app.add_option("--seed", o.seed, "Seed for the property suites");
  app.add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 256u));

  using Cmd = Outcome (*)(const Options&);
  std::vector<std::pair<CLI::App*, Cmd>> commands;
  auto with_file = [&](const char* name, const char* help, Cmd fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("scenario", o.file, "Scenario file")->required();
    commands.emplace_back(sub, fn);
  };
  with_file("charpoly", "Characteristic polynomial of Frobenius on each curve", cmd_charpoly);
  with_file("intersect", "Brute-force X(K) ∩ Gamma with |c| <= B", cmd_intersect);
  with_file("certify", "Check the scenario's certificate", cmd_certify);
  with_file("recurrence", "Coefficients of F^n and their check on points", cmd_recurrence);
  commands.emplace_back(app.add_subcommand("example1", "Supersingular y^2 = x^3 + 1 over F_5"),
                        [](const Options& opt) { return run_example(example1_scenario(), opt); });
  commands.emplace_back(app.add_subcommand("example2", "Ordinary y^2 = x^3 + x over F_5"),
                        [](const Options& opt) { return run_example(example2_scenario(), opt); });
  commands.emplace_back(app.add_subcommand("example3", "Coefficient vectors of the recurrence for x^2 - 2x + 5"),
                        cmd_example3);
  commands.emplace_back(app.add_subcommand("selftest", "Invariant suites and built-in scenarios"), cmd_selftest);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    for (const auto& [sub, fn] : commands) {
      if (!sub->parsed()) continue;
      const Outcome r = fn(o);
      if (o.format == "text") out << render_text(r.report);
      else out << r.report.dump(2) << "\n";
      return r.code;
    }
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const Error& e) {
    err << "invalid scenario: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace fsetkit::cli
