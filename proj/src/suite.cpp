#include "stackt/suite.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "action_oracles.hpp"
#include "fixed_point_oracles.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "stackt/fixed_points.hpp"
#include "stackt/quotient.hpp"
#include "stackt/strictify.hpp"

namespace stackt {

namespace {

using fixtures::NamedAction;

GroupPtr z(std::size_t n) { return make_group(cyclic(n)); }

std::string join(const std::vector<ArrowId>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << "]";
  return os.str();
}

std::string first_violation(const ValidationReport& r) {
  if (r.ok()) return "no violation";
  std::ostringstream os;
  os << r.violations().front();
  return os.str();
}

// State shared between a check and the runner: the fixture in use is named
// in the counterexample if the check throws.
struct Context {
  SuiteEntry& entry;
  std::string fixture;

  void fail(const std::string& what) {
    if (entry.counterexample.empty()) entry.counterexample = "fixture '" + fixture + "': " + what;
  }
};

struct GridCase {
  std::string name;
  GroupPtr group;
  GroupoidPtr space;
};

std::vector<std::pair<std::string, GroupPtr>> coefficient_grid() {
  return {{"Z4", z(4)}, {"Z2xZ2", make_group(direct_product(cyclic(2), cyclic(2)))}, {"Z6", z(6)}};
}

std::vector<std::pair<std::string, GroupPtr>> acting_grid() { return {{"Z2", z(2)}, {"Z3", z(3)}}; }

std::vector<GridCase> trivial_quotient_grid() {
  std::vector<std::pair<std::string, GroupoidPtr>> spaces = {
      {"terminal", share(discrete_groupoid(1))},
      {"discrete(2)", share(discrete_groupoid(2))},
      {"pair(2)", share(pair_groupoid(2))}};
  for (const auto& [name, h] : coefficient_grid()) spaces.push_back({"b0(" + name + ")", share(b0_groupoid(*h))});
  std::vector<GridCase> out;
  for (const auto& [gname, g] : acting_grid())
    for (const auto& [mname, m] : spaces) out.push_back({"trivial " + gname + " on " + mname, g, m});
  return out;
}

std::vector<std::pair<std::string, GroupPtr>> free_grid() {
  return {{"Z2", z(2)}, {"Z3", z(3)}, {"S3", make_group(symmetric_group(3))}};
}

// ---- 1 ----

void quaternion_check(const SuiteFixtures& f, Context& c) {
  c.fixture = f.quaternion.name;
  const auto& a = f.quaternion.action;
  auto fp = fixed_point_groupoid(a);
  const auto candidates = oracle::candidate_count(*a, 0);
  std::size_t brute = 0;
  for (ObjectId x = 0; x < a->num_objects(); ++x) brute += oracle::brute_force_fixed(*a, x).size();
  std::ostringstream d;
  d << "fixed objects " << fp.objects.size() << " (brute force " << brute << ") among " << candidates
    << " families, " << oracle::count_classes(*fp.groupoid) << " isomorphism classes; required 0";
  c.entry.detail = d.str();
  if (brute != fp.objects.size()) c.fail("search and brute force disagree");
  if (candidates != 4096) c.fail("expected 4096 candidate families, found " + std::to_string(candidates));
  if (!fp.objects.empty())
    c.fail("fixed object at x = " + std::to_string(fp.objects[0].x) + " with linearization " +
           join(fp.objects[0].lin));
  c.entry.passed = c.entry.counterexample.empty();
}

// ---- 2 ----

void fixed_grid_check(const SuiteFixtures&, Context& c) {
  std::size_t cases = 0;
  std::ostringstream d;
  for (const auto& [hname, h] : coefficient_grid()) {
    for (const auto& [gname, g] : acting_grid()) {
      c.fixture = "trivial " + gname + " on b0(" + hname + ")";
      const auto homs = enumerate_homs(g, h).size();
      const auto raw = oracle::count_homs(*g, *h);
      if (homs != raw) c.fail("enumerate_homs gives " + std::to_string(homs) + ", brute force " + std::to_string(raw));
      auto fp = fixed_point_groupoid(share(trivial_action(g, share(b0_groupoid(*h)))));
      auto expect = share(product_groupoid(b0_groupoid(*h), discrete_groupoid(homs)));
      auto v = check_equivalence(fp.groupoid, expect).verdict;
      if (v != Verdict::kTrue) c.fail(std::string("equivalence verdict ") + to_string(v));
      d << (cases ? ", " : "") << "|Hom(" << gname << "," << hname << ")|=" << homs;
      ++cases;
    }
  }
  c.entry.detail = std::to_string(cases) + " cases equivalent to BH x Hom(G,H): " + d.str();
  c.entry.passed = c.entry.counterexample.empty();
}

// ---- 3 ----

void trivial_quotient_check(const SuiteFixtures&, Context& c) {
  std::size_t ok = 0, total = 0;
  for (const auto& g : trivial_quotient_grid()) {
    c.fixture = g.name;
    auto q = quotient_groupoid(share(trivial_action(g.group, g.space)));
    auto expect = share(product_groupoid(*g.space, b0_groupoid(*g.group)));
    auto v = check_equivalence(q.space, expect).verdict;
    ++total;
    if (v == Verdict::kTrue) {
      ++ok;
    } else {
      c.fail(std::string("M/G vs M x BG: ") + to_string(v));
    }
  }
  std::size_t terminal_ok = 0;
  for (const auto& [name, g] : fixtures::small_groups()) {
    c.fixture = "trivial " + name + " on terminal";
    auto q = quotient_groupoid(share(trivial_action(g, share(discrete_groupoid(1)))));
    auto v = check_equivalence(q.space, share(b0_groupoid(*g))).verdict;
    ++total;
    if (v == Verdict::kTrue) {
      ++terminal_ok;
    } else {
      c.fail(std::string("terminal/G vs BG: ") + to_string(v));
    }
  }
  c.entry.detail = std::to_string(ok) + " quotients equivalent to M x BG, " + std::to_string(terminal_ok) +
                   " terminal quotients equivalent to BG, of " + std::to_string(total);
  c.entry.passed = c.entry.counterexample.empty();
}

// ---- 4 ----

void free_check(const SuiteFixtures&, Context& c) {
  std::size_t ok = 0;
  for (const auto& [name, g] : free_grid()) {
    c.fixture = "left translation of " + name;
    auto a = share(left_translation_action(g));
    for (ObjectId x = 0; x < a->num_objects(); ++x) {
      for (ObjectId y = 0; y < a->num_objects(); ++y) {
        std::size_t count = 0;
        for (Element h = 0; h < g->order(); ++h) count += oracle::hom_scan(a->space(), a->act(h, x), y).size();
        if (count != 1) c.fail("sum of hom-set sizes " + std::to_string(count) + " at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
      }
    }
    auto q = quotient_groupoid(a);
    auto v = check_equivalence(q.space, share(discrete_groupoid(1))).verdict;
    if (v == Verdict::kTrue) {
      ++ok;
    } else {
      c.fail(std::string("quotient vs terminal: ") + to_string(v));
    }
  }
  c.entry.detail = std::to_string(ok) + " of 3 quotients equivalent to the terminal groupoid";
  c.entry.passed = c.entry.counterexample.empty();
}

// ---- 5 ----

void strictify_check(const SuiteFixtures& f, Context& c) {
  std::size_t ok = 0, weak = 0;
  for (const auto& [name, a] : f.corpus) {
    c.fixture = name;
    if (a->group_order() > 8 || a->num_objects() > 6) c.fail("outside the corpus bounds");
    weak += !a->is_strict();
    auto s = strictify(a);
    bool good = true;
    auto check = [&](bool cond, const char* what) {
      if (!cond) c.fail(what);
      good &= cond;
    };
    check(validate_action(*s.strict_action).ok() && s.strict_action->is_strict(), "(a) result is not a strict action");
    check(s.strict_space->num_objects() == a->group_order() * a->num_objects(), "(b) object count");
    check(validate_g_morphism(s.u).ok() &&
              oracle::g_morphism_axioms(*s.strict_action, *a, s.u.functor, s.u.sigma),
          "(c) u is not a G-morphism");
    check(is_equivalence(s.u.functor) &&
              check_equivalence(s.strict_space, a->space_ptr()).verdict == Verdict::kTrue,
          "(d) u is not an equivalence");
    ok += good;
  }
  if (f.corpus.size() < 50) c.fail("corpus has fewer than 50 actions");
  c.entry.detail = std::to_string(ok) + " of " + std::to_string(f.corpus.size()) + " actions (" +
                   std::to_string(weak) + " not strict) pass (a)-(d)";
  c.entry.passed = c.entry.counterexample.empty();
}

// ---- 6 ----

void torsor_check(const SuiteFixtures& f, Context& c) {
  std::vector<NamedAction> all = f.corpus;
  all.push_back(f.quaternion);
  for (const auto& g : trivial_quotient_grid()) all.push_back({g.name, share(trivial_action(g.group, g.space))});
  for (const auto& [name, g] : free_grid()) all.push_back({"left translation of " + name, share(left_translation_action(g))});
  std::size_t ok = 0;
  for (const auto& [name, a] : all) {
    c.fixture = name;
    auto r = compare_quotients(a);
    if (r.verdict == Verdict::kTrue) {
      ++ok;
    } else {
      c.fail(std::string(to_string(r.verdict)) + ": " + r.failure);
    }
  }
  c.entry.detail = std::to_string(ok) + " of " + std::to_string(all.size()) + " fixtures have M/G equivalent to torsors";
  c.entry.passed = c.entry.counterexample.empty();
}

// ---- 7 ----

struct MutationTally {
  std::size_t total = 0, rejected = 0, valid = 0, false_accepts = 0, false_rejects = 0;

  void record(bool validator_ok, bool oracle_ok, Context& c, const std::string& what) {
    ++total;
    (validator_ok ? valid : rejected)++;
    if (validator_ok && !oracle_ok) {
      ++false_accepts;
      c.fail("validator accepts invalid mutation " + what);
    }
    if (!validator_ok && oracle_ok) {
      ++false_rejects;
      c.fail("validator rejects valid mutation " + what);
    }
  }
};

std::vector<NamedAction> mutation_fixtures() {
  std::mt19937 rng(7);
  std::vector<NamedAction> out;
  for (const auto& [name, a] : fixtures::catalogue()) {
    out.push_back({name, a});
    out.push_back({name + " transported",
                   share(transport_action_pointwise(*a, fixtures::random_pointwise_transport(*a, rng)))});
  }
  return out;
}

WeakAction with_tables(const WeakAction& a, std::vector<std::vector<ArrowId>> alpha, std::vector<ArrowId> unit) {
  std::vector<GroupoidFunctor> mu;
  for (Element g = 0; g < a.group_order(); ++g) mu.push_back(a.mu(g));
  return WeakAction(a.group_ptr(), a.space_ptr(), mu, std::move(alpha), std::move(unit));
}

void mutation_check(const SuiteFixtures&, Context& c) {
  MutationTally alpha_unit, sigma, composition;
  for (const auto& [name, a] : mutation_fixtures()) {
    c.fixture = name;
    const auto& m = a->space();
    const auto n = a->group_order();
    for (std::size_t idx = 0; idx < n * n; ++idx) {
      for (ObjectId x = 0; x < a->num_objects(); ++x) {
        const auto cur = a->alpha_table()[idx][x];
        for (auto v : m.hom(m.source(cur), m.target(cur))) {
          if (v == cur) continue;
          auto alpha = a->alpha_table();
          alpha[idx][x] = v;
          auto b = with_tables(*a, alpha, a->unit_table());
          alpha_unit.record(validate_action(b).ok(), oracle::action_axioms(b), c,
                            "alpha(" + std::to_string(idx / n) + "," + std::to_string(idx % n) + ")^" +
                                std::to_string(x) + " := " + std::to_string(v));
        }
      }
    }
    for (ObjectId x = 0; x < a->num_objects(); ++x) {
      const auto cur = a->unit(x);
      for (auto v : m.hom(m.source(cur), m.target(cur))) {
        if (v == cur) continue;
        auto unit = a->unit_table();
        unit[x] = v;
        auto b = with_tables(*a, a->alpha_table(), unit);
        alpha_unit.record(validate_action(b).ok(), oracle::action_axioms(b), c,
                          "unit^" + std::to_string(x) + " := " + std::to_string(v));
      }
    }
    auto u = strictify(a).u;
    const auto& t = u.target->space();
    for (std::size_t i = 0; i < u.sigma.size(); ++i) {
      const auto cur = u.sigma[i];
      for (auto v : t.hom(t.source(cur), t.target(cur))) {
        if (v == cur) continue;
        auto bad = u;
        bad.sigma[i] = v;
        sigma.record(validate_g_morphism(bad).ok(),
                     oracle::g_morphism_axioms(*bad.source, *bad.target, bad.functor, bad.sigma), c,
                     "sigma[" + std::to_string(i) + "] := " + std::to_string(v));
      }
    }
  }
  std::vector<std::pair<std::string, FiniteGroupoid>> groupoids = {
      {"b0(Z3)", b0_groupoid(cyclic(3))},
      {"pair(3)", pair_groupoid(3)},
      {"b0(Z2xZ2)", b0_groupoid(direct_product(cyclic(2), cyclic(2)))},
      {"pair(2) x b0(Z2)", product_groupoid(pair_groupoid(2), b0_groupoid(cyclic(2)))}};
  for (const auto& [name, g] : groupoids) {
    c.fixture = name;
    auto entries = g.composition_entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      for (ArrowId v = 0; v < g.num_arrows(); ++v) {
        if (v == entries[i].result) continue;
        auto mutated = entries;
        mutated[i].result = v;
        FiniteGroupoid bad(g.num_objects(), g.arrows(), g.identities(), mutated);
        composition.record(validate_groupoid(bad).ok(), oracle::groupoid_axioms(bad), c,
                           "composite of (" + std::to_string(entries[i].first) + ", " +
                               std::to_string(entries[i].second) + ") := " + std::to_string(v));
      }
    }
  }
  const auto total = alpha_unit.total + sigma.total + composition.total;
  const auto rejected = alpha_unit.rejected + sigma.rejected + composition.rejected;
  const auto false_accepts = alpha_unit.false_accepts + sigma.false_accepts + composition.false_accepts;
  const auto false_rejects = alpha_unit.false_rejects + sigma.false_rejects + composition.false_rejects;
  std::ostringstream d;
  d << total << " mutations (alpha/unit " << alpha_unit.total << ", sigma " << sigma.total << ", composition "
    << composition.total << "); rejected " << rejected << "; still valid per oracle "
    << alpha_unit.valid + sigma.valid + composition.valid << "; false accepts " << false_accepts
    << "; false rejects " << false_rejects;
  c.entry.detail = d.str();
  c.fixture = "all mutation fixtures";
  if (rejected < 200) c.fail("fewer than 200 rejected mutations");
  c.entry.passed = c.entry.counterexample.empty();
}

// ---- 8 ----

void oracle_equality_check(const SuiteFixtures& f, Context& c) {
  std::vector<NamedAction> all;
  std::mt19937 rng(31);
  for (const auto& [name, a] : fixtures::catalogue()) {
    all.push_back({name, a});
    all.push_back({name + " transported",
                   share(transport_action_pointwise(*a, fixtures::random_pointwise_transport(*a, rng)))});
  }
  all.push_back({"lifted quaternion twist", share(fixtures::quaternion_lifted_twist())});
  for (const auto& n : f.corpus) all.push_back(n);
  std::size_t objects = 0, skipped = 0, found_total = 0;
  for (const auto& [name, a] : all) {
    c.fixture = name;
    for (ObjectId x = 0; x < a->num_objects(); ++x) {
      if (oracle::candidate_count(*a, x) > 256) {
        ++skipped;
        continue;
      }
      ++objects;
      auto found = enumerate_fixed_objects(*a, x);
      auto expect = oracle::brute_force_fixed(*a, x);
      found_total += found.size();
      bool same = found.size() == expect.size();
      for (std::size_t i = 0; same && i < found.size(); ++i) same = found[i].x == x && found[i].lin == expect[i];
      if (!same) c.fail("object " + std::to_string(x) + ": search " + std::to_string(found.size()) +
                        ", brute force " + std::to_string(expect.size()));
    }
  }
  c.entry.detail = std::to_string(objects) + " objects over " + std::to_string(all.size()) + " fixtures, " +
                   std::to_string(found_total) + " linearizations, all equal to brute force; " +
                   std::to_string(skipped) + " objects above 256 candidates not compared";
  if (objects == 0) c.fail("nothing compared");
  c.entry.passed = c.entry.counterexample.empty();
}

struct CheckDef {
  int criterion;
  const char* name;
  const char* location;
  double limit;
  void (*run)(const SuiteFixtures&, Context&);
};

const std::vector<CheckDef>& checks() {
  static const std::vector<CheckDef> defs = {
      {1, "quaternion counterexample", "fixed points: conjugation twist of Q/Z on BQ", 1, quaternion_check},
      {2, "(BH)^G for trivial actions", "fixed points: trivial action on BH", 5, fixed_grid_check},
      {3, "trivial-action quotient", "quotients: trivial action, M/G = M x BG and [S/G] = BG", 5,
       trivial_quotient_check},
      {4, "free-action collapse", "quotients: left translation on G", 1, free_check},
      {5, "strictification corpus", "strictification of weak actions", 60, strictify_check},
      {6, "quotient-torsor equivalence", "quotients: G-torsors over M", 60, torsor_check},
      {7, "coherence mutation suite", "definitions of weak action, G-morphism, groupoid", 30, mutation_check},
      {8, "fixed-object oracle equality", "fixed points: linearizations", 0, oracle_equality_check},
  };
  return defs;
}

std::vector<SuiteEntry> run_checks(const SuiteFixtures& f) {
  std::vector<SuiteEntry> out;
  for (const auto& def : checks()) {
    SuiteEntry e;
    e.criterion = def.criterion;
    e.name = def.name;
    e.location = def.location;
    e.limit_seconds = def.limit;
    Context c{e, "none"};
    const auto start = std::chrono::steady_clock::now();
    try {
      def.run(f, c);
    } catch (const InvalidInput& ex) {
      e.passed = false;
      c.fail(std::string(ex.what()) + ": " + first_violation(ex.report()));
    } catch (const std::exception& ex) {
      e.passed = false;
      c.fail(std::string("exception: ") + ex.what());
    }
    e.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (e.passed && e.limit_seconds > 0 && e.elapsed_seconds >= e.limit_seconds) {
      e.passed = false;
      e.counterexample = "time limit exceeded";
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const SuiteEntry& e) { return e.passed; });
}

SuiteFixtures SuiteFixtures::standard() {
  return {{"Q/Z on b0(Q) by conjugation", share(fixtures::quaternion_twist())},
          fixtures::weak_corpus(20261015, 60)};
}

SuiteReport run_paper_suite(const SuiteFixtures& f) {
  SuiteReport first{run_checks(f)};
  const auto start = std::chrono::steady_clock::now();
  SuiteReport second{run_checks(f)};
  const auto a = render_machine(first);
  const auto b = render_machine(second);
  SuiteEntry e;
  e.criterion = 9;
  e.name = "determinism";
  e.location = "suite";
  e.passed = a == b;
  e.detail = "two runs of checks 1-8, machine reports of " + std::to_string(a.size()) + " bytes, " +
             (a == b ? "identical" : "different");
  if (a != b) {
    std::size_t at = 0;
    while (at < a.size() && at < b.size() && a[at] == b[at]) ++at;
    e.counterexample = "first difference at byte " + std::to_string(at);
  }
  e.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  first.entries.push_back(std::move(e));
  return first;
}

std::string render_text(const SuiteReport& r) {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& e : r.entries) {
    passed += e.passed;
    char time[64];
    if (e.limit_seconds > 0) {
      std::snprintf(time, sizeof time, "%.3f s, limit %g s", e.elapsed_seconds, e.limit_seconds);
    } else {
      std::snprintf(time, sizeof time, "%.3f s", e.elapsed_seconds);
    }
    os << (e.passed ? "PASS" : "FAIL") << "  " << e.criterion << ". " << e.name << " [" << e.location << "] ("
       << time << ")\n      " << e.detail << "\n";
    if (!e.counterexample.empty()) os << "      counterexample: " << e.counterexample << "\n";
  }
  os << passed << "/" << r.entries.size() << " checks passed\n";
  return os.str();
}

std::string render_machine(const SuiteReport& r) {
  std::string out;
  std::size_t passed = 0;
  for (const auto& e : r.entries) {
    passed += e.passed;
    nlohmann::ordered_json j;
    j["criterion"] = e.criterion;
    j["name"] = e.name;
    j["location"] = e.location;
    j["verdict"] = e.passed ? "pass" : "fail";
    j["detail"] = e.detail;
    j["counterexample"] = e.counterexample;
    out += j.dump() + "\n";
  }
  nlohmann::ordered_json s;
  s["passed"] = passed;
  s["total"] = r.entries.size();
  out += s.dump() + "\n";
  return out;
}

}  // namespace stackt
