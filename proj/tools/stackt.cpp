// Command-line driver: validate, strictify, fixed points, quotients,
// equivalence checks and the acceptance suite on spec documents.

#include <fstream>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stackt/fixed_points.hpp"
#include "stackt/quotient.hpp"
#include "stackt/serialize.hpp"
#include "stackt/strictify.hpp"
#include "stackt/suite.hpp"

using namespace stackt;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::vector<std::string> inputs;
  std::string output;
  std::string witness;
  std::size_t budget = kDefaultBudget;
  std::string format = "text";

  bool machine() const { return format == "machine"; }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

void write_document(const Options& o, const SpecDocument& doc) {
  if (!o.output.empty()) write_file(o.output, serialize_spec(doc));
}

SpecDocument input(const Options& o, std::size_t i = 0) {
  if (o.inputs.size() <= i) throw UsageError("missing --input");
  return read_spec_file(o.inputs[i]);
}

ActionPtr input_action(const Options& o) {
  auto doc = input(o);
  if (doc.kind() != DocumentKind::kAction)
    throw UsageError(std::string("expected an action document, got ") + to_string(doc.kind()));
  return doc.action();
}

std::size_t class_count(const FiniteGroupoid& g) {
  auto reps = component_representatives(g);
  return std::set<ObjectId>(reps.begin(), reps.end()).size();
}

json violations_json(const ValidationReport& r) {
  json out = json::array();
  for (const auto& v : r.violations()) {
    json j;
    j["kind"] = v.kind;
    j["coords"] = v.coords;
    j["detail"] = v.detail;
    out.push_back(j);
  }
  return out;
}

void print_violations(const ValidationReport& r, std::ostream& os) {
  for (const auto& v : r.violations()) os << "  " << v << "\n";
}

// Prints `machine` as JSON, or the text lines, and returns `status`.
int emit(const Options& o, const json& machine, const std::string& text, int status) {
  if (o.machine()) {
    std::cout << machine.dump(2) << "\n";
  } else {
    std::cout << text;
  }
  return status;
}

std::string arrows_text(const std::vector<ArrowId>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << "]";
  return os.str();
}

int run_invalid(const Options& o, const std::string& command, const InvalidInput& e) {
  json j;
  j["command"] = command;
  j["verdict"] = "invalid input";
  j["violations"] = violations_json(e.report());
  std::ostringstream text;
  text << "input does not validate: " << e.report().size() << " violation(s)\n";
  print_violations(e.report(), text);
  return emit(o, j, text.str(), kNegative);
}

int run_budget(const Options& o, const std::string& command, const BudgetExceeded& e) {
  json j;
  j["command"] = command;
  j["verdict"] = "indeterminate";
  j["detail"] = e.what();
  return emit(o, j, std::string("indeterminate: ") + e.what() + "\n", kNegative);
}

int cmd_validate(const Options& o) {
  auto doc = input(o);
  ValidationReport r;
  switch (doc.kind()) {
    case DocumentKind::kGroup:
      r = validate_group(*doc.group());
      break;
    case DocumentKind::kGroupoid:
      r = validate_groupoid(*doc.groupoid());
      break;
    case DocumentKind::kAction:
      r = validate_action(*doc.action());
      break;
    case DocumentKind::kGMorphism: {
      const auto& m = doc.g_morphism();
      r.merge(validate_action(*m.source), "source.");
      r.merge(validate_action(*m.target), "target.");
      if (r.ok()) r = validate_g_morphism(m);
      break;
    }
  }
  json j;
  j["command"] = "validate";
  j["kind"] = to_string(doc.kind());
  j["valid"] = r.ok();
  j["violations"] = violations_json(r);
  if (!o.output.empty()) write_file(o.output, j.dump(2) + "\n");
  std::ostringstream text;
  if (r.ok()) {
    text << to_string(doc.kind()) << ": valid\n";
  } else {
    text << to_string(doc.kind()) << ": " << r.size() << " violation(s)\n";
    print_violations(r, text);
  }
  return emit(o, j, text.str(), r.ok() ? kOk : kNegative);
}

int cmd_strictify(const Options& o) {
  auto a = input_action(o);
  auto s = strictify(a);
  const bool u_ok = validate_g_morphism(s.u).ok();
  const auto eq = check_equivalence(s.strict_space, a->space_ptr(), o.budget).verdict;
  const bool good = u_ok && is_equivalence(s.u.functor) && eq == Verdict::kTrue;
  write_document(o, {s.strict_action});
  if (!o.witness.empty()) write_file(o.witness, serialize_spec({s.u}));
  json j;
  j["command"] = "strictify";
  j["objects"] = s.strict_space->num_objects();
  j["arrows"] = s.strict_space->num_arrows();
  j["strict"] = s.strict_action->is_strict();
  j["u_is_g_morphism"] = u_ok;
  j["u_is_equivalence"] = is_equivalence(s.u.functor);
  j["groupoids_equivalent"] = to_string(eq);
  std::ostringstream text;
  text << "strict action on " << s.strict_space->num_objects() << " objects, " << s.strict_space->num_arrows()
       << " arrows\n"
       << "u is a G-morphism: " << (u_ok ? "yes" : "no") << "\n"
       << "u is an equivalence: " << (is_equivalence(s.u.functor) ? "yes" : "no") << "\n";
  return emit(o, j, text.str(), good ? kOk : kNegative);
}

int cmd_fixed_points(const Options& o) {
  auto a = input_action(o);
  auto fp = fixed_point_groupoid(a, o.budget);
  write_document(o, {fp.groupoid});
  json j;
  j["command"] = "fixed-points";
  j["objects"] = fp.objects.size();
  j["arrows"] = fp.groupoid->num_arrows();
  j["classes"] = class_count(*fp.groupoid);
  json objs = json::array();
  std::ostringstream text;
  text << "fixed-point groupoid: " << fp.objects.size() << " objects, " << fp.groupoid->num_arrows()
       << " arrows, " << class_count(*fp.groupoid) << " isomorphism classes"
       << (fp.objects.empty() ? " (empty)" : "") << "\n";
  for (const auto& f : fp.objects) {
    json e;
    e["x"] = f.x;
    e["lin"] = f.lin;
    objs.push_back(e);
    text << "  x = " << f.x << ", linearization " << arrows_text(f.lin) << "\n";
  }
  j["fixed_objects"] = objs;
  return emit(o, j, text.str(), kOk);
}

int cmd_quotient(const Options& o) {
  auto a = input_action(o);
  auto q = quotient_groupoid(a);
  auto check = pi_equivariance_check(a, q);
  write_document(o, {q.space});
  json j;
  j["command"] = "quotient";
  j["objects"] = q.space->num_objects();
  j["arrows"] = q.space->num_arrows();
  j["classes"] = class_count(*q.space);
  j["pi_equivariant"] = check.ok();
  j["violations"] = violations_json(check);
  std::ostringstream text;
  text << "quotient groupoid: " << q.space->num_objects() << " objects, " << q.space->num_arrows() << " arrows, "
       << class_count(*q.space) << " isomorphism classes\n"
       << "projection is G-equivariant: " << (check.ok() ? "yes" : "no") << "\n";
  print_violations(check, text);
  return emit(o, j, text.str(), check.ok() ? kOk : kNegative);
}

int cmd_torsor_quotient(const Options& o) {
  auto a = input_action(o);
  auto r = compare_quotients(a, o.budget);
  json j;
  j["command"] = "torsor-quotient";
  j["torsor_objects"] = r.torsor_objects;
  j["equivalent_to_quotient"] = to_string(r.verdict);
  j["failure"] = r.failure;
  std::ostringstream text;
  text << "torsors over M: " << r.torsor_objects << " objects\n"
       << "equivalent to M/G: " << to_string(r.verdict) << "\n";
  if (!r.failure.empty()) text << "  " << r.failure << "\n";
  try {
    auto t = torsor_quotient_groupoid(a, o.budget);
    write_document(o, {t.space});
    j["arrows"] = t.space->num_arrows();
    j["classes"] = class_count(*t.space);
    text << "materialized: " << t.space->num_arrows() << " arrows, " << class_count(*t.space)
         << " isomorphism classes\n";
  } catch (const BudgetExceeded& e) {
    j["materialized"] = false;
    text << "not materialized: " << e.what() << "\n";
    if (!o.output.empty()) throw;
  }
  return emit(o, j, text.str(), r.verdict == Verdict::kTrue ? kOk : kNegative);
}

json functor_json(const GroupoidFunctor& f) {
  json j;
  j["objects"] = f.object_map;
  j["arrows"] = f.arrow_map;
  return j;
}

int cmd_equiv(const Options& o) {
  if (o.inputs.size() != 2) throw UsageError("equiv takes exactly two --input documents");
  auto a = input(o, 0);
  auto b = input(o, 1);
  if (a.kind() != b.kind())
    throw UsageError(std::string("cannot compare ") + to_string(a.kind()) + " with " + to_string(b.kind()));
  json j;
  j["command"] = "equiv";
  j["kind"] = to_string(a.kind());
  std::ostringstream text;
  Verdict v = Verdict::kIndeterminate;
  const bool identical = a == b;
  switch (a.kind()) {
    case DocumentKind::kGroup: {
      auto iso = find_isomorphism(*a.group(), *b.group());
      v = iso ? Verdict::kTrue : Verdict::kFalse;
      if (identical) {
        iso = std::vector<Element>(a.group()->order());
        std::iota(iso->begin(), iso->end(), 0);
      }
      if (iso) {
        j["witness"] = *iso;
        text << "isomorphism " << arrows_text(*iso) << "\n";
      }
      break;
    }
    case DocumentKind::kGroupoid: {
      auto r = identical ? EquivalenceResult{Verdict::kTrue, identity_functor(a.groupoid())}
                         : check_equivalence(a.groupoid(), b.groupoid(), o.budget);
      v = r.verdict;
      if (r.witness) {
        j["witness"] = functor_json(*r.witness);
        text << "witness: objects " << arrows_text(r.witness->object_map) << ", arrows "
             << arrows_text(r.witness->arrow_map) << "\n";
      }
      break;
    }
    case DocumentKind::kAction: {
      auto r = identical ? EquivarianceSearch{Verdict::kTrue, identity_g_morphism(a.action())}
                         : find_g_isomorphism(a.action(), b.action(), o.budget);
      v = r.verdict;
      if (r.witness) {
        j["witness"] = functor_json(r.witness->functor);
        j["witness"]["sigma"] = r.witness->sigma;
        text << "witness: objects " << arrows_text(r.witness->functor.object_map) << ", arrows "
             << arrows_text(r.witness->functor.arrow_map) << ", sigma " << arrows_text(r.witness->sigma) << "\n";
        write_document(o, {*r.witness});
      }
      break;
    }
    case DocumentKind::kGMorphism:
      throw UsageError("equiv compares groups, groupoids or actions");
  }
  j["verdict"] = to_string(v);
  j["identity_witness"] = identical;
  std::string head = std::string("equivalent: ") + to_string(v) + (identical ? " (identical inputs)" : "") + "\n";
  return emit(o, j, head + text.str(), v == Verdict::kTrue ? kOk : kNegative);
}

int cmd_paper_suite(const Options& o) {
  auto r = run_paper_suite();
  const auto machine = render_machine(r);
  if (!o.output.empty()) write_file(o.output, machine);
  std::cout << (o.machine() ? machine : render_text(r));
  return r.passed() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak actions of finite groups on finite groupoids"};
  app.require_subcommand(1);
  Options o;
  std::function<int(const Options&)> command;

  auto add = [&](const std::string& name, const std::string& help, std::function<int(const Options&)> f,
                 bool takes_input = true) {
    auto* sub = app.add_subcommand(name, help);
    if (takes_input) sub->add_option("--input", o.inputs, "spec document")->check(CLI::ExistingFile);
    sub->add_option("--output", o.output, "result document");
    sub->add_option("--budget", o.budget, "search cap")->envname("STACKT_BUDGET")->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
    sub->callback([&command, f] { command = f; });
    return sub;
  };
  add("validate", "check the axioms of a group, groupoid, action or G-morphism", cmd_validate);
  add("strictify", "replace an action by an equivalent strict one", cmd_strictify)
      ->add_option("--witness", o.witness, "write the G-morphism u to this path");
  add("fixed-points", "fixed-point groupoid of an action", cmd_fixed_points);
  add("quotient", "quotient groupoid M/G", cmd_quotient);
  add("torsor-quotient", "groupoid of torsors over M, compared with M/G", cmd_torsor_quotient);
  add("equiv", "equivalence of two groups, groupoids or actions", cmd_equiv);
  add("paper-suite", "run the acceptance checks", cmd_paper_suite, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kUsage;
  }
  try {
    return command(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    return run_invalid(o, app.get_subcommands().front()->get_name(), e);
  } catch (const BudgetExceeded& e) {
    return run_budget(o, app.get_subcommands().front()->get_name(), e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
