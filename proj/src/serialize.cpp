#include "stackt/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace stackt {

using json = nlohmann::ordered_json;

const char* to_string(DocumentKind k) {
  switch (k) {
    case DocumentKind::kGroup:
      return "group";
    case DocumentKind::kGroupoid:
      return "groupoid";
    case DocumentKind::kAction:
      return "action";
    case DocumentKind::kGMorphism:
      return "g-morphism";
  }
  return "?";
}

ParseError::ParseError(Kind kind, const std::string& message, std::size_t line,
                       std::size_t column, std::string path)
    : std::invalid_argument(message), kind_(kind), line_(line), column_(column),
      path_(std::move(path)) {}

namespace {

bool same_maps(const GMorphism& a, const GMorphism& b) {
  return a.functor.object_map == b.functor.object_map && a.functor.arrow_map == b.functor.arrow_map &&
         a.sigma == b.sigma;
}

// ---- writing ----

json group_json(const FiniteGroup& g) {
  json out;
  out["order"] = g.order();
  out["table"] = g.table();
  return out;
}

json groupoid_json(const FiniteGroupoid& m) {
  json out;
  out["objects"] = m.num_objects();
  json arrows = json::array();
  for (const auto& e : m.arrows()) arrows.push_back({e.source, e.target});
  out["arrows"] = arrows;
  out["identities"] = m.identities();
  json comp = json::array();
  for (const auto& e : m.composition_entries()) comp.push_back({e.first, e.second, e.result});
  out["composition"] = comp;
  return out;
}

json action_json(const WeakAction& a) {
  json out;
  out["group"] = group_json(a.group());
  out["groupoid"] = groupoid_json(a.space());
  json mu = json::array();
  for (Element g = 0; g < a.group_order(); ++g) {
    json entry;
    entry["g"] = g;
    entry["objects"] = a.mu(g).object_map;
    entry["arrows"] = a.mu(g).arrow_map;
    mu.push_back(entry);
  }
  out["mu"] = mu;
  json alpha = json::array();
  for (Element g = 0; g < a.group_order(); ++g) {
    for (Element h = 0; h < a.group_order(); ++h) {
      json entry;
      entry["g"] = g;
      entry["h"] = h;
      entry["components"] = a.alpha_table()[g * a.group_order() + h];
      alpha.push_back(entry);
    }
  }
  out["alpha"] = alpha;
  out["unit"] = a.unit_table();
  return out;
}

json g_morphism_json(const GMorphism& m) {
  json out;
  out["source"] = action_json(*m.source);
  out["target"] = action_json(*m.target);
  out["objects"] = m.functor.object_map;
  out["arrows"] = m.functor.arrow_map;
  json sigma = json::array();
  const auto n = m.source->num_objects();
  for (Element g = 0; g < m.source->group_order(); ++g) {
    json entry;
    entry["g"] = g;
    entry["components"] =
        std::vector<ArrowId>(m.sigma.begin() + g * n, m.sigma.begin() + (g + 1) * n);
    sigma.push_back(entry);
  }
  out["sigma"] = sigma;
  return out;
}

bool is_scalar_array(const json& j) {
  return std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
}

void write(std::string& out, const json& j, std::size_t indent) {
  const std::string pad(indent + 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
      out += pad + json(key).dump() + ": ";
      write(out, value, indent + 2);
      out += ++i == j.size() ? "\n" : ",\n";
    }
    out += std::string(indent, ' ') + "}";
  } else if (j.is_array() && is_scalar_array(j)) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ", ";
      out += j[i].dump();
    }
    out += "]";
  } else if (j.is_array()) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      write(out, j[i], indent + 2);
      out += i + 1 == j.size() ? "\n" : ",\n";
    }
    out += std::string(indent, ' ') + "]";
  } else {
    out += j.dump();
  }
}

// ---- reading ----

[[noreturn]] void semantic(const std::string& path, const std::string& message) {
  throw ParseError(ParseError::Kind::kSemantic,
                   "semantic error at " + (path.empty() ? std::string("/") : path) + ": " + message, 0, 0,
                   path);
}

void expect_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) semantic(path, "expected an object");
  for (const auto* k : keys) {
    if (!j.contains(k)) semantic(path, std::string("missing key \"") + k + "\"");
  }
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
      semantic(path, "unexpected key \"" + key + "\"");
  }
}

std::uint32_t read_uint(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() >= kNone)
    semantic(path, "expected a non-negative integer");
  return j.get<std::uint32_t>();
}

std::vector<std::uint32_t> read_uints(const json& j, const std::string& path) {
  if (!j.is_array()) semantic(path, "expected an array of integers");
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_uint(j[i], path + "/" + std::to_string(i)));
  return out;
}

void check_size(std::size_t got, std::size_t want, const std::string& path) {
  if (got != want)
    semantic(path, "expected " + std::to_string(want) + " entries, found " + std::to_string(got));
}

void check_range(const std::vector<std::uint32_t>& v, std::size_t bound, const std::string& path,
                 const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= bound) semantic(path + "/" + std::to_string(i), std::string(what) + " index out of range");
  }
}

template <typename F>
auto guard(const std::string& path, F&& build) {
  try {
    return build();
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    semantic(path, e.what());
  }
}

GroupPtr read_group(const json& j, const std::string& path) {
  expect_keys(j, path, {"order", "table"});
  const auto n = read_uint(j["order"], path + "/order");
  if (n == 0) semantic(path + "/order", "a group has at least one element");
  const auto& rows = j["table"];
  if (!rows.is_array()) semantic(path + "/table", "expected an array of rows");
  check_size(rows.size(), n, path + "/table");
  std::vector<std::vector<Element>> table;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row_path = path + "/table/" + std::to_string(i);
    table.push_back(read_uints(rows[i], row_path));
    check_size(table.back().size(), n, row_path);
    check_range(table.back(), n, row_path, "element");
  }
  return guard(path, [&] { return make_group(table); });
}

GroupoidPtr read_groupoid(const json& j, const std::string& path) {
  expect_keys(j, path, {"objects", "arrows", "identities", "composition"});
  const auto n = read_uint(j["objects"], path + "/objects");
  std::vector<ArrowEnds> arrows;
  const auto& aj = j["arrows"];
  if (!aj.is_array()) semantic(path + "/arrows", "expected an array of [source, target] pairs");
  for (std::size_t i = 0; i < aj.size(); ++i) {
    const auto p = path + "/arrows/" + std::to_string(i);
    auto ends = read_uints(aj[i], p);
    check_size(ends.size(), 2, p);
    check_range(ends, n, p, "object");
    arrows.push_back({ends[0], ends[1]});
  }
  auto identities = read_uints(j["identities"], path + "/identities");
  check_size(identities.size(), n, path + "/identities");
  check_range(identities, arrows.size(), path + "/identities", "arrow");
  std::vector<CompositionEntry> comp;
  const auto& cj = j["composition"];
  if (!cj.is_array()) semantic(path + "/composition", "expected an array of [first, second, result] triples");
  for (std::size_t i = 0; i < cj.size(); ++i) {
    const auto p = path + "/composition/" + std::to_string(i);
    auto e = read_uints(cj[i], p);
    check_size(e.size(), 3, p);
    check_range(e, arrows.size(), p, "arrow");
    comp.push_back({e[0], e[1], e[2]});
  }
  return guard(path, [&] { return share(FiniteGroupoid(n, arrows, identities, comp)); });
}

ActionPtr read_action(const json& j, const std::string& path) {
  expect_keys(j, path, {"group", "groupoid", "mu", "alpha", "unit"});
  auto group = read_group(j["group"], path + "/group");
  auto space = read_groupoid(j["groupoid"], path + "/groupoid");
  const auto n = group->order();

  const auto& mj = j["mu"];
  if (!mj.is_array()) semantic(path + "/mu", "expected an array of functors");
  check_size(mj.size(), n, path + "/mu");
  std::vector<GroupoidFunctor> mu;
  for (std::size_t g = 0; g < n; ++g) {
    const auto p = path + "/mu/" + std::to_string(g);
    expect_keys(mj[g], p, {"g", "objects", "arrows"});
    if (read_uint(mj[g]["g"], p + "/g") != g) semantic(p + "/g", "functors must be listed in element order");
    auto objects = read_uints(mj[g]["objects"], p + "/objects");
    check_size(objects.size(), space->num_objects(), p + "/objects");
    check_range(objects, space->num_objects(), p + "/objects", "object");
    auto arrows = read_uints(mj[g]["arrows"], p + "/arrows");
    check_size(arrows.size(), space->num_arrows(), p + "/arrows");
    check_range(arrows, space->num_arrows(), p + "/arrows", "arrow");
    mu.push_back(GroupoidFunctor{space, space, objects, arrows});
  }

  const auto& alj = j["alpha"];
  if (!alj.is_array()) semantic(path + "/alpha", "expected an array of components");
  std::vector<std::vector<ArrowId>> alpha(n * n);
  std::vector<bool> seen(n * n, false);
  for (std::size_t i = 0; i < alj.size(); ++i) {
    const auto p = path + "/alpha/" + std::to_string(i);
    expect_keys(alj[i], p, {"g", "h", "components"});
    const auto g = read_uint(alj[i]["g"], p + "/g");
    const auto h = read_uint(alj[i]["h"], p + "/h");
    if (g >= n || h >= n) semantic(p, "element index out of range");
    if (seen[g * n + h])
      semantic(p, "duplicate alpha entry for (g, h) = (" + std::to_string(g) + ", " + std::to_string(h) + ")");
    seen[g * n + h] = true;
    alpha[g * n + h] = read_uints(alj[i]["components"], p + "/components");
    check_size(alpha[g * n + h].size(), space->num_objects(), p + "/components");
    check_range(alpha[g * n + h], space->num_arrows(), p + "/components", "arrow");
  }
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) {
      if (!seen[g * n + h])
        semantic(path + "/alpha",
                 "missing alpha entry for (g, h) = (" + std::to_string(g) + ", " + std::to_string(h) + ")");
    }
  }
  auto unit = read_uints(j["unit"], path + "/unit");
  check_size(unit.size(), space->num_objects(), path + "/unit");
  check_range(unit, space->num_arrows(), path + "/unit", "arrow");
  return guard(path, [&] { return share(WeakAction(group, space, mu, alpha, unit)); });
}

GMorphism read_g_morphism(const json& j, const std::string& path) {
  expect_keys(j, path, {"source", "target", "objects", "arrows", "sigma"});
  auto a = read_action(j["source"], path + "/source");
  auto b = read_action(j["target"], path + "/target");
  if (!(a->group() == b->group())) semantic(path + "/target/group", "source and target groups differ");
  auto objects = read_uints(j["objects"], path + "/objects");
  check_size(objects.size(), a->num_objects(), path + "/objects");
  check_range(objects, b->num_objects(), path + "/objects", "object");
  auto arrows = read_uints(j["arrows"], path + "/arrows");
  check_size(arrows.size(), a->space().num_arrows(), path + "/arrows");
  check_range(arrows, b->space().num_arrows(), path + "/arrows", "arrow");
  const auto& sj = j["sigma"];
  if (!sj.is_array()) semantic(path + "/sigma", "expected an array of components");
  check_size(sj.size(), a->group_order(), path + "/sigma");
  std::vector<ArrowId> sigma;
  for (std::size_t g = 0; g < sj.size(); ++g) {
    const auto p = path + "/sigma/" + std::to_string(g);
    expect_keys(sj[g], p, {"g", "components"});
    if (read_uint(sj[g]["g"], p + "/g") != g) semantic(p + "/g", "components must be listed in element order");
    auto c = read_uints(sj[g]["components"], p + "/components");
    check_size(c.size(), a->num_objects(), p + "/components");
    check_range(c, b->space().num_arrows(), p + "/components", "arrow");
    sigma.insert(sigma.end(), c.begin(), c.end());
  }
  return GMorphism{a, b, GroupoidFunctor{a->space_ptr(), b->space_ptr(), objects, arrows}, sigma};
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  const auto end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

bool operator==(const SpecDocument& a, const SpecDocument& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case DocumentKind::kGroup:
      return *a.group() == *b.group();
    case DocumentKind::kGroupoid:
      return *a.groupoid() == *b.groupoid();
    case DocumentKind::kAction:
      return *a.action() == *b.action();
    case DocumentKind::kGMorphism:
      return *a.g_morphism().source == *b.g_morphism().source &&
             *a.g_morphism().target == *b.g_morphism().target && same_maps(a.g_morphism(), b.g_morphism());
  }
  return false;
}

std::string serialize_spec(const SpecDocument& doc) {
  json body;
  switch (doc.kind()) {
    case DocumentKind::kGroup:
      body = group_json(*doc.group());
      break;
    case DocumentKind::kGroupoid:
      body = groupoid_json(*doc.groupoid());
      break;
    case DocumentKind::kAction:
      body = action_json(*doc.action());
      break;
    case DocumentKind::kGMorphism:
      body = g_morphism_json(doc.g_morphism());
      break;
  }
  json top;
  top["format"] = kFormatVersion;
  top["kind"] = to_string(doc.kind());
  for (const auto& [key, value] : body.items()) top[key] = value;
  std::string out;
  write(out, top, 0);
  out += "\n";
  return out;
}

SpecDocument parse_spec(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::string reason = e.what();
    const auto cut = reason.find(": ", reason.find("column"));
    if (cut != std::string::npos) reason = reason.substr(cut + 2);
    throw ParseError(ParseError::Kind::kSyntax,
                     "syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + reason,
                     line, column);
  }
  if (!j.is_object()) semantic("", "expected an object");
  if (!j.contains("format") || !j["format"].is_string())
    throw ParseError(ParseError::Kind::kVersion, "missing format version", 0, 0, "/format");
  if (j["format"].get<std::string>() != kFormatVersion)
    throw ParseError(ParseError::Kind::kVersion,
                     "unsupported format version \"" + j["format"].get<std::string>() + "\", expected \"" +
                         std::string(kFormatVersion) + "\"",
                     0, 0, "/format");
  if (!j.contains("kind") || !j["kind"].is_string()) semantic("/kind", "missing document kind");
  const auto kind = j["kind"].get<std::string>();
  json body = j;
  body.erase("format");
  body.erase("kind");
  if (kind == "group") return SpecDocument{read_group(body, "")};
  if (kind == "groupoid") return SpecDocument{read_groupoid(body, "")};
  if (kind == "action") return SpecDocument{read_action(body, "")};
  if (kind == "g-morphism") return SpecDocument{read_g_morphism(body, "")};
  semantic("/kind", "unknown document kind \"" + kind + "\"");
}

SpecDocument read_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_spec(text.str());
}

}  // namespace stackt
