#include "stackt/group.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace stackt {

FiniteGroup::FiniteGroup() : order_(1), table_{0}, inverse_{0} {}

FiniteGroup::FiniteGroup(const std::vector<std::vector<Element>>& table)
    : order_(table.size()) {
  if (order_ == 0) throw MalformedError("group table is empty");
  table_.reserve(order_ * order_);
  for (std::size_t i = 0; i < order_; ++i) {
    if (table[i].size() != order_) {
      throw MalformedError("group table row " + std::to_string(i) +
                           " has length " + std::to_string(table[i].size()) +
                           ", expected " + std::to_string(order_));
    }
    for (std::size_t j = 0; j < order_; ++j) {
      if (table[i][j] >= order_) {
        throw MalformedError("group table entry (" + std::to_string(i) + "," +
                             std::to_string(j) + ") out of range");
      }
      table_.push_back(table[i][j]);
    }
  }
  inverse_.assign(order_, kNone);
  for (Element a = 0; a < order_; ++a) {
    for (Element b = 0; b < order_; ++b) {
      if (mul(a, b) == 0 && mul(b, a) == 0) {
        inverse_[a] = b;
        break;
      }
    }
  }
}

std::vector<std::vector<Element>> FiniteGroup::table() const {
  std::vector<std::vector<Element>> out(order_);
  for (std::size_t i = 0; i < order_; ++i) {
    out[i].assign(table_.begin() + i * order_, table_.begin() + (i + 1) * order_);
  }
  return out;
}

ValidationReport validate_group(const FiniteGroup& g) {
  ValidationReport r;
  const auto n = static_cast<Element>(g.order());
  for (Element a = 0; a < n; ++a) {
    if (g.mul(0, a) != a || g.mul(a, 0) != a) r.add("unit", {a});
    if (g.inverse(a) == kNone) r.add("inverse", {a});
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      for (Element c = 0; c < n; ++c) {
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) {
          r.add("associativity", {a, b, c});
        }
      }
    }
  }
  return r;
}

bool GroupHom::is_injective() const {
  std::vector<bool> seen(target->order(), false);
  for (auto v : map) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool GroupHom::is_surjective() const {
  std::vector<bool> seen(target->order(), false);
  for (auto v : map) seen[v] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

ValidationReport validate_hom(const GroupHom& f) {
  if (f.map.size() != f.source->order()) {
    throw MalformedError("homomorphism map has wrong length");
  }
  for (auto v : f.map) {
    if (v >= f.target->order()) throw MalformedError("homomorphism image out of range");
  }
  ValidationReport r;
  const auto n = static_cast<Element>(f.source->order());
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (f(f.source->mul(a, b)) != f.target->mul(f(a), f(b))) {
        r.add("multiplicative", {a, b});
      }
    }
  }
  return r;
}

FiniteGroup trivial_group() { return FiniteGroup(); }

FiniteGroup cyclic(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cyclic group order must be positive");
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = static_cast<Element>((i + j) % n);
  }
  return FiniteGroup(t);
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      auto i = a.mul(static_cast<Element>(x / nb), static_cast<Element>(y / nb));
      auto j = b.mul(static_cast<Element>(x % nb), static_cast<Element>(y % nb));
      t[x][y] = static_cast<Element>(i * nb + j);
    }
  }
  return FiniteGroup(t);
}

FiniteGroup quaternion_group() {
  // Encode an element as (sign, unit) with unit in {1, i, j, k} = {0, 1, 2, 3};
  // index = 2 * unit + (sign < 0).
  static constexpr int kUnitProduct[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int kSignProduct[4][4] = {
      {1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<std::vector<Element>> t(8, std::vector<Element>(8));
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      const int ux = x / 2, uy = y / 2;
      int sign = (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1) * kSignProduct[ux][uy];
      t[x][y] = static_cast<Element>(2 * kUnitProduct[ux][uy] + (sign < 0 ? 1 : 0));
    }
  }
  return FiniteGroup(t);
}

FiniteGroup symmetric_group(std::size_t n) {
  std::vector<std::vector<Element>> perms;
  std::vector<Element> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const std::size_t m = perms.size();
  std::vector<std::vector<Element>> t(m, std::vector<Element>(m));
  std::vector<Element> prod(n);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      for (std::size_t i = 0; i < n; ++i) prod[i] = perms[a][perms[b][i]];
      auto it = std::lower_bound(perms.begin(), perms.end(), prod);
      t[a][b] = static_cast<Element>(it - perms.begin());
    }
  }
  return FiniteGroup(t);
}

std::size_t element_order(const FiniteGroup& g, Element a) {
  std::size_t k = 1;
  for (Element p = a; p != 0; p = g.mul(p, a)) {
    ++k;
    if (k > g.order()) throw std::logic_error("element has no finite order");
  }
  return k;
}

std::vector<Element> center(const FiniteGroup& g) {
  std::vector<Element> z;
  const auto n = static_cast<Element>(g.order());
  for (Element a = 0; a < n; ++a) {
    bool central = true;
    for (Element b = 0; b < n && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.push_back(a);
  }
  return z;
}

bool is_abelian(const FiniteGroup& g) { return center(g).size() == g.order(); }

bool is_subgroup(const FiniteGroup& g, const std::vector<Element>& subset) {
  std::vector<bool> in(g.order(), false);
  for (auto a : subset) {
    if (a >= g.order()) return false;
    in[a] = true;
  }
  if (!in[0]) return false;
  for (auto a : subset) {
    for (auto b : subset) {
      if (!in[g.mul(a, b)]) return false;
    }
  }
  return true;
}

bool is_normal_subgroup(const FiniteGroup& g, const std::vector<Element>& subset) {
  if (!is_subgroup(g, subset)) return false;
  std::vector<bool> in(g.order(), false);
  for (auto a : subset) in[a] = true;
  const auto n = static_cast<Element>(g.order());
  for (Element r = 0; r < n; ++r) {
    for (auto a : subset) {
      if (!in[g.mul(g.mul(r, a), g.inverse(r))]) return false;
    }
  }
  return true;
}

std::vector<Element> generated_subgroup(const FiniteGroup& g,
                                        const std::vector<Element>& gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<Element> out{0};
  in[0] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (auto s : gens) {
      auto b = g.mul(out[i], s);
      if (!in[b]) {
        in[b] = true;
        out.push_back(b);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Element> generators(const FiniteGroup& g) {
  std::vector<Element> gens;
  std::vector<Element> sub{0};
  const auto n = static_cast<Element>(g.order());
  while (sub.size() < g.order()) {
    Element best = kNone;
    std::size_t best_order = 0;
    for (Element a = 0; a < n; ++a) {
      if (std::binary_search(sub.begin(), sub.end(), a)) continue;
      auto o = element_order(g, a);
      if (o > best_order) {
        best = a;
        best_order = o;
      }
    }
    gens.push_back(best);
    sub = generated_subgroup(g, gens);
  }
  return gens;
}

QuotientResult quotient_group(const GroupPtr& g, std::vector<Element> subgroup) {
  std::sort(subgroup.begin(), subgroup.end());
  subgroup.erase(std::unique(subgroup.begin(), subgroup.end()), subgroup.end());
  if (!is_subgroup(*g, subgroup)) throw std::invalid_argument("not a subgroup");
  if (!is_normal_subgroup(*g, subgroup)) {
    throw std::invalid_argument("subgroup is not normal");
  }
  const auto n = static_cast<Element>(g->order());
  std::vector<Element> coset_of(n, kNone);
  QuotientResult out;
  for (Element a = 0; a < n; ++a) {
    if (coset_of[a] != kNone) continue;
    const auto idx = static_cast<Element>(out.cosets.size());
    std::vector<Element> coset;
    for (auto s : subgroup) {
      auto b = g->mul(a, s);
      coset_of[b] = idx;
      coset.push_back(b);
    }
    std::sort(coset.begin(), coset.end());
    out.cosets.push_back(std::move(coset));
  }
  const std::size_t m = out.cosets.size();
  std::vector<std::vector<Element>> t(m, std::vector<Element>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      t[i][j] = coset_of[g->mul(out.cosets[i][0], out.cosets[j][0])];
    }
  }
  out.group = make_group(t);
  out.projection = GroupHom{g, out.group, coset_of};
  return out;
}

bool AutomorphismAction::is_faithful() const {
  for (std::size_t a = 1; a < automorphisms.size(); ++a) {
    bool identity = true;
    for (std::size_t q = 0; q < automorphisms[a].size() && identity; ++q) {
      identity = automorphisms[a][q] == q;
    }
    if (identity) return false;
  }
  return true;
}

ValidationReport validate_automorphism_action(const AutomorphismAction& a) {
  if (a.automorphisms.size() != a.acting->order()) {
    throw MalformedError("automorphism family has wrong length");
  }
  ValidationReport r;
  const auto n = static_cast<Element>(a.acting->order());
  const auto m = a.on->order();
  for (Element i = 0; i < n; ++i) {
    if (a.automorphisms[i].size() != m) throw MalformedError("automorphism has wrong length");
    GroupHom h{a.on, a.on, a.automorphisms[i]};
    if (!validate_hom(h).ok() || !h.is_injective()) r.add("not_automorphism", {i});
  }
  if (!r.ok()) return r;
  for (Element i = 0; i < n; ++i) {
    for (Element j = 0; j < n; ++j) {
      const auto& ij = a.automorphisms[a.acting->mul(i, j)];
      for (Element q = 0; q < m; ++q) {
        if (ij[q] != a.automorphisms[i][a.automorphisms[j][q]]) {
          r.add("not_homomorphism", {i, j, q});
          break;
        }
      }
    }
  }
  return r;
}

namespace {

// Backtracking over generator images. `accept_image(s, v)` prunes candidates
// for generator s. Visits complete homomorphisms (as image vectors).
std::size_t search_homs(const FiniteGroup& g, const FiniteGroup& h,
                        const std::vector<Element>& gens, std::size_t budget,
                        const std::function<bool(Element, Element)>& accept_image,
                        const std::function<bool(const std::vector<Element>&)>& visit) {
  std::size_t nodes = 0;
  std::vector<Element> images(gens.size());
  bool stop = false;
  const auto hn = static_cast<Element>(h.order());

  auto close = [&](std::vector<Element>& map) {
    map.assign(g.order(), kNone);
    map[0] = 0;
    std::vector<Element> queue{0};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      auto a = queue[i];
      for (std::size_t s = 0; s < gens.size(); ++s) {
        auto b = g.mul(a, gens[s]);
        auto v = h.mul(map[a], images[s]);
        if (map[b] == kNone) {
          map[b] = v;
          queue.push_back(b);
        } else if (map[b] != v) {
          return false;
        }
      }
    }
    return true;
  };

  std::vector<Element> map;
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (stop) return;
    if (++nodes > budget) {
      stop = true;
      return;
    }
    if (depth == gens.size()) {
      if (close(map) && !visit(map)) stop = true;
      return;
    }
    const auto ord = element_order(g, gens[depth]);
    for (Element v = 0; v < hn && !stop; ++v) {
      if (ord % element_order(h, v) != 0) continue;
      if (!accept_image(gens[depth], v)) continue;
      images[depth] = v;
      rec(depth + 1);
    }
  };
  rec(0);
  return nodes > budget ? kNone : nodes;
}

}  // namespace

std::vector<GroupHom> enumerate_homs(const GroupPtr& g, const GroupPtr& h) {
  std::vector<GroupHom> out;
  auto gens = generators(*g);
  search_homs(*g, *h, gens, static_cast<std::size_t>(-1),
              [](Element, Element) { return true; },
              [&](const std::vector<Element>& map) {
                out.push_back(GroupHom{g, h, map});
                return true;
              });
  std::sort(out.begin(), out.end(),
            [](const GroupHom& a, const GroupHom& b) { return a.map < b.map; });
  return out;
}

std::size_t for_each_isomorphism(
    const FiniteGroup& a, const FiniteGroup& b, std::size_t budget,
    const std::function<bool(const std::vector<Element>&)>& visit) {
  if (a.order() != b.order()) return 0;
  auto gens = generators(a);
  // Collect in canonical order first so the visitation order does not depend
  // on the generator choice.
  std::vector<std::vector<Element>> isos;
  auto used = search_homs(
      a, b, gens, budget,
      [&](Element s, Element v) { return element_order(a, s) == element_order(b, v); },
      [&](const std::vector<Element>& map) {
        std::vector<bool> seen(b.order(), false);
        for (auto x : map) {
          if (seen[x]) return true;
          seen[x] = true;
        }
        isos.push_back(map);
        return true;
      });
  if (used == kNone) return kNone;
  std::sort(isos.begin(), isos.end());
  for (const auto& iso : isos) {
    if (!visit(iso)) break;
  }
  return used;
}

std::optional<std::vector<Element>> find_isomorphism(const FiniteGroup& a,
                                                     const FiniteGroup& b) {
  std::optional<std::vector<Element>> found;
  for_each_isomorphism(a, b, static_cast<std::size_t>(-1),
                       [&](const std::vector<Element>& iso) {
                         found = iso;
                         return false;
                       });
  return found;
}

AutomorphismAction automorphism_group(const GroupPtr& g) {
  std::vector<std::vector<Element>> autos;
  for_each_isomorphism(*g, *g, static_cast<std::size_t>(-1),
                       [&](const std::vector<Element>& iso) {
                         autos.push_back(iso);
                         return true;
                       });
  const std::size_t m = autos.size();
  std::vector<std::vector<Element>> t(m, std::vector<Element>(m));
  std::vector<Element> comp(g->order());
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t q = 0; q < g->order(); ++q) comp[q] = autos[i][autos[j][q]];
      auto it = std::lower_bound(autos.begin(), autos.end(), comp);
      t[i][j] = static_cast<Element>(it - autos.begin());
    }
  }
  return AutomorphismAction{make_group(t), g, std::move(autos)};
}

AutomorphismAction conjugation_action(const GroupPtr& q,
                                      std::vector<Element> central_subgroup) {
  if (!is_subgroup(*q, central_subgroup)) throw std::invalid_argument("not a subgroup");
  auto z = center(*q);
  for (auto a : central_subgroup) {
    if (!std::binary_search(z.begin(), z.end(), a)) {
      throw std::invalid_argument("subgroup is not central");
    }
  }
  auto quot = quotient_group(q, std::move(central_subgroup));
  AutomorphismAction out{quot.group, q, {}};
  for (const auto& coset : quot.cosets) {
    const Element r = coset.front();
    std::vector<Element> perm(q->order());
    for (Element x = 0; x < q->order(); ++x) perm[x] = q->mul(q->mul(r, x), q->inverse(r));
    out.automorphisms.push_back(std::move(perm));
  }
  return out;
}

}  // namespace stackt
