#include "stackt/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace stackt::fixtures {

namespace {

template <typename T>
const T& pick(const std::vector<T>& v, std::mt19937& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

std::vector<std::vector<ObjectId>> s3_permutations() {
  std::vector<std::vector<ObjectId>> out;
  std::vector<ObjectId> p = {0, 1, 2};
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Permutation representation of g on `points` points through a random
// homomorphism into a small symmetric group, or a trivial/regular one.
std::vector<std::vector<ObjectId>> random_gset(const GroupPtr& g, std::mt19937& rng,
                                               std::string& label) {
  const auto n = g->order();
  switch (rng() % 4) {
    case 0: {
      const auto k = 1 + rng() % 3;
      std::vector<ObjectId> id(k);
      std::iota(id.begin(), id.end(), 0);
      label = "fix" + std::to_string(k);
      return std::vector<std::vector<ObjectId>>(n, id);
    }
    case 1:
      if (n <= 6) {
        std::vector<std::vector<ObjectId>> perms(n, std::vector<ObjectId>(n));
        for (Element a = 0; a < n; ++a)
          for (Element b = 0; b < n; ++b) perms[a][b] = g->mul(a, b);
        label = "reg";
        return perms;
      }
      [[fallthrough]];
    case 2: {
      auto homs = enumerate_homs(g, make_group(cyclic(2)));
      const auto& f = pick(homs, rng);
      std::vector<std::vector<ObjectId>> perms;
      for (Element a = 0; a < n; ++a) {
        perms.push_back(f(a) ? std::vector<ObjectId>{1, 0} : std::vector<ObjectId>{0, 1});
      }
      label = "sign";
      return perms;
    }
    default: {
      auto homs = enumerate_homs(g, make_group(symmetric_group(3)));
      const auto& f = pick(homs, rng);
      auto s3 = s3_permutations();
      std::vector<std::vector<ObjectId>> perms;
      for (Element a = 0; a < n; ++a) perms.push_back(s3[f(a)]);
      label = "s3";
      return perms;
    }
  }
}

std::vector<std::pair<std::string, GroupPtr>> coefficient_groups() {
  return {{"1", make_group(trivial_group())},
          {"Z2", make_group(cyclic(2))},
          {"Z3", make_group(cyclic(3))},
          {"Z4", make_group(cyclic(4))},
          {"Z2xZ2", make_group(direct_product(cyclic(2), cyclic(2)))}};
}

std::size_t int_pow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    r *= b;
    if (r > (std::size_t{1} << 40)) return r;
  }
  return r;
}

}  // namespace

WeakAction quaternion_twist() {
  auto q = make_group(quaternion_group());
  return twist_action(conjugation_action(q, center(*q)));
}

WeakAction quaternion_lifted_twist() {
  auto q = make_group(quaternion_group());
  return lifted_conjugation_action(q, center(*q));
}

WeakAction pair_gset_action(GroupPtr group, const std::vector<std::vector<ObjectId>>& permutations) {
  // Reuse the set-action checks.
  action_from_gset(group, permutations);
  const auto size = permutations.front().size();
  auto space = share(pair_groupoid(size));
  std::vector<GroupoidFunctor> mu;
  for (const auto& p : permutations) {
    GroupoidFunctor f{space, space, p, {}};
    for (ObjectId x = 0; x < size; ++x)
      for (ObjectId y = 0; y < size; ++y)
        f.arrow_map.push_back(static_cast<ArrowId>(p[x] * size + p[y]));
    mu.push_back(std::move(f));
  }
  return strict_action(std::move(group), space, std::move(mu));
}

WeakAction twist_through(const GroupPtr& g, const GroupPtr& h, std::mt19937& rng) {
  auto aut = automorphism_group(h);
  auto homs = enumerate_homs(g, aut.acting);
  const auto& f = pick(homs, rng);
  AutomorphismAction t{g, h, {}};
  for (Element a = 0; a < g->order(); ++a) t.automorphisms.push_back(aut.automorphisms[f(a)]);
  return twist_action(t);
}

std::vector<ArrowId> random_pointwise_transport(const WeakAction& a, std::mt19937& rng) {
  std::vector<ArrowId> j;
  for (Element g = 0; g < a.group_order(); ++g) {
    for (ObjectId x = 0; x < a.num_objects(); ++x) {
      auto out = a.space().out_arrows(a.act(g, x));
      j.push_back(out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)]);
    }
  }
  return j;
}

std::vector<std::pair<std::string, GroupPtr>> small_groups() {
  return {{"Z2", make_group(cyclic(2))},
          {"Z3", make_group(cyclic(3))},
          {"Z4", make_group(cyclic(4))},
          {"Z2xZ2", make_group(direct_product(cyclic(2), cyclic(2)))},
          {"Z5", make_group(cyclic(5))},
          {"Z6", make_group(cyclic(6))},
          {"S3", make_group(symmetric_group(3))},
          {"Z7", make_group(cyclic(7))},
          {"Z8", make_group(cyclic(8))},
          {"Z2xZ4", make_group(direct_product(cyclic(2), cyclic(4)))},
          {"Z2xZ2xZ2", make_group(direct_product(cyclic(2), direct_product(cyclic(2), cyclic(2))))},
          {"Q8", make_group(quaternion_group())}};
}

std::vector<NamedAction> catalogue() {
  auto z2 = make_group(cyclic(2));
  auto z3 = make_group(cyclic(3));
  auto s3 = make_group(symmetric_group(3));
  return {
      {"trivial Z2 on point", share(trivial_action(z2, share(discrete_groupoid(1))))},
      {"trivial Z2 on b0(Z2)", share(trivial_action(z2, share(b0_groupoid(cyclic(2)))))},
      {"trivial Z3 on pair(2)", share(trivial_action(z3, share(pair_groupoid(2))))},
      {"Z2 swapping two points", share(action_from_gset(z2, {{0, 1}, {1, 0}}))},
      {"S3 by left translation", share(left_translation_action(s3))},
      {"Aut(Z4) on b0(Z4)", share(twist_action(automorphism_group(make_group(cyclic(4)))))},
      {"Q/Z on b0(Q) by conjugation", share(quaternion_twist())},
      {"Z2 swap x trivial on b0(Z3)",
       share(product_action(action_from_gset(z2, {{0, 1}, {1, 0}}),
                            trivial_action(z2, share(b0_groupoid(cyclic(3))))))},
  };
}

std::vector<NamedAction> weak_corpus(std::uint32_t seed, std::size_t count) {
  std::mt19937 rng(seed);
  auto groups = small_groups();
  auto coeffs = coefficient_groups();
  std::vector<NamedAction> out;
  while (out.size() < count) {
    const auto& [gname, g] = pick(groups, rng);
    const auto& [hname, h] = pick(coeffs, rng);
    std::string set_label;
    auto perms = random_gset(g, rng, set_label);
    if (rng() % 3 == 0) {
      std::string second;
      auto more = random_gset(g, rng, second);
      const auto offset = static_cast<ObjectId>(perms.front().size());
      for (std::size_t a = 0; a < perms.size(); ++a)
        for (auto x : more[a]) perms[a].push_back(x + offset);
      set_label += "+" + second;
    }
    const auto points = perms.front().size();
    if (points > 6) continue;
    const bool pairs = rng() % 2 == 0;
    const auto degree = (pairs ? points : 1) * h->order();
    const auto arrows = points * degree;
    if (g->order() * g->order() * arrows > 2500) continue;
    if (points * int_pow(degree, g->order() - 1) > 20000) continue;

    auto base = pairs ? pair_gset_action(g, perms) : action_from_gset(g, perms);
    auto a = product_action(base, twist_through(g, h, rng));
    auto weak = transport_action_pointwise(a, random_pointwise_transport(a, rng));
    std::string name = gname + " on " + (pairs ? "pair(" : "disc(") + set_label + ") x b0(" +
                       hname + ") #" + std::to_string(out.size());
    out.push_back({std::move(name), share(std::move(weak))});
  }
  return out;
}

}  // namespace stackt::fixtures
