// Writes the example spec documents used by the CLI tests and the README.

#include <fstream>
#include <iostream>
#include <random>

#include "stackt/fixtures.hpp"
#include "stackt/serialize.hpp"

using namespace stackt;

namespace {

void put(const std::string& dir, const std::string& name, const SpecDocument& doc) {
  std::ofstream out(dir + "/" + name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + dir + "/" + name);
  out << serialize_spec(doc);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_specs DIR\n";
    return 2;
  }
  const std::string dir = argv[1];
  auto z2 = make_group(cyclic(2));
  auto quaternion = share(fixtures::quaternion_twist());

  // one entry of mu_1 overwritten, so mu_1 is no longer a functor
  std::vector<GroupoidFunctor> mu;
  for (Element g = 0; g < quaternion->group_order(); ++g) mu.push_back(quaternion->mu(g));
  mu[1].arrow_map[2] = mu[1].arrow_map[2] == 0 ? 1 : 0;
  auto corrupted = share(WeakAction(quaternion->group_ptr(), quaternion->space_ptr(), mu,
                                    quaternion->alpha_table(), quaternion->unit_table()));

  // the trivial Z/2 action on pair(2), transported along j_g^x : g.x -> 1-x
  auto pair = share(pair_groupoid(2));
  auto trivial = trivial_action(z2, pair);
  auto swap = [&](ObjectId x) { return pair->hom(x, 1 - x)[0]; };
  auto transported = share(transport_action_pointwise(trivial, {swap(0), swap(1), swap(0), swap(1)}));

  put(dir, "z6.spec", {make_group(cyclic(6))});
  put(dir, "b0_z4.spec", {share(b0_groupoid(cyclic(4)))});
  put(dir, "pair3.spec", {share(pair_groupoid(3))});
  put(dir, "quaternion_twist.spec", {quaternion});
  put(dir, "quaternion_lifted_twist.spec", {share(fixtures::quaternion_lifted_twist())});
  put(dir, "quaternion_twist_corrupted.spec", {corrupted});
  put(dir, "z2_trivial_on_b0_z2.spec", {share(trivial_action(z2, share(b0_groupoid(cyclic(2)))))});
  put(dir, "z2_transported_on_pair2.spec", {transported});
  put(dir, "z2_trivial_on_pair2.spec", {share(std::move(trivial))});
  put(dir, "s3_left_translation.spec", {share(left_translation_action(make_group(symmetric_group(3))))});
  put(dir, "transport_witness.spec", {identity_g_morphism(transported)});
  return 0;
}
