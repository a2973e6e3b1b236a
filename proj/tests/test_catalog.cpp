#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "wreathkit/catalog.hpp"

using namespace wreathkit;

namespace {

const std::vector<Family> kDepth2Families = {Family::EA,   Family::EAt,  Family::Tt,         Family::ES,
                                             Family::AnE,  Family::AnA,  Family::AnAt,       Family::SnAt,
                                             Family::DiagKernel, Family::AnS};

// Families normal in S_n wr S_m for every n, m >= 2.
const std::vector<Family> kNormalInSnSm = {Family::EA,   Family::EAt,        Family::Tt,  Family::ES,
                                           Family::AnAt, Family::SnAt, Family::DiagKernel, Family::AnS};

const Check* find_check(const std::vector<Check>& checks, const std::string& name) {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

Status status_of(const VerificationReport& r, const std::string& name) {
  const auto checks = r.checks();
  const Check* c = find_check(checks, name);
  if (!c) throw std::runtime_error("missing check " + name);
  return c->status;
}

// Elements of the ambient satisfying a predicate on tableaux, by exhaustion.
std::size_t count_where(const WreathSpec& spec, const std::function<bool(const Tableau&)>& pred) {
  const Group w = build_wreath(spec);
  const auto n = w.enumerable_order(100'000);
  std::size_t count = 0;
  for (std::uint64_t i = 0; i < n; ++i) count += pred(perm_to_tableau(w.element_at(i), spec));
  return count;
}

}  // namespace

TEST(Catalog, ExpectedOrdersMatchChainOrders) {
  for (const auto& spec : {WreathSpec({3, 3}), WreathSpec({3, 5}), WreathSpec({5, 5}), WreathSpec({5, 6}),
                           WreathSpec({4, 3}), WreathSpec({2, 5})}) {
    for (Family f : kDepth2Families) {
      EXPECT_EQ(build_named(f, spec).order(), expected_order({f, spec})) << family_name(f) << to_string(spec);
    }
    for (std::size_t i = 1; i <= 2; ++i) {
      EXPECT_EQ(build_named(Family::Ni, spec, i).order(), expected_order({Family::Ni, spec, i}));
    }
  }
  EXPECT_EQ(expected_order({Family::SnAt, WreathSpec({3, 3})}), 648);
  EXPECT_EQ(expected_order({Family::ES, WreathSpec({3, 3})}), 216);
  EXPECT_EQ(expected_order({Family::AnAt, WreathSpec({3, 3})}), 324);
}

TEST(Catalog, OrdersMatchDefiningPredicatesByExhaustion) {
  const WreathSpec spec({3, 3});
  auto top_even = [](const Tableau& t) { return is_even(t.entry(1, 0)); };
  auto top_trivial = [](const Tableau& t) { return t.entry(1, 0).is_identity(); };
  auto all_even = [](const Tableau& t) {
    return std::all_of(t.level(2).begin(), t.level(2).end(), [](const Permutation& p) { return is_even(p); });
  };
  auto sum_even = [](const Tableau& t) { return level_product_even(t, 2); };
  const std::map<Family, std::function<bool(const Tableau&)>> predicates = {
      {Family::EA, [&](const Tableau& t) { return top_trivial(t) && all_even(t); }},
      {Family::EAt, [&](const Tableau& t) { return top_trivial(t) && sum_even(t); }},
      {Family::Tt, [&](const Tableau& t) { return classify(t).t_tilde(); }},
      {Family::ES, [&](const Tableau& t) { return top_trivial(t); }},
      {Family::AnAt, [&](const Tableau& t) { return top_even(t) && sum_even(t); }},
      {Family::SnAt, [&](const Tableau& t) { return sum_even(t); }},
      {Family::DiagKernel, [&](const Tableau& t) { return top_even(t) == sum_even(t); }},
      {Family::AnS, [&](const Tableau& t) { return top_even(t); }},
      {Family::AnA, [&](const Tableau& t) { return top_even(t) && all_even(t); }}};
  for (const auto& [family, pred] : predicates) {
    const Group g = build_named(family, spec);
    EXPECT_EQ(g.order(), count_where(spec, pred)) << family_name(family);
    // every generator satisfies the predicate
    for (const auto& t : generators_of({family, spec})) EXPECT_TRUE(pred(t)) << family_name(family);
  }
}

TEST(Catalog, NormalInSymmetricAmbient) {
  for (const auto& spec : {WreathSpec({3, 3}), WreathSpec({3, 5}), WreathSpec({5, 5}), WreathSpec({5, 6})}) {
    const Group w = build_wreath(spec);
    for (Family f : kNormalInSnSm) EXPECT_TRUE(is_normal(w, build_named(f, spec))) << family_name(f);
    EXPECT_TRUE(is_normal(w, build_named(Family::Ni, spec, 1)));
    EXPECT_TRUE(is_normal(w, build_named(Family::Ni, spec, 2)));
    EXPECT_FALSE(is_normal(w, build_named(Family::AnE, spec)));
  }
}

TEST(Catalog, GeneratorExamples) {
  const WreathSpec spec({3, 3});
  const Group eat = build_named(Family::EAt, spec);
  EXPECT_EQ(eat.order(), 108);
  EXPECT_TRUE(eat.contains(tableau_to_perm(parse_tableau("[()];[(1,2,3),(),()]", spec))));
  EXPECT_TRUE(eat.contains(tableau_to_perm(parse_tableau("[()];[(1,2),(1,2),()]", spec))));
  EXPECT_TRUE(same_group(normal_closure(build_wreath(spec), eat.generators()), eat));

  const Group tt = build_named(Family::Tt, spec);
  EXPECT_EQ(tt.order(), 54);
  EXPECT_EQ(derived_subgroup(tt).order(), 27);

  const Group n1 = build_named(Family::Ni, spec, 1);
  EXPECT_EQ(n1.order(), 324);
  EXPECT_TRUE(same_group(n1, derived_subgroup(build_wreath(spec))));
}

TEST(Catalog, InvalidPairingsThrow) {
  EXPECT_THROW(generators_of({Family::EAt, WreathSpec({3, 3, 3})}), Error);
  EXPECT_THROW(generators_of({Family::Ni, WreathSpec({3, 3}), 0}), Error);
  EXPECT_THROW(generators_of({Family::Ni, WreathSpec({3, 3}), 3}), Error);
  EXPECT_THROW(expected_order({Family::Tt, WreathSpec({3})}), Error);
}

TEST(Catalog, NiOrdersAtDepthThree) {
  const WreathSpec spec({2, 2, 3});
  for (std::size_t i = 1; i <= 3; ++i) {
    const auto count = count_where(spec, [&](const Tableau& t) -> bool { return classify(t).n_levels[i - 1]; });
    EXPECT_EQ(build_named(Family::Ni, spec, i).order(), count);
    EXPECT_EQ(expected_order({Family::Ni, spec, i}), count);
  }
  const WreathSpec s333({3, 3, 3});
  EXPECT_EQ(build_named(Family::Ni, s333, 1).order(), expected_order({Family::Ni, s333, 1}));
  EXPECT_EQ(build_wreath(s333).order() / build_named(Family::Ni, s333, 1).order(), 8);
}

TEST(Catalog, ThreeThreeLatticeEqualsCatalogPlusTrivialAndFull) {
  const WreathSpec spec({3, 3});
  const Group w = build_wreath(spec);
  const auto lattice = enumerate_normal_subgroups(w);
  std::vector<bool> hit(lattice.size(), false);
  for (Family f : kNormalInSnSm) {
    const auto at = lattice.find(build_named(f, spec));
    ASSERT_TRUE(at.has_value()) << family_name(f);
    EXPECT_FALSE(hit[*at]) << family_name(f);
    hit[*at] = true;
  }
  for (const Group& g : {Group::trivial(9), w}) {
    const auto at = lattice.find(g);
    ASSERT_TRUE(at.has_value());
    hit[*at] = true;
  }
  EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));

  // The three order-648 members are the kernels of the three sign characters.
  std::vector<std::size_t> big;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    if (lattice[i].order() == 648) big.push_back(i);
  }
  ASSERT_EQ(big.size(), 3u);
  for (Family f : {Family::SnAt, Family::DiagKernel, Family::AnS}) {
    const auto at = lattice.find(build_named(f, spec));
    EXPECT_NE(std::find(big.begin(), big.end(), *at), big.end());
  }
}

TEST(Catalog, ContainmentMatrixFollowsPredicates) {
  for (const auto& spec : {WreathSpec({3, 3}), WreathSpec({5, 5})}) {
    std::map<Family, Group> g;
    for (Family f : kDepth2Families) g.emplace(f, build_named(f, spec));
    for (const auto& [a, b] : expected_inclusions()) {
      EXPECT_TRUE(g.at(b).contains(g.at(a))) << family_name(a) << " in " << family_name(b);
    }
    for (Family a : kDepth2Families) {
      for (Family b : kDepth2Families) {
        if (a != b && g.at(a).contains(g.at(b)) && g.at(b).contains(g.at(a))) {
          ADD_FAILURE() << family_name(a) << " equals " << family_name(b);
        }
      }
    }
  }
}

TEST(VerifyCatalog, SnSmAtThreeThree) {
  const auto r = verify_catalog(Ambient::SnSm, WreathSpec({3, 3}));
  EXPECT_EQ(status_of(r, "lattice/count"), Status::pass);
  EXPECT_EQ(status_of(r, "lattice/unlisted"), Status::pass);
  EXPECT_EQ(status_of(r, "lattice/normal-members-found"), Status::pass);
  EXPECT_EQ(status_of(r, "listed/distinct-count"), Status::pass);
  EXPECT_EQ(status_of(r, "derived/equals-AnAt"), Status::pass);
  EXPECT_EQ(status_of(r, "containment/antisymmetric"), Status::pass);
  for (const auto& c : r.checks()) {
    if (c.name.rfind("member/", 0) == 0) {
      EXPECT_EQ(c.status, Status::pass) << c.name;
    }
  }
  // EA and Tt lack the transposition pairs of e wr A~m.
  EXPECT_EQ(status_of(r, "monolith-containment"), Status::discrepancy);
  EXPECT_FALSE(r.any(Status::fail));
  EXPECT_EQ(r.exit_code(), 3);
}

TEST(VerifyCatalog, SnSmAtFiveFiveIsChainScale) {
  const auto r = verify_catalog(Ambient::SnSm, WreathSpec({5, 5}));
  std::size_t members = 0;
  for (const auto& c : r.checks()) {
    if (c.name.rfind("member/", 0) == 0 && c.name.find("/normal") != std::string::npos) {
      ++members;
      EXPECT_EQ(c.status, Status::pass) << c.name;
    }
    if (c.name.rfind("member/", 0) == 0 && c.name.find("/order") != std::string::npos) {
      EXPECT_EQ(c.status, Status::pass) << c.name;
    }
  }
  EXPECT_EQ(members, 8u);
  EXPECT_TRUE(r.details()["lattice_orders"].is_string());
  EXPECT_FALSE(r.any(Status::fail));
}

TEST(VerifyCatalog, AlternatingTopAtThreeThree) {
  const auto r = verify_catalog(Ambient::AnSm, WreathSpec({3, 3}));
  EXPECT_EQ(status_of(r, "ambient/order"), Status::pass);
  EXPECT_EQ(status_of(r, "member/item5-AnE/normal"), Status::discrepancy);
  EXPECT_EQ(status_of(r, "lattice/unlisted"), Status::discrepancy);
  EXPECT_FALSE(r.any(Status::fail));
  // oracle: the lattice size of A3 wr S3 by class unions
  const Group w = build_wreath(parse_wreath_type("A3*S3"));
  oracle::ElementSet all;
  for (std::uint64_t i = 0; i < 648; ++i) all.insert(w.element_at(i));
  const auto orders = oracle::normal_subgroup_orders(all);
  const auto checks = r.checks();
  EXPECT_EQ(find_check(checks, "lattice/count")->observed, std::to_string(orders.size()));
}

TEST(VerifyCatalog, DuplicateItemInEqualDegreeList) {
  const auto r = verify_catalog(Ambient::AnSn, WreathSpec({3, 3}));
  const auto checks = r.checks();
  EXPECT_EQ(find_check(checks, "listed/duplicates")->observed, "item4-EAt=item2-EAt");
  EXPECT_EQ(find_check(checks, "listed/distinct-count")->observed, "6");
}

TEST(VerifyCatalog, SymmetricTopAlternatingBase) {
  const auto r = verify_catalog(Ambient::SnAn, WreathSpec({3, 3}));
  EXPECT_EQ(status_of(r, "member/item1-EA/normal"), Status::pass);
  EXPECT_EQ(status_of(r, "member/item2-AnA/normal"), Status::pass);
  const Group w = build_wreath(parse_wreath_type("S3*A3"));
  oracle::ElementSet all;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(w.order()); ++i) all.insert(w.element_at(i));
  const auto orders = oracle::normal_subgroup_orders(all);
  const auto checks = r.checks();
  EXPECT_EQ(find_check(checks, "lattice/count")->observed, std::to_string(orders.size()));
}

TEST(Triple, CandidateListShape) {
  const auto c = triple_candidates(3, true);
  std::map<std::string, std::size_t> per_type;
  for (const auto& x : c) ++per_type[x.type];
  EXPECT_EQ(per_type["T023"], 6u);
  EXPECT_EQ(per_type["T023+"], 11u);
  EXPECT_EQ(per_type["T003"], 2u);
  EXPECT_EQ(per_type["T123"], 30u);
  EXPECT_EQ(per_type["alt"], 1u);
}

TEST(Triple, NormalityAgreesWithExplicitConjugates) {
  const WreathSpec spec({3, 3, 3});
  const Group w = build_wreath(spec);
  const auto candidates = triple_candidates(3, true);
  Rng rng(51);
  for (const auto& c : candidates) {
    const Group g = group_of(spec, c.generators);
    const bool normal = is_normal(w, g);
    if (normal) {
      // random conjugates of random members stay inside
      for (int i = 0; i < 20; ++i) {
        ASSERT_TRUE(g.contains(conjugate(g.random_element(rng), w.random_element(rng)))) << c.name;
      }
    } else {
      // an explicit generator conjugate leaves the subgroup
      bool escaped = false;
      for (const auto& h : g.generators()) {
        for (const auto& x : w.generators()) escaped = escaped || !g.contains(conjugate(h, x));
      }
      EXPECT_TRUE(escaped) << c.name;
    }
  }
}

TEST(Triple, NonNormalCandidatesBreakTheBlockPredicate) {
  // [K] wr A~n with a nontrivial top in K: conjugating a lifted top 3-cycle x
  // by a level-3 element h with one odd entry leaves x^-1 x^h with an odd
  // entry in two different blocks, outside the block-even bottom level.
  const WreathSpec spec({3, 3, 3});
  const Tableau h = single_entry(spec, 3, 0, transposition(3, 0, 1));
  const Tableau x = single_entry(spec, 1, 0, from_cycles(3, {{0, 1, 2}}));
  const Tableau c = t_multiply(t_inverse(x), t_conjugate(x, h));
  EXPECT_GE(depth(c), 3u);
  EXPECT_FALSE(blocks_even(c, 3, 3));
  EXPECT_TRUE(level_product_even(c, 3));
  for (const char* name : {"[AnAt] wr A~n", "[SnAt] wr A~n"}) {
    for (const auto& cand : triple_candidates(3, false)) {
      if (cand.name != name) continue;
      const Group g = group_of(spec, cand.generators);
      EXPECT_TRUE(g.contains(tableau_to_perm(x))) << name;
      EXPECT_FALSE(g.contains(tableau_to_perm(t_conjugate(x, h)))) << name;
    }
  }

  const auto candidates = triple_candidates(3, false);
  const Group w = build_wreath(spec);
  std::vector<std::string> not_normal;
  for (const auto& cand : candidates) {
    if (!is_normal(w, group_of(spec, cand.generators))) not_normal.push_back(cand.name);
  }
  std::sort(not_normal.begin(), not_normal.end());
  const std::vector<std::string> expected = {"[AnAt] wr A~n", "[AnS] wr A~n", "[DiagKernel] wr A~n",
                                             "[Full] wr A~n", "[SnAt] wr A~n"};
  EXPECT_EQ(not_normal, expected);
}

TEST(Triple, ReportForThree) {
  const auto r = triple_catalog_verify(3);
  EXPECT_EQ(status_of(r, "a-n2/normal"), Status::pass);
  EXPECT_EQ(status_of(r, "normal/T023/E wr A~n wr A~n"), Status::pass);
  EXPECT_EQ(status_of(r, "count/T003"), Status::pass);
  EXPECT_EQ(status_of(r, "count/T123"), Status::pass);
  EXPECT_EQ(status_of(r, "count/T023"), Status::discrepancy);
  EXPECT_EQ(status_of(r, "count/distinct"), Status::discrepancy);
  EXPECT_FALSE(r.any(Status::fail));
  const auto checks = r.checks();
  EXPECT_EQ(find_check(checks, "count/listed")->observed, "49");
}

TEST(Monolith, ExactSmallSpecs) {
  const auto r32 = monolith_claim_check(WreathSpec({3, 2}), {});
  const auto c32 = r32.checks();
  EXPECT_EQ(find_check(c32, "monolith")->observed, "not monolithic");
  EXPECT_EQ(find_check(c32, "minimal-normal-subgroups")->observed, "2 (orders 2, 4)");

  const auto r33 = monolith_claim_check(WreathSpec({3, 3}), {});
  const auto c33 = r33.checks();
  EXPECT_EQ(find_check(c33, "monolith")->observed, "monolith of order 27, not e wr A~m");
  EXPECT_EQ(r33.exit_code(), 0);
}

TEST(Monolith, SamplingIsDeterministicAndRecordsCounterexamples) {
  MonolithOptions opt;
  opt.sampling = true;
  opt.samples = 30;
  const auto a = monolith_claim_check(WreathSpec({3, 6}), opt);
  const auto b = monolith_claim_check(WreathSpec({3, 6}), opt);
  EXPECT_EQ(a.details(), b.details());
  // every recorded counterexample really has a closure missing a generator
  const Group w = build_wreath(WreathSpec({3, 6}));
  const Group eat = build_named(Family::EAt, WreathSpec({3, 6}));
  for (const auto& ce : a.details()["counterexamples"]) {
    const Permutation x = parse_permutation(ce["permutation"].get<std::string>(), 18);
    EXPECT_FALSE(normal_closure(w, {x}).contains(eat));
    EXPECT_EQ(to_string(perm_to_tableau(x, WreathSpec({3, 6}))), ce["tableau"].get<std::string>());
  }
}

TEST(Monolith, BaseEvenGroupIsMinimalNormalAtThreeSix) {
  // e wr A_6 is normal and the closure of any of its nontrivial elements is
  // all of it, so it lies below every nontrivial normal subgroup containing it.
  const WreathSpec spec({3, 6});
  const Group w = build_wreath(spec);
  const Group ea = build_named(Family::EA, spec);
  EXPECT_TRUE(is_normal(w, ea));
  Rng rng(52);
  for (int i = 0; i < 10; ++i) {
    Permutation x = ea.random_element(rng);
    if (x.is_identity()) continue;
    EXPECT_TRUE(same_group(normal_closure(w, {x}), ea));
  }
  EXPECT_FALSE(ea.contains(build_named(Family::EAt, spec)));
}

TEST(Witness, FiveFiveEveryVertex) {
  const WreathSpec spec({5, 5});
  for (std::size_t v = 0; v < 5; ++v) {
    const auto w = commutator_witness(spec, 2, v, 7);
    EXPECT_EQ(w.report.exit_code(), 0) << w.report.to_text();
    for (std::size_t l = 1; l <= 2; ++l) {
      for (std::size_t u = 0; u < spec.vertices(l); ++u) {
        const Permutation& p = w.element.entry(l, u);
        if (l == 2 && u == v) {
          EXPECT_FALSE(p.is_identity());
          EXPECT_TRUE(is_even(p));
        } else {
          EXPECT_TRUE(p.is_identity());
        }
      }
    }
    // the witness equals [[y, x], g] recomputed from its parts
    EXPECT_EQ(w.element, t_commutator(t_commutator(w.y, w.x), w.g));
  }
}

TEST(Witness, RootLevelAtThreeThree) {
  const auto w = commutator_witness(WreathSpec({3, 3}), 1, 0, 0);
  EXPECT_TRUE(is_even(w.element.entry(1, 0)));
  EXPECT_THROW(commutator_witness(WreathSpec({2, 2}), 1, 0, 0), Error);
  EXPECT_THROW(commutator_witness(WreathSpec({3, 3}), 2, 3, 0), Error);
}

TEST(Normalizer, ThreeThree) {
  const auto r = normalizer_check(WreathSpec({3, 3}));
  EXPECT_EQ(status_of(r, "normalizer/closed"), Status::pass);
  EXPECT_EQ(status_of(r, "normalizer/contains-AnA"), Status::pass);
  EXPECT_EQ(status_of(r, "AnA/normal-in-SnAm"), Status::pass);
  EXPECT_EQ(r.details()["normalizer"]["order"], "324");
  EXPECT_EQ(status_of(r, "normalizer/equals-SnAt"), Status::discrepancy);
  EXPECT_TRUE(r.details()["normalizer_equals_top_any_base_uniform_parity"].get<bool>());
}
