#include "causalcheck/causality.hpp"

#include <gtest/gtest.h>

#include "causalcheck/error.hpp"
#include "support/samples.hpp"

namespace causalcheck {
namespace {

using testing::samples;
using testing::HbReference;
using testing::make_history;

std::size_t at(const History& h, const char* id) { return *h.find(id); }

TEST(Causality, CoOfSampleBHasFourPairs) {
  const History h = samples()[1].history;
  const Relation co = compute_co(h);
  EXPECT_EQ(co.pair_count(), 4u);
  EXPECT_TRUE(co.contains(at(h, "id0"), at(h, "id1")));
  EXPECT_TRUE(co.contains(at(h, "id2"), at(h, "id3")));
  EXPECT_TRUE(co.contains(at(h, "id2"), at(h, "id1")));
  EXPECT_TRUE(co.contains(at(h, "id0"), at(h, "id3")));
}

TEST(Causality, CoOfSampleEOrdersTheWrites) {
  const History h = samples()[4].history;
  const Relation co = compute_co(h);
  EXPECT_TRUE(co.contains(at(h, "id0"), at(h, "id3")));  // w(x,1) before w(x,2)
  EXPECT_TRUE(co.contains(at(h, "id3"), at(h, "id5")));  // w(x,2) before r(x,1)
  EXPECT_FALSE(co.has_reflexive_pair());
}

TEST(Causality, CoWithCycleIsReflexive) {
  const History h = make_history({{"r(x,1)", "w(y,1)"}, {"r(y,1)", "w(x,1)"}});
  EXPECT_TRUE(compute_co(h).has_reflexive_pair());
}

TEST(Causality, CfOfSampleBIsCyclic) {
  const History h = samples()[1].history;
  const Relation cf = compute_cf(h, compute_co(h));
  EXPECT_TRUE(cf.contains(at(h, "id0"), at(h, "id2")));
  EXPECT_TRUE(cf.contains(at(h, "id2"), at(h, "id0")));
  EXPECT_TRUE(cf.has_reflexive_pair());
}

TEST(Causality, CfOfSampleAIsAcyclic) {
  const History h = samples()[0].history;
  const Relation co = compute_co(h);
  EXPECT_FALSE(transitive_closure(compute_cf(h, co) | co).has_reflexive_pair());
}

TEST(Causality, CfOfSampleAOrdersOnlyOneWay) {
  const History h = samples()[0].history;
  const Relation cf = compute_cf(h, compute_co(h));
  EXPECT_TRUE(cf.contains(at(h, "id1"), at(h, "id3")));
  EXPECT_FALSE(cf.contains(at(h, "id3"), at(h, "id1")));
}

TEST(Causality, HbOfSampleBAtLastRead) {
  const History h = samples()[1].history;
  const HbFamily hb = compute_hb(h, compute_co(h), "id3");
  EXPECT_TRUE(hb.relation.contains(at(h, "id2"), at(h, "id0")));
  EXPECT_FALSE(hb.relation.contains(at(h, "id0"), at(h, "id2")));
  EXPECT_FALSE(hb.relation.has_reflexive_pair());
}

TEST(Causality, HbOfSampleARelatesWriteToInitRead) {
  const History h = samples()[0].history;
  const HbFamily hb = compute_hb(h, compute_co(h), "id6");
  EXPECT_TRUE(hb.relation.contains(at(h, "id1"), at(h, "id3")));  // w(x,1) before w(x,2)
  EXPECT_TRUE(hb.relation.contains(at(h, "id0"), at(h, "id4")));  // w(z,1) before r(z,0)
}

TEST(Causality, HbBaseIsCoRestrictedToPast) {
  const History h = samples()[0].history;
  const Relation co = compute_co(h);
  const Relation base = compute_hb_base(h, co, at(h, "id4"));
  // past(r(z,0)) = {w(x,2)}; nothing of p1 is visible yet.
  EXPECT_EQ(base.pair_count(), 1u);
  EXPECT_TRUE(base.contains(at(h, "id3"), at(h, "id4")));
}

TEST(Causality, HbUnknownAnchorThrows) {
  const History h = samples()[1].history;
  EXPECT_THROW(compute_hb(h, compute_co(h), "nope"), Error);
}

TEST(Causality, CoMatchesReferenceClosure) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const History h = testing::sample_history(seed, 2 + seed % 4, 4 + seed % 30, 1 + seed % 3);
    const HbReference ref(h);
    const Relation co = compute_co(h);
    for (std::size_t a = 0; a < h.size(); ++a) {
      for (std::size_t b = 0; b < h.size(); ++b) {
        ASSERT_EQ(co.contains(a, b), ref.co()[a][b]) << "seed " << seed;
      }
    }
  }
}

TEST(Causality, HbMatchesChaoticIteration) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const History h = testing::sample_history(seed, 2 + seed % 4, 4 + seed % 24, 1 + seed % 3);
    const HbReference ref(h);
    const Relation co = compute_co(h);
    for (std::size_t o = 0; o < h.size(); ++o) {
      const auto expected = ref.hb(o);
      const Relation got = compute_hb(h, co, o).relation;
      for (std::size_t a = 0; a < h.size(); ++a) {
        for (std::size_t b = 0; b < h.size(); ++b) {
          ASSERT_EQ(got.contains(a, b), expected[a][b])
              << "seed " << seed << " anchor " << o << " pair " << a << "," << b;
        }
      }
    }
  }
}

TEST(Causality, HbIsMonotoneAlongPo) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const History h = testing::sample_history(seed, 2 + seed % 3, 6 + seed % 40, 2);
    const Relation co = compute_co(h);
    for (const auto& proc : h.processes()) {
      for (std::size_t i = 0; i + 1 < proc.size(); ++i) {
        const Relation a = compute_hb(h, co, proc[i]).relation;
        const Relation b = compute_hb(h, co, proc[i + 1]).relation;
        ASSERT_TRUE(a.is_subset_of(b)) << "seed " << seed;
      }
    }
  }
}

}  // namespace
}  // namespace causalcheck
