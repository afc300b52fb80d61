#include <gtest/gtest.h>

#include <memory>

#include "tgx/efficient.hpp"
#include "tgx/harness.hpp"
#include "tgx/simnet.hpp"

using namespace tgx;

namespace {

// RING(3) members in order: 0 = 2-cycle {0,1}, 1 = 0->1->2->0,
// 2 = 0->2->1->0, 3 = 2-cycle {0,2}, 4 = 2-cycle {1,2}.
std::shared_ptr<const GraphFamily> ring3() {
  return std::make_shared<const GraphFamily>(generate_family(FamilyName::Ring, 3));
}

template <typename T>
std::vector<T> only(const Actions& actions) {
  std::vector<T> out;
  for (const auto& a : actions) {
    if (const auto* t = std::get_if<T>(&a)) out.push_back(*t);
  }
  return out;
}

std::vector<ProcessId> new_targets(const Actions& actions) {
  std::vector<ProcessId> out;
  for (const auto& s : only<SendTo>(actions)) {
    if (std::holds_alternative<Proposal>(s.msg)) out.push_back(s.to);
  }
  return out;
}

EffState init(ProcessId self, Actions* out = nullptr) {
  Actions scratch;
  return eff_init(self, 3, ring3(), out ? *out : scratch);
}

}  // namespace

TEST(EffInit, FamilyLayout) {
  const auto f = ring3();
  ASSERT_EQ(f->size(), 5u);
  EXPECT_EQ((*f)[1], make_graph({0, 1, 2}, {{0, 1}, {1, 2}, {2, 0}}));
  EXPECT_EQ((*f)[4], make_graph({1, 2}, {{1, 2}, {2, 1}}));
}

TEST(EffInit, RootProposesLeastRootedMember) {
  Actions out;
  const EffState s = init(0, &out);
  EXPECT_EQ(s.rooted, (std::vector<MemberIndex>{0, 1, 2, 3}));
  EXPECT_EQ(s.me, 0u);
  EXPECT_TRUE(s.local);
  EXPECT_EQ(s.output, 0u);
  // Direct NEW to the non-member 2 and NEW along the edge (0,1).
  EXPECT_EQ(new_targets(out), (std::vector<ProcessId>{2, 1}));
  const auto timers = only<ArmTimer>(out);
  ASSERT_EQ(timers.size(), 1u);
  EXPECT_EQ(timers[0].peer, 1u);
  EXPECT_EQ(timers[0].after, 3);
  for (MemberIndex x : s.rooted) EXPECT_EQ(s.dmember[x], 3);
}

TEST(EffInit, ProcessWithoutRootedMemberStaysQuiet) {
  Actions out;
  const EffState s = init(2, &out);
  EXPECT_TRUE(s.rooted.empty());
  EXPECT_FALSE(s.local);
  EXPECT_FALSE(s.output);
  EXPECT_TRUE(out.empty());
  for (const auto& h : s.heard) EXPECT_EQ(h, (Epoch{-1, -1}));
}

TEST(EffInit, RootlessMemberRejected) {
  const auto f = std::make_shared<const GraphFamily>(make_custom_family(2, {make_graph({0, 1}, {})}));
  Actions out;
  EXPECT_THROW(eff_init(0, 2, f, out), ConfigError);
}

TEST(EffUpdate, GiveUpWhenOtherCandidateIsBetter) {
  EffState s = init(1);
  ASSERT_EQ(s.me, 4u);
  ASSERT_TRUE(s.local);
  const Actions out = eff_on_new(s, Candidate{1, 0, 0, 3});
  const auto casts = only<Broadcast>(out);
  ASSERT_EQ(casts.size(), 1u);
  EXPECT_EQ(casts[0].msg, Message(CandidateAccusation{Candidate{4, 0, 0, 3}}));
  EXPECT_EQ(s.prop[4], 1);
  EXPECT_FALSE(s.local);
  EXPECT_EQ(s.output, 1u);
  EXPECT_EQ(s.heard[1], (Epoch{0, 0}));
}

TEST(EffUpdate, NoOpWhenBothBranchesDisabled) {
  EffState s = init(0);
  const EffState before = s;
  Actions out;
  eff_update(s, out);
  EXPECT_TRUE(out.empty());
  EXPECT_EQ(s.me, before.me);
  EXPECT_EQ(s.output, before.output);
}

TEST(EffPeriodic, AliveOnlyAlongCandidateEdges) {
  EffState s = init(1);
  eff_on_new(s, Candidate{1, 0, 0, 3});
  const auto sends = only<SendTo>(eff_periodic(s));
  ASSERT_EQ(sends.size(), 1u);
  EXPECT_EQ(sends[0].to, 2u);
  EXPECT_EQ(sends[0].msg, Message(Alive{}));
}

TEST(EffPeriodic, SilentWithoutCandidatesOrMembership) {
  EffState s = init(2);
  EXPECT_TRUE(eff_periodic(s).empty());
  s.other_cand[0] = Candidate{0, 0, 0, 3};  // {0,1} does not contain 2
  EXPECT_TRUE(eff_periodic(s).empty());
}

TEST(EffExpire, BlamesCandidatesWithTheLink) {
  EffState s = init(1);
  eff_on_new(s, Candidate{1, 0, 0, 3});
  auto casts = only<Broadcast>(eff_on_expire(s, 0));
  ASSERT_EQ(casts.size(), 1u);
  EXPECT_EQ(casts[0].msg, Message(CandidateAccusation{Candidate{1, 0, 0, 3}}));

  EffState t = init(1);
  eff_on_new(t, Candidate{2, 0, 0, 3});
  EXPECT_TRUE(eff_on_expire(t, 0).empty());
  // Both the stored 0->2->1->0 and the own {1,2} contain (2,1).
  EXPECT_EQ(only<Broadcast>(eff_on_expire(t, 2)).size(), 2u);
}

TEST(EffNew, NonMemberBlamesWithoutStoring) {
  EffState s = init(2);
  const Actions out = eff_on_new(s, Candidate{0, 0, 0, 3});
  const auto casts = only<Broadcast>(out);
  ASSERT_EQ(casts.size(), 1u);
  EXPECT_EQ(casts[0].msg, Message(CandidateAccusation{Candidate{0, 0, 0, 3}}));
  EXPECT_TRUE(s.other_cand.empty());
}

TEST(EffNew, StaleEpochIgnored) {
  EffState s = init(2);
  eff_on_new(s, Candidate{1, 0, 0, 3});
  eff_on_deliver_acc(s, Candidate{1, 0, 0, 3});
  EXPECT_TRUE(s.other_cand.empty());
  EXPECT_TRUE(eff_on_new(s, Candidate{1, 0, 0, 3}).empty());
  EXPECT_TRUE(s.other_cand.empty());
  eff_on_new(s, Candidate{1, 1, 0, 4});
  EXPECT_EQ(s.other_cand.at(1), (Candidate{1, 1, 0, 4}));
}

TEST(EffNew, NewerEpochReplacesAndRelays) {
  EffState s = init(2);
  eff_on_new(s, Candidate{2, 0, 0, 3});
  const Actions out = eff_on_new(s, Candidate{2, 1, 0, 4});
  EXPECT_EQ(s.other_cand.size(), 1u);
  EXPECT_EQ(s.other_cand.at(2), (Candidate{2, 1, 0, 4}));
  // Relay along (2,1) only.
  EXPECT_EQ(new_targets(out), (std::vector<ProcessId>{1}));
  EXPECT_EQ(s.delta_est[0], 4);
}

TEST(EffNew, OwnMemberNeverStored) {
  EffState s = init(1);
  EXPECT_TRUE(eff_on_new(s, Candidate{4, 7, 7, 9}).empty());
  EXPECT_TRUE(s.other_cand.empty());
}

TEST(EffAcc, RootCountsMatchingAccusation) {
  EffState s = init(0);
  const Actions out = eff_on_deliver_acc(s, Candidate{0, 0, 0, 3});
  EXPECT_EQ(s.acc[0], 1);
  EXPECT_EQ(s.dmember[0], 4);
  // Proposes the next rooted member right away.
  EXPECT_EQ(s.me, 1u);
  EXPECT_TRUE(s.local);
  EXPECT_FALSE(new_targets(out).empty());
}

TEST(EffAcc, RootIgnoresStaleAccusation) {
  EffState s = init(0);
  eff_on_deliver_acc(s, Candidate{0, 0, 5, 3});
  eff_on_deliver_acc(s, Candidate{1, 0, 0, 3});  // 1 is not me yet
  EXPECT_EQ(s.acc[0], 0);
  EXPECT_EQ(s.acc[1], 0);
  EXPECT_EQ(s.me, 0u);
  EXPECT_TRUE(s.local);
}

TEST(EffAcc, NonRootRemovesOnlyMatchingTuple) {
  EffState s = init(2);
  eff_on_new(s, Candidate{1, 0, 0, 3});
  eff_on_new(s, Candidate{4, 0, 0, 3});
  ASSERT_EQ(s.other_cand.size(), 2u);
  eff_on_deliver_acc(s, Candidate{1, 0, 0, 9});  // d differs: not the stored tuple
  EXPECT_EQ(s.other_cand.size(), 2u);
  eff_on_deliver_acc(s, Candidate{1, 0, 0, 3});
  ASSERT_EQ(s.other_cand.size(), 1u);
  EXPECT_TRUE(s.other_cand.contains(4));
  EXPECT_EQ(s.output, 4u);
}

TEST(EffRun, CandidatesCoherentAfterEveryTick) {
  const Scenario sc = random_suite_scenario(FamilyName::Ring, 4, 6, 2000);
  Simulation sim(sc, efficient_factory(), "efficient");
  for (Tick t = 0; t < sc.horizon; ++t) {
    sim.advance();
    for (ProcessId p = 0; p < sc.n; ++p) {
      const auto& st = static_cast<const EfficientProtocol&>(sim.protocol(p)).state();
      std::optional<std::pair<Counter, MemberIndex>> best;
      for (const auto& c : st.candidates()) {
        if (!best || std::pair{c.acc, c.member} < *best) best = std::pair{c.acc, c.member};
      }
      ASSERT_EQ(st.output, best ? std::optional<MemberIndex>(best->second) : std::nullopt) << "tick " << sim.now();
    }
  }
}

TEST(EffRun, StabilizedStateShape) {
  for (FamilyName f : {FamilyName::Ring, FamilyName::Tree, FamilyName::Star}) {
    const Scenario sc = random_suite_scenario(f, 4, 1, 10000);
    Simulation sim(sc, efficient_factory(), "efficient");
    sim.run(sc.horizon);
    const auto report = check_properties(sim.trace(), sc);
    ASSERT_TRUE(report.all_pass()) << report_to_text(report);
    const auto& fam = *sc.family;
    const MemberIndex g = *fam.index_of(*report.final_graph);
    const ProcessId root = *root_of(*report.final_graph);
    for (ProcessId p : sc.correct()) {
      const auto& st = static_cast<const EfficientProtocol&>(sim.protocol(p)).state();
      if (p == root) {
        EXPECT_TRUE(st.local);
        EXPECT_EQ(st.me, g);
        EXPECT_TRUE(st.other_cand.empty());
      } else {
        EXPECT_FALSE(st.local);
        ASSERT_EQ(st.other_cand.size(), 1u) << to_string(f) << " process " << p;
        EXPECT_EQ(st.other_cand.begin()->first, g);
      }
      // Candidates of crashed roots are gone.
      for (const auto& [x, c] : st.other_cand) EXPECT_TRUE(sc.is_correct(*root_of(fam[x])));
    }
  }
}
