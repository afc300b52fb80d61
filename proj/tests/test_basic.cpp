#include <gtest/gtest.h>

#include <memory>

#include "tgx/basic.hpp"
#include "tgx/harness.hpp"
#include "tgx/simnet.hpp"

using namespace tgx;

namespace {

std::shared_ptr<const GraphFamily> family(FamilyName f, std::size_t n) {
  return std::make_shared<const GraphFamily>(generate_family(f, n));
}

std::shared_ptr<const GraphFamily> custom(std::size_t n, std::vector<TimelinessGraph> members) {
  return std::make_shared<const GraphFamily>(make_custom_family(n, std::move(members)));
}

template <typename T>
std::vector<T> only(const Actions& actions) {
  std::vector<T> out;
  for (const auto& a : actions) {
    if (const auto* t = std::get_if<T>(&a)) out.push_back(*t);
  }
  return out;
}

}  // namespace

TEST(BasicInit, RingSelectsLeastMember) {
  const auto f = family(FamilyName::Ring, 3);
  const BasicState s = basic_init(0, 3, f);
  EXPECT_EQ(s.output, 0u);
  for (Counter c : s.acc) EXPECT_EQ(c, 0);
  for (Tick d : s.delta_est) EXPECT_EQ(d, 1);
}

TEST(BasicInit, SingleMemberAndTieBreak) {
  const auto m = make_graph({0, 1}, {{0, 1}});
  EXPECT_EQ(basic_init(1, 2, custom(2, {m})).output, 0u);
  const auto a = make_graph({0}, {});
  const auto b = make_graph({0, 1}, {});
  const BasicState s = basic_init(0, 2, custom(2, {b, a}));
  EXPECT_EQ(s.family->members[*s.output], a);
}

TEST(BasicInit, EmptyFamilyRejected) {
  EXPECT_THROW(basic_init(0, 2, custom(2, {})), ConfigError);
}

TEST(BasicStart, ArmsEveryPeerTimerToOne) {
  const BasicState s = basic_init(1, 3, family(FamilyName::SC, 3));
  const auto timers = only<ArmTimer>(basic_start(s));
  ASSERT_EQ(timers.size(), 2u);
  EXPECT_EQ(timers[0].peer, 0u);
  EXPECT_EQ(timers[1].peer, 2u);
  for (const auto& t : timers) EXPECT_EQ(t.after, 1);
}

TEST(BasicPeriodic, AliveToOthersPlusOneBroadcast) {
  const BasicState s = basic_init(0, 3, family(FamilyName::SC, 3));
  const Actions out = basic_periodic(s);
  const auto sends = only<SendTo>(out);
  ASSERT_EQ(sends.size(), 2u);
  EXPECT_EQ(sends[0].to, 1u);
  EXPECT_EQ(sends[1].to, 2u);
  const auto casts = only<Broadcast>(out);
  ASSERT_EQ(casts.size(), 1u);
  EXPECT_EQ(casts[0].msg, Message(LinkAccusation{std::nullopt, 0}));
}

TEST(BasicAcc, NodeFormHitsMembersWithoutAccuser) {
  const auto f = family(FamilyName::Async, 2);  // {0}, {0,1}, {1}
  BasicState s = basic_init(1, 2, f);
  basic_on_deliver_acc(s, LinkAccusation{std::nullopt, 0});
  EXPECT_EQ(s.acc, (std::vector<Counter>{0, 0, 1}));
  const auto everyone = custom(2, {make_graph({0, 1}, {})});
  BasicState t = basic_init(0, 2, everyone);
  basic_on_deliver_acc(t, LinkAccusation{std::nullopt, 0});
  EXPECT_EQ(t.acc, (std::vector<Counter>{0}));
}

TEST(BasicAcc, LinkFormHitsMembersWithLink) {
  const auto m1 = make_graph({0, 1, 2}, {{1, 2}});
  const auto m2 = make_graph({0, 1, 2}, {{2, 1}});
  BasicState s = basic_init(0, 3, custom(3, {m1, m2}));
  basic_on_deliver_acc(s, LinkAccusation{1, 2});
  EXPECT_EQ(s.acc[*s.family->index_of(m1)], 1);
  EXPECT_EQ(s.acc[*s.family->index_of(m2)], 0);
  EXPECT_EQ(s.family->members[*s.output], m2);
}

TEST(BasicAcc, NodeFormOnAbsentNode) {
  const auto f = family(FamilyName::Async, 4);
  BasicState s = basic_init(0, 4, f);
  basic_on_deliver_acc(s, LinkAccusation{std::nullopt, 3});
  for (MemberIndex x = 0; x < f->size(); ++x) EXPECT_EQ(s.acc[x], (*f)[x].has_node(3) ? 0 : 1);
}

TEST(BasicAcc, OutputChangesOnlyWhenMinimumMoves) {
  const auto a = make_graph({0, 1}, {{0, 1}});
  const auto b = make_graph({0, 1}, {{1, 0}});
  BasicState s = basic_init(0, 2, custom(2, {a, b}));
  basic_on_deliver_acc(s, LinkAccusation{1, 0});  // hits b only
  EXPECT_EQ(s.family->members[*s.output], a);
  basic_on_deliver_acc(s, LinkAccusation{0, 1});  // a catches up, tie -> a
  EXPECT_EQ(s.family->members[*s.output], a);
  basic_on_deliver_acc(s, LinkAccusation{0, 1});
  EXPECT_EQ(s.family->members[*s.output], b);
}

TEST(BasicAlive, RearmsWithCurrentEstimate) {
  BasicState s = basic_init(0, 3, family(FamilyName::SC, 3));
  s.delta_est[2] = 4;
  const auto timers = only<ArmTimer>(basic_on_alive(s, 2));
  ASSERT_EQ(timers.size(), 1u);
  EXPECT_EQ(timers[0].peer, 2u);
  EXPECT_EQ(timers[0].after, 4);
}

TEST(BasicExpire, AccusesAndAdapts) {
  BasicState s = basic_init(0, 3, family(FamilyName::SC, 3));
  const Actions out = basic_on_expire(s, 2);
  const auto casts = only<Broadcast>(out);
  ASSERT_EQ(casts.size(), 1u);
  EXPECT_EQ(casts[0].msg, Message(LinkAccusation{2, 0}));
  EXPECT_EQ(s.delta_est[2], 2);
  EXPECT_EQ(only<ArmTimer>(out)[0].after, 2);
  for (int k = 0; k < 5; ++k) basic_on_expire(s, 2);
  EXPECT_EQ(s.delta_est[2], 7);
}

TEST(BasicExpire, TimelyLinkStopsExpiring) {
  Scenario sc;
  sc.n = 2;
  sc.family = family(FamilyName::SC, 2);
  sc.truth = make_graph({0, 1}, {{0, 1}, {1, 0}});
  sc.horizon = 10 * sc.k_period * 20;
  sc.seed = 4;
  const Trace t = simulate(sc, "basic");
  Tick last = 0;
  for (const auto& e : t.events) {
    if (e.kind == EventKind::TimerExpire) last = e.tick;
  }
  EXPECT_LT(last, sc.horizon / 4);
}

TEST(BasicStrawman, TrustsOnlyUnsuspectedPeers) {
  const auto f = family(FamilyName::Tree, 3);
  BasicState s = basic_init(0, 3, f, true);
  EXPECT_EQ(s.family->members[*s.output].nodes(), (std::vector<ProcessId>{0, 1, 2}));
  basic_on_expire(s, 2);
  EXPECT_EQ(s.family->members[*s.output].nodes(), (std::vector<ProcessId>{0, 1}));
  basic_on_alive(s, 2);
  EXPECT_EQ(s.family->members[*s.output].nodes(), (std::vector<ProcessId>{0, 1, 2}));
}

TEST(BasicRun, CountersMonotoneAndAgreedAtHorizon) {
  const Scenario sc = random_suite_scenario(FamilyName::Ring, 4, 2, 3000);
  Simulation sim(sc, basic_factory(), "basic");
  sim.run(sc.horizon);
  EXPECT_EQ(sim.trace().audit->regressions, 0u);
  std::optional<MemberIndex> g;
  std::optional<Counter> acc;
  for (ProcessId p : sc.correct()) {
    const auto& st = static_cast<const BasicProtocol&>(sim.protocol(p)).state();
    if (!g) {
      g = st.output;
    } else {
      EXPECT_EQ(st.output, g);
    }
    for (Tick d : st.delta_est) EXPECT_GE(d, 1);
    if (!acc) acc = st.acc[*g];
  }
  // Counter of the extracted member settles at the same value everywhere.
  for (ProcessId p : sc.correct()) {
    EXPECT_EQ(static_cast<const BasicProtocol&>(sim.protocol(p)).state().acc[*g], *acc);
  }
}
