#include <gtest/gtest.h>

#include <array>

#include "oracles.hpp"
#include "unienv/error.hpp"
#include "unienv/grid/grid.hpp"

using namespace unienv;
using namespace unienv::grid;

TEST(GridTransition, MatchesBruteForceTable) {
  const auto cases = oracle::transition_table();
  ASSERT_GT(cases.size(), 1000u);
  int mismatches = 0;
  for (const auto& tc : cases) {
    GridWorld w = tc.before;
    const ActionEffect eff = apply_action(w, tc.action);
    if (!(w == tc.expected) || eff.entered_lava != tc.expect_lava) {
      ++mismatches;
      ADD_FAILURE() << tc.label;
      if (mismatches > 10) break;
    }
  }
  EXPECT_EQ(mismatches, 0);
}

TEST(GridTransition, CopyingFormLeavesInputUntouched) {
  GridWorld w{Grid(3, 3), {}};
  w.agent.pos = {1, 1};
  const GridWorld before = w;
  const GridWorld after = transition(w, Action::Forward);
  EXPECT_EQ(w, before);
  EXPECT_EQ(after.agent.pos, (Cell{2, 1}));
}

TEST(GridTransition, ActionNames) {
  const std::vector<std::string> names{"turn left", "turn right", "move forward", "pickup", "drop", "toggle", "done"};
  EXPECT_EQ(action_space().names, names);
}

TEST(Grid, OutOfBoundsAccessThrows) {
  Grid g(4, 3);
  EXPECT_THROW(g.get(4, 0), Error);
  EXPECT_THROW(g.set(0, -1, std::nullopt), Error);
  try {
    g.get(0, 3);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfBounds);
  }
}

TEST(Grid, WallRectDrawsPerimeterOnly) {
  Grid g(5, 4);
  g.wall_rect(0, 0, 5, 4);
  int walls = 0;
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 5; ++x) walls += g.get(x, y).has_value();
  }
  EXPECT_EQ(walls, 2 * 5 + 2 * 2);
  EXPECT_FALSE(g.get(2, 2).has_value());
}

TEST(Grid, DirectionVectors) {
  EXPECT_EQ(dir_vec(0), (Cell{1, 0}));
  EXPECT_EQ(dir_vec(1), (Cell{0, 1}));
  EXPECT_EQ(dir_vec(2), (Cell{-1, 0}));
  EXPECT_EQ(dir_vec(3), (Cell{0, -1}));
}

TEST(GridPlacement, NoFreeCellWhenRegionFull) {
  GridWorld w{Grid(3, 3), {}};
  w.grid.wall_rect(0, 0, 3, 3);
  w.grid.set(1, 1, WorldObject::ball(Color::Red));
  Rng rng(0, "world");
  try {
    place_randomly(w, rng, WorldObject::key(Color::Red));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoFreeCell);
  }
}

TEST(GridPlacement, NeverOnAgentOrObject) {
  Rng rng(4, "world");
  for (int i = 0; i < 200; ++i) {
    GridWorld w{Grid(4, 4), {}};
    w.grid.wall_rect(0, 0, 4, 4);
    place_agent(w, rng);
    const Cell c = place_randomly(w, rng, WorldObject::key(Color::Blue));
    EXPECT_FALSE(c == w.agent.pos);
    EXPECT_EQ(w.grid.get(c.x, c.y)->kind, Kind::Key);
  }
}

TEST(GridPlacement, UniformOverFreeCellsChiSquare) {
  // 3x3 interior, one cell blocked: 8 equally likely cells.
  Rng rng(9, "world");
  std::array<int, 25> counts{};
  constexpr int kDraws = 40000;
  for (int i = 0; i < kDraws; ++i) {
    GridWorld w{Grid(5, 5), {}};
    w.grid.wall_rect(0, 0, 5, 5);
    w.grid.set(2, 2, WorldObject::wall());
    const Cell c = place_randomly(w, rng, WorldObject::ball(Color::Red));
    ++counts[c.y * 5 + c.x];
  }
  double chi2 = 0;
  const double e = kDraws / 8.0;
  int used = 0;
  for (int i = 0; i < 25; ++i) {
    if (counts[i] == 0) continue;
    ++used;
    chi2 += (counts[i] - e) * (counts[i] - e) / e;
  }
  EXPECT_EQ(used, 8);
  EXPECT_LT(chi2, 24.32);  // 7 dof, p = 0.001
}

TEST(GridPlacement, RegionOutsideGridIsOutOfBounds) {
  GridWorld w{Grid(4, 4), {}};
  Rng rng(0, "world");
  try {
    place_randomly(w, rng, WorldObject::wall(), Region{3, 3, 2, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfBounds);
  }
}

TEST(GridGolden, RoundTrip) {
  const std::string text =
      "W W W W W\n"
      "W > . Kr W\n"
      "W Dbl . G W\n"
      "W L Bg Oy W\n"
      "W W W W W\n";
  const GridWorld w = from_golden(text);
  EXPECT_EQ(w.grid.width(), 5);
  EXPECT_EQ(w.agent.pos, (Cell{1, 1}));
  EXPECT_EQ(w.agent.dir, 0);
  EXPECT_EQ(w.grid.get(1, 2)->door, DoorState::Locked);
  EXPECT_EQ(w.grid.get(1, 2)->color, Color::Blue);
  EXPECT_EQ(to_golden(w), text);
}

TEST(GridGolden, RejectsBadTokens) {
  EXPECT_THROW(from_golden("W Q\n"), Error);
  EXPECT_THROW(from_golden("W W\nW\n"), Error);
  EXPECT_THROW(from_golden(""), Error);
}

TEST(WorldObject, Predicates) {
  EXPECT_TRUE(WorldObject::goal().can_overlap());
  EXPECT_FALSE(WorldObject::wall().can_overlap());
  EXPECT_TRUE(WorldObject::door_with(Color::Red, DoorState::Open).can_overlap());
  EXPECT_FALSE(WorldObject::door_with(Color::Red, DoorState::Closed).can_overlap());
  EXPECT_TRUE(WorldObject::door_with(Color::Red, DoorState::Locked).opaque());
  EXPECT_FALSE(WorldObject::door_with(Color::Red, DoorState::Open).opaque());
  EXPECT_TRUE(WorldObject::box(Color::Red).can_pickup());
  EXPECT_FALSE(WorldObject::ball(Color::Red).opaque());
  EXPECT_EQ(WorldObject::box(Color::Red, WorldObject::key(Color::Blue)),
            WorldObject::box(Color::Red, WorldObject::key(Color::Blue)));
  EXPECT_FALSE(WorldObject::box(Color::Red, WorldObject::key(Color::Blue)) == WorldObject::box(Color::Red));
}
