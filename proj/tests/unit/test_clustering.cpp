#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "pairest/error.hpp"
#include "pairest/checked.hpp"
#include "pairest/clustering.hpp"
#include "pairest/csv.hpp"

using namespace pairest;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Internal;
}

Clustering from_pairs(std::vector<MembershipEntry> entries) {
  return Clustering::from_membership(MembershipVector(std::move(entries)));
}

Clustering figure2_truth() {
  return from_pairs({{"1", "A"}, {"2", "A"}, {"3", "A"}, {"4", "B"}, {"5", "B"}, {"6", "C"},
                     {"7", "C"}, {"8", "D"}});
}

Clustering figure2_pred() {
  return from_pairs({{"1", "p1"}, {"4", "p1"}, {"2", "p2"}, {"3", "p2"}, {"5", "p3"},
                     {"6", "p4"}, {"7", "p4"}, {"8", "p4"}});
}

MentionSet ids(const Clustering& c, std::vector<std::string> names) {
  return MentionSet::from_ids(c.universe(), names);
}

}  // namespace

TEST(Clustering, GroupsMembership) {
  const auto c = from_pairs({{"1", "a"}, {"2", "a"}, {"3", "b"}});
  EXPECT_EQ(c.universe_size(), 3u);
  ASSERT_EQ(c.cluster_count(), 2u);
  EXPECT_EQ(c.cluster_size(0), 2u);
  EXPECT_EQ(c.cluster_label(1), "b");
  EXPECT_EQ(c.pair_count(), 1u);
}

TEST(Clustering, Empty) {
  const auto c = Clustering::from_membership(MembershipVector{});
  EXPECT_EQ(c.universe_size(), 0u);
  EXPECT_EQ(c.cluster_count(), 0u);
}

TEST(Clustering, Figure2Shape) {
  const auto t = figure2_truth();
  EXPECT_EQ(t.cluster_count(), 4u);
  EXPECT_EQ(t.universe_size(), 8u);
}

TEST(Clustering, MembershipRoundTrip) {
  const auto p = figure2_pred();
  EXPECT_EQ(Clustering::from_membership(p.to_membership()).to_membership(), p.to_membership());
  EXPECT_TRUE(Clustering::from_membership(p.to_membership()).same_partition(p));
}

TEST(Clustering, CanonicalOrderIgnoresLabels) {
  const auto a = from_pairs({{"x", "9"}, {"y", "1"}, {"z", "9"}});
  const auto b = from_pairs({{"x", "k"}, {"y", "j"}, {"z", "k"}});
  EXPECT_TRUE(a.same_partition(b));
  EXPECT_EQ(a.cluster_of(0), 0u);
}

TEST(PairStats, Figure2) {
  const auto s = pair_stats(figure2_truth(), figure2_pred());
  EXPECT_EQ(s.matching_pairs, 5u);
  EXPECT_EQ(s.predicted_pairs, 5u);
  EXPECT_EQ(s.common_pairs, 2u);
  const auto pr = exact_precision_recall(figure2_truth(), figure2_pred());
  EXPECT_EQ(pr.precision, 0.4);
  EXPECT_EQ(pr.recall, 0.4);
}

TEST(PairStats, IdentityGivesOne) {
  const auto t = figure2_truth();
  const auto s = pair_stats(t, t);
  EXPECT_EQ(s.common_pairs, s.matching_pairs);
  EXPECT_EQ(s.common_pairs, s.predicted_pairs);
  const auto pr = exact_precision_recall(t, t);
  EXPECT_EQ(pr.precision, 1.0);
  EXPECT_EQ(pr.recall, 1.0);
}

TEST(PairStats, BruteForceOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 15);
    const auto truth = oracle::random_labels(rng, n, 1 + static_cast<int>(rng() % n));
    const auto pred = oracle::random_labels(rng, n, 1 + static_cast<int>(rng() % n));
    const auto u = oracle::universe(n);
    const auto expected = oracle::count_pairs(truth, pred);
    const auto got =
        pair_stats(oracle::to_clustering(truth, u), oracle::to_clustering(pred, u));
    EXPECT_EQ(got.matching_pairs, expected.truth);
    EXPECT_EQ(got.predicted_pairs, expected.predicted);
    EXPECT_EQ(got.common_pairs, expected.common);
  }
}

TEST(PairStats, TwelveMentionsAllPairs) {
  std::mt19937_64 rng(12);
  const auto truth = oracle::random_labels(rng, 12, 4);
  const auto pred = oracle::random_labels(rng, 12, 4);
  const auto u = oracle::universe(12);
  std::uint64_t t = 0, p = 0, c = 0, pairs = 0;
  for (int i = 0; i < 12; ++i) {
    for (int j = i + 1; j < 12; ++j) {
      ++pairs;
      t += truth[i] == truth[j];
      p += pred[i] == pred[j];
      c += truth[i] == truth[j] && pred[i] == pred[j];
    }
  }
  EXPECT_EQ(pairs, 66u);
  EXPECT_EQ(pair_stats(oracle::to_clustering(truth, u), oracle::to_clustering(pred, u)),
            (PairStats{t, p, c}));
}

TEST(PairStats, Errors) {
  const auto singletons = from_pairs({{"1", "a"}, {"2", "b"}, {"3", "c"}});
  const auto linked = from_pairs({{"1", "a"}, {"2", "a"}, {"3", "c"}});
  EXPECT_EQ(code_of([&] { exact_precision_recall(linked, singletons); }),
            ErrorCode::NoPredictedLinks);
  EXPECT_EQ(code_of([&] { exact_precision_recall(singletons, linked); }), ErrorCode::NoTrueLinks);
  const auto other = from_pairs({{"1", "a"}, {"2", "a"}, {"4", "c"}});
  EXPECT_EQ(code_of([&] { pair_stats(linked, other); }), ErrorCode::UniverseMismatch);
}

TEST(PairStats, DualityInterchangesPrecisionAndRecall) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const auto [truth, pred] = oracle::random_instance(rng, 12);
    const auto u = oracle::universe(12);
    const auto t = oracle::to_clustering(truth, u);
    const auto p = oracle::to_clustering(pred, u);
    const auto a = exact_precision_recall(t, p);
    const auto b = exact_precision_recall(p, t);
    EXPECT_EQ(a.precision, b.recall);
    EXPECT_EQ(a.recall, b.precision);
  }
}

TEST(FValue, Figure2) {
  const auto p = figure2_pred();
  EXPECT_EQ(f_value(ids(p, {"1", "2", "3"}), p), 1u);
  EXPECT_EQ(f_value(ids(p, {"5"}), p), 0u);
  EXPECT_EQ(f_value(ids(p, {"6", "7", "8"}), p), 3u);
  EXPECT_DOUBLE_EQ(g_value(ids(p, {"1", "2", "3"}), p), 0.2);
  EXPECT_EQ(g_value(ids(p, {"1", "5"}), p), 0.0);
}

TEST(FValue, GSumsToPrecision) {
  const auto t = figure2_truth();
  const auto p = figure2_pred();
  double sum = 0;
  for (ClusterIndex k = 0; k < t.cluster_count(); ++k) {
    const auto m = t.cluster(k);
    sum += g_value(MentionSet(std::vector<MentionIndex>(m.begin(), m.end())), p);
  }
  EXPECT_DOUBLE_EQ(sum, 0.4);
}

TEST(FValue, NoPredictedLinks) {
  const auto singletons = from_pairs({{"1", "a"}, {"2", "b"}});
  EXPECT_EQ(code_of([&] { g_value(ids(singletons, {"1", "2"}), singletons); }),
            ErrorCode::NoPredictedLinks);
}

TEST(FValue, UnknownMention) {
  const auto p = figure2_pred();
  EXPECT_EQ(code_of([&] { ids(p, {"1", "99"}); }), ErrorCode::UnknownMention);
  EXPECT_EQ(code_of([&] { f_value(MentionSet({0, 42}), p); }), ErrorCode::UnknownMention);
}

TEST(Restrict, Figure2) {
  const auto p = figure2_pred();
  const auto r = restrict(p, ids(p, {"1", "2", "3", "4", "5"}));
  const auto expected = from_pairs({{"1", "p1"}, {"4", "p1"}, {"2", "p2"}, {"3", "p2"}, {"5", "p3"}});
  EXPECT_TRUE(r.same_partition(expected));
}

TEST(Restrict, IdentityAndEmpty) {
  const auto p = figure2_pred();
  std::vector<MentionIndex> all(p.universe_size());
  for (MentionIndex i = 0; i < all.size(); ++i) all[i] = i;
  EXPECT_TRUE(restrict(p, MentionSet(all)).same_partition(p));
  const auto empty = restrict(p, MentionSet{});
  EXPECT_EQ(empty.universe_size(), 0u);
  EXPECT_EQ(empty.cluster_count(), 0u);
}

TEST(BlockLinks, Figure2) {
  const auto p = figure2_pred();
  const auto b = block_link_counts(ids(p, {"1", "2", "3"}), p);
  EXPECT_EQ(b.within, 1u);
  EXPECT_EQ(b.outgoing, 1u);
  std::vector<MentionIndex> all(8);
  for (MentionIndex i = 0; i < 8; ++i) all[i] = i;
  const auto u = block_link_counts(MentionSet(all), p);
  EXPECT_EQ(u.within, 5u);
  EXPECT_EQ(u.outgoing, 0u);
  const auto e = block_link_counts(MentionSet{}, p);
  EXPECT_EQ(e.within, 0u);
  EXPECT_EQ(e.outgoing, 0u);
}

TEST(BlockLinks, MatchesBruteForce) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 14);
    const auto pred = oracle::random_labels(rng, n, 1 + static_cast<int>(rng() % n));
    const auto u = oracle::universe(n);
    const auto p = oracle::to_clustering(pred, u);
    std::vector<MentionIndex> block;
    std::set<int> in;
    for (int i = 0; i < n; ++i) {
      if (rng() % 2) {
        block.push_back(static_cast<MentionIndex>(i));
        in.insert(i);
      }
    }
    std::uint64_t within = 0, out = 0;
    for (const auto& [a, b] : oracle::links(pred)) {
      const int k = int(in.count(a)) + int(in.count(b));
      within += k == 2;
      out += k == 1;
    }
    const auto got = block_link_counts(MentionSet(block), p);
    EXPECT_EQ(got.within, within);
    EXPECT_EQ(got.outgoing, out);
  }
}

TEST(MentionSet, RejectsRepeats) {
  EXPECT_EQ(code_of([] { MentionSet({1, 2, 1}); }), ErrorCode::DuplicateMention);
}

TEST(Checked, Choose2AndOverflow) {
  EXPECT_EQ(choose2(0), 0u);
  EXPECT_EQ(choose2(1), 0u);
  EXPECT_EQ(choose2(5), 10u);
  EXPECT_EQ(choose2(std::uint64_t{1} << 32), (std::uint64_t{1} << 31) * ((std::uint64_t{1} << 32) - 1));
  EXPECT_EQ(code_of([] { choose2(std::uint64_t{1} << 40); }), ErrorCode::Overflow);
  EXPECT_EQ(code_of([] { checked_add(~std::uint64_t{0}, 1); }), ErrorCode::Overflow);
}
