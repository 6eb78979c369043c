// Copyright 2026 The bpir Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <tuple>

#include "bpir/mds.hpp"
#include "oracles.hpp"

namespace bpir {
namespace {

std::vector<FieldElement> random_vec(const PrimeField& f, std::size_t n,
                                     SeededRng& rng) {
  std::vector<FieldElement> v(n);
  for (auto& x : v) x = f.random(rng);
  return v;
}

std::vector<std::size_t> random_positions(std::size_t n, std::size_t count,
                                          SeededRng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  rng.shuffle(std::span<std::size_t>(idx));
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

// Adds `errors` nonzero offsets and `erasures` erasures at disjoint random
// positions; returns the positions of the errors.
std::vector<std::size_t> corrupt(const PrimeField& f, ReceivedWord& w,
                                 std::size_t errors, std::size_t erasures,
                                 SeededRng& rng) {
  const auto pos = random_positions(w.size(), errors + erasures, rng);
  std::vector<std::size_t> shuffled = pos;
  rng.shuffle(std::span<std::size_t>(shuffled));
  std::vector<std::size_t> err(shuffled.begin(), shuffled.begin() + errors);
  for (std::size_t p : err) *w.symbols[p] = f.add(*w.symbols[p], f.random_nonzero(rng));
  for (std::size_t i = errors; i < shuffled.size(); ++i) w.symbols[shuffled[i]].reset();
  std::sort(err.begin(), err.end());
  return err;
}

bool all_minors_invertible(const MdsGenerator& g) {
  const std::size_t n = g.n(), k = g.k();
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + k, true);
  const FieldMatrix full = g.matrix();
  do {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) rows.push_back(i);
    if (mat_rank(g.field(), full.select_rows(rows)) != k) return false;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return true;
}

TEST(MakeGenerator, VandermondeRowsOnNodesOneToN) {
  const PrimeField f(65537);
  const MdsGenerator g = make_generator(15, 9, f);
  EXPECT_EQ(g.n(), 15u);
  EXPECT_EQ(g.k(), 9u);
  EXPECT_EQ(g.distance(), 7u);
  for (std::size_t i = 0; i < 15; ++i) {
    const auto row = g.row(i);
    for (std::size_t j = 0; j < 9; ++j) {
      ASSERT_EQ(row[j], oracle::powmod(i + 1, j, 65537));
    }
  }
}

TEST(MakeGenerator, RejectsLengthAboveModulus) {
  const PrimeField f(11);
  EXPECT_NO_THROW(make_generator(11, 3, f));
  EXPECT_THROW(make_generator(12, 3, f), ParameterError);
  EXPECT_THROW(make_generator(5, 6, f), ParameterError);
}

TEST(MakeGenerator, SquareGeneratorIsInvertible) {
  const PrimeField f(65537);
  for (std::size_t n = 1; n <= 12; ++n) {
    EXPECT_EQ(mat_rank(f, make_generator(n, n, f).matrix()), n);
  }
}

TEST(MakeGenerator, RandomSquareSubmatricesInvertible) {
  const PrimeField f(65537);
  SeededRng rng(1);
  for (auto [n, k] : {std::pair{15, 9}, {48, 16}, {96, 64}, {12, 2}}) {
    const MdsGenerator g = make_generator(n, k, f);
    EXPECT_EQ(g.distance(), static_cast<std::size_t>(n - k + 1));
    const FieldMatrix m = g.matrix();
    for (int i = 0; i < 50; ++i) {
      const auto rows = random_positions(n, k, rng);
      ASSERT_EQ(mat_rank(f, m.select_rows(rows)), static_cast<std::size_t>(k));
    }
  }
}

TEST(Encode, ZeroMessageGivesZeroCodeword) {
  const PrimeField f(65537);
  const MdsGenerator g = make_generator(10, 6, f);
  const std::vector<FieldElement> zero(6, 0);
  EXPECT_EQ(encode(g, zero), std::vector<FieldElement>(10, 0));
}

TEST(Encode, EvaluatesMessagePolynomialAtNodes) {
  const PrimeField f(65537);
  SeededRng rng(2);
  const MdsGenerator g = make_generator(20, 7, f);
  for (int trial = 0; trial < 20; ++trial) {
    const auto msg = random_vec(f, 7, rng);
    const auto cw = encode(g, msg);
    for (std::size_t i = 0; i < 20; ++i) ASSERT_EQ(cw[i], oracle::eval_poly(msg, i + 1, 65537));
  }
  EXPECT_THROW(encode(g, std::vector<FieldElement>(6, 1)), DimensionError);
}

TEST(Puncture, ExamplesAndBoundary) {
  const PrimeField f(65537);
  const MdsGenerator g = make_generator(15, 6, f);
  const MdsGenerator p = puncture(g, {{0, 3, 6, 9, 12}});
  EXPECT_EQ(p.n(), 10u);
  EXPECT_EQ(p.k(), 6u);
  EXPECT_EQ(p.distance(), 5u);
  EXPECT_EQ(puncture(g, {}), g);
  EXPECT_THROW(puncture(g, {{0, 1, 2, 3, 4, 5, 6, 7, 8}}), PunctureTooDeepError);
  EXPECT_NO_THROW(puncture(g, {{0, 1, 2, 3, 4, 5, 6, 7}}));
}

TEST(Puncture, SurvivingRowsKeepTheirOrderAndValues) {
  const PrimeField f(65537);
  const MdsGenerator g = make_generator(8, 3, f);
  const MdsGenerator p = puncture(g, {{1, 4}});
  const std::vector<std::size_t> kept{0, 2, 3, 5, 6, 7};
  for (std::size_t i = 0; i < kept.size(); ++i) EXPECT_EQ(p.row(i), g.row(kept[i]));
}

TEST(Puncture, MinorsStayInvertibleForSmallCodes) {
  // All (n, k) with n <= 8 and a few random patterns per depth; the full
  // sweep up to n = 10 lives in the acceptance run.
  const PrimeField f(65537);
  SeededRng rng(3);
  for (std::size_t n = 2; n <= 8; ++n) {
    for (std::size_t k = 1; k < n; ++k) {
      const MdsGenerator g = make_generator(n, k, f);
      for (std::size_t z = 0; z < n - k; ++z) {
        const MdsGenerator p = puncture(g, {random_positions(n, z, rng)});
        ASSERT_TRUE(all_minors_invertible(p)) << n << "," << k << " z=" << z;
      }
    }
  }
}

TEST(ReceivedWord, TracksErasures) {
  ReceivedWord w = ReceivedWord::from_codeword(std::vector<FieldElement>{1, 2, 3, 4});
  EXPECT_EQ(w.erasure_count(), 0u);
  w.symbols[1].reset();
  w.symbols[3].reset();
  EXPECT_EQ(w.erasure_positions(), (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(w.erasure_count(), 2u);
}

TEST(Decode, CleanWordDecodesWithNoErrors) {
  const PrimeField f(65537);
  SeededRng rng(4);
  const MdsGenerator g = make_generator(10, 6, f);
  const auto msg = random_vec(f, 6, rng);
  const auto out = decode(g, ReceivedWord::from_codeword(encode(g, msg)));
  EXPECT_EQ(out.message, msg);
  EXPECT_TRUE(out.error_positions.empty());
}

TEST(Decode, CorrectsUpToTheRadiusAndReportsPositions) {
  const PrimeField f(65537);
  SeededRng rng(5);
  for (auto [n, k] : {std::pair{10, 6}, {15, 9}, {12, 2}, {7, 1}}) {
    const MdsGenerator g = make_generator(n, k, f);
    for (std::size_t e = 0; e <= error_radius(g, 0); ++e) {
      for (int trial = 0; trial < 10; ++trial) {
        const auto msg = random_vec(f, k, rng);
        const auto cw = encode(g, msg);
        ReceivedWord w = ReceivedWord::from_codeword(cw);
        const auto err = corrupt(f, w, e, 0, rng);
        const auto out = decode(g, w);
        ASSERT_EQ(out.message, msg);
        ASSERT_EQ(out.corrected_codeword, cw);
        ASSERT_EQ(out.error_positions, err);
      }
    }
  }
}

TEST(Decode, ErrorsAndErasuresWithinBudget) {
  const PrimeField f(65537);
  SeededRng rng(6);
  for (auto [n, k] : {std::pair{10, 6}, {12, 8}}) {
    const MdsGenerator g = make_generator(n, k, f);
    const std::size_t d = g.distance();
    for (std::size_t rho = 0; rho + 1 <= d; ++rho) {
      for (std::size_t tau = 0; 2 * tau + rho <= d - 1; ++tau) {
        for (int trial = 0; trial < 20; ++trial) {
          const auto msg = random_vec(f, k, rng);
          ReceivedWord w = ReceivedWord::from_codeword(encode(g, msg));
          const auto err = corrupt(f, w, tau, rho, rng);
          const auto out = decode(g, w);
          ASSERT_EQ(out.message, msg) << "tau=" << tau << " rho=" << rho;
          ASSERT_EQ(out.error_positions, err);
          for (std::size_t p : w.erasure_positions()) {
            ASSERT_FALSE(std::binary_search(out.error_positions.begin(),
                                            out.error_positions.end(), p));
          }
        }
      }
    }
  }
}

TEST(Decode, BeyondRadiusFailsOrLandsOnACodewordWithinRadius) {
  const PrimeField f(65537);
  SeededRng rng(7);
  const MdsGenerator g = make_generator(10, 6, f);
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    ReceivedWord w = ReceivedWord::from_codeword(encode(g, random_vec(f, 6, rng)));
    corrupt(f, w, 4, 0, rng);
    try {
      const auto out = decode(g, w);
      ASSERT_LE(out.error_positions.size(), error_radius(g, 0));
      ASSERT_EQ(out.corrected_codeword, encode(g, out.message));
    } catch (const DecodeFailure&) {
      ++failures;
    }
  }
  EXPECT_GT(failures, 90);
}

TEST(Decode, IsLinearOnCleanCodewords) {
  const PrimeField f(65537);
  SeededRng rng(8);
  const MdsGenerator g = make_generator(12, 5, f);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m1 = random_vec(f, 5, rng), m2 = random_vec(f, 5, rng);
    auto c = encode(g, m1);
    const auto c2 = encode(g, m2);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.add(c[i], c2[i]);
    std::vector<FieldElement> sum(5);
    for (std::size_t i = 0; i < 5; ++i) sum[i] = f.add(m1[i], m2[i]);
    ASSERT_EQ(decode(g, ReceivedWord::from_codeword(c)).message, sum);
  }
}

TEST(Decode, WorksOnPuncturedAndRestrictedCodes) {
  const PrimeField f(65537);
  SeededRng rng(9);
  const MdsGenerator g = make_generator(15, 6, f);
  const std::vector<std::size_t> kept{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  const MdsGenerator r = g.restrict_to(kept);
  EXPECT_EQ(r, puncture(g, {{10, 11, 12, 13, 14}}));
  const auto msg = random_vec(f, 6, rng);
  ReceivedWord w = ReceivedWord::from_codeword(encode(r, msg));
  corrupt(f, w, 2, 0, rng);
  EXPECT_EQ(decode(r, w).message, msg);
}

TEST(OracleDecode, ZeroWordAndGuard) {
  const PrimeField f(11);
  const MdsGenerator g = make_generator(10, 6, f);
  const auto out = oracle_decode(g, ReceivedWord::from_codeword(std::vector<FieldElement>(10, 0)));
  EXPECT_EQ(out.nearest.message, std::vector<FieldElement>(6, 0));
  EXPECT_EQ(out.distance, 0u);
  EXPECT_FALSE(out.ambiguous);

  const PrimeField big(65537);
  const MdsGenerator huge = make_generator(40, 20, big);
  EXPECT_THROW(oracle_decode(huge, ReceivedWord::from_codeword(std::vector<FieldElement>(40, 0))),
               InstanceTooLargeError);
}

TEST(OracleDecode, FlagsTiesAsAmbiguous) {
  // A (3, 1) code has constant codewords, and (0, 1, 2) sits at distance 2
  // from three of them.
  const PrimeField f(5);
  const MdsGenerator g = make_generator(3, 1, f);
  const auto out = oracle_decode(g, ReceivedWord::from_codeword(std::vector<FieldElement>{0, 1, 2}));
  EXPECT_TRUE(out.ambiguous);
  EXPECT_EQ(out.distance, 2u);
  EXPECT_EQ(out.nearest.message, std::vector<FieldElement>{0});
}

TEST(OracleDecode, MinimumDistanceMatchesFullEnumeration) {
  // (3, 1) over F_3 takes the message route, the other two the subset route.
  SeededRng rng(11);
  for (auto [q, n, k] : {std::tuple{3u, 3u, 1u}, {5u, 4u, 2u}, {7u, 5u, 2u}}) {
    const PrimeField f(q);
    const MdsGenerator g = make_generator(n, k, f);
    for (int trial = 0; trial < 40; ++trial) {
      ReceivedWord w;
      for (std::size_t i = 0; i < n; ++i) w.symbols.push_back(f.random(rng));
      if (trial % 3 == 0) w.symbols[rng.uniform(n)].reset();
      std::size_t best = n + 1;
      std::vector<FieldElement> msg(k, 0);
      for (std::uint64_t code = 0; code < oracle::powmod(q, k, 1ULL << 62); ++code) {
        std::uint64_t c = code;
        for (auto& x : msg) {
          x = c % q;
          c /= q;
        }
        const auto cw = encode(g, msg);
        std::size_t d = 0;
        for (std::size_t i = 0; i < n; ++i) d += w.symbols[i] && *w.symbols[i] != cw[i];
        best = std::min(best, d);
      }
      const auto out = oracle_decode(g, w);
      ASSERT_EQ(out.distance, best);
      ASSERT_EQ(out.nearest.corrected_codeword, encode(g, out.nearest.message));
    }
  }
}

TEST(OracleDecode, AgreesWithDecoderInsideTheRadius) {
  SeededRng rng(10);
  for (std::uint32_t q : {11u, 65537u}) {
    const PrimeField f(q);
    const MdsGenerator g = make_generator(10, 6, f);
    for (int trial = 0; trial < 150; ++trial) {
      ReceivedWord w = ReceivedWord::from_codeword(encode(g, random_vec(f, 6, rng)));
      corrupt(f, w, rng.uniform(3), 0, rng);
      const auto fast = decode(g, w);
      const auto slow = oracle_decode(g, w);
      ASSERT_FALSE(slow.ambiguous);
      ASSERT_EQ(fast.message, slow.nearest.message);
      ASSERT_EQ(fast.error_positions, slow.nearest.error_positions);
    }
  }
}

}  // namespace
}  // namespace bpir
