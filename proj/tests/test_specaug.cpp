// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include "esdd/specaug.hpp"
#include "support/test_util.hpp"

using namespace esdd;

TEST_SUITE("specaug") {

TEST_CASE("zero mask counts leave the input untouched") {
  RngStream rng(1);
  MelSpec m = esdd_test::random_mel(50, 32, rng);
  SpecAugConfig cfg;
  cfg.n_freq_masks = 0;
  cfg.n_time_masks = 0;
  MelSpec out = spec_augment(m, cfg, rng);
  CHECK(out.values == m.values);
}

TEST_CASE("single frequency mask is one contiguous band") {
  RngStream data_rng(2);
  MelSpec m = esdd_test::random_mel(40, 64, data_rng);
  SpecAugConfig cfg;
  cfg.n_freq_masks = 1;
  cfg.max_freq_width = 16;
  cfg.n_time_masks = 0;
  cfg.fill_value = -99.0;

  RngStream rng(1234);
  MelSpec out = spec_augment(m, cfg, rng);

  // Identify masked columns; they must be contiguous and fully overwritten.
  std::vector<int> masked;
  for (int k = 0; k < m.n_mels(); ++k) {
    bool all_fill = true, any_diff = false;
    for (int t = 0; t < m.frames(); ++t) {
      if (out.values(t, k) != m.values(t, k)) any_diff = true;
      if (out.values(t, k) != cfg.fill_value) all_fill = false;
    }
    if (any_diff) {
      CHECK(all_fill);
      masked.push_back(k);
    }
  }
  CHECK(masked.size() <= 16);
  for (size_t i = 1; i < masked.size(); ++i)
    CHECK(masked[i] == masked[i - 1] + 1);
}

TEST_CASE("identical seeds produce identical outputs") {
  RngStream data_rng(3);
  MelSpec m = esdd_test::random_mel(60, 32, data_rng);
  SpecAugConfig cfg;
  RngStream a(99), b(99);
  MelSpec out_a = spec_augment(m, cfg, a);
  MelSpec out_b = spec_augment(m, cfg, b);
  CHECK(out_a.values == out_b.values);
}

TEST_CASE("shape preserved; only masked cells change") {
  RngStream rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    MelSpec m = esdd_test::random_mel(rng.uniform_int(20, 80),
                                      rng.uniform_int(16, 64), rng);
    SpecAugConfig cfg;
    cfg.fill_value = -123.0;
    cfg.max_freq_width = rng.uniform_int(0, 20);
    cfg.max_time_width = rng.uniform_int(0, 30);
    MelSpec out = spec_augment(m, cfg, rng);
    REQUIRE(out.frames() == m.frames());
    REQUIRE(out.n_mels() == m.n_mels());
    for (int t = 0; t < m.frames(); ++t)
      for (int k = 0; k < m.n_mels(); ++k) {
        bool same = out.values(t, k) == m.values(t, k);
        bool filled = out.values(t, k) == cfg.fill_value;
        CHECK((same || filled));
      }
  }
}

TEST_CASE("mask widths clip to the spectrogram size") {
  RngStream rng(5);
  MelSpec m = esdd_test::random_mel(8, 4, rng);
  SpecAugConfig cfg;
  cfg.max_freq_width = 1000;
  cfg.max_time_width = 1000;
  MelSpec out = spec_augment(m, cfg, rng);  // must not throw or overrun
  CHECK(out.frames() == 8);
  CHECK(out.n_mels() == 4);
}

}  // TEST_SUITE
