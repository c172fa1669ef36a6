/// @file local_check.hpp
/// Pairwise interpolation of finite sampled maps by automorphisms.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locaut/autos/automorphism.hpp"
#include "locaut/matrix/scaled.hpp"
#include "locaut/matrix/similarity.hpp"

namespace locaut {

struct SamplePair {
  AnyMatrix in;
  ScaledMatrix out;
};

struct SampleMap {
  GroupTag group;
  std::vector<SamplePair> pairs;
};

enum class PairStatus { Interpolable, NotInterpolable, Inconclusive };
std::string_view pair_status_name(PairStatus s);

struct PairVerdict {
  std::size_t i = 0;
  std::size_t j = 0;
  PairStatus status = PairStatus::Inconclusive;
  std::optional<Automorphism> witness;  // verified on both samples
  std::string reason;
};

enum class MapStatus { LocalAutomorphismEvidence, Refuted, Inconclusive };
std::string_view map_status_name(MapStatus s);

struct MapReport {
  MapStatus status = MapStatus::Inconclusive;
  std::vector<PairVerdict> pairs;  // sorted by (i, j)
  std::optional<std::pair<std::size_t, std::size_t>> refuting_pair;
  std::string summary;
};

struct LocalCheckOptions {
  double tol = 1e-9;
  SimilarityOptions similarity;
  unsigned threads = 1;
};

/// Searches the canonical forms for one automorphism sending A to A' and B to
/// B'. Errors: NotInGroup, BadParameters (A = B).
PairVerdict check_pair(const GroupTag& group, const SamplePair& a, const SamplePair& b, std::uint64_t seed,
                       const LocalCheckOptions& opts = {});

/// All pairs; pair (i, j) uses the sub-seed derive_seed(seed, i, j).
/// Errors: TooFewSamples, BadParameters (repeated input), NotInGroup.
MapReport check_map(const SampleMap& m, std::uint64_t seed, const LocalCheckOptions& opts = {});

}  // namespace locaut
