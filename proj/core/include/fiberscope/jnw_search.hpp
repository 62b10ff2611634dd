#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "fiberscope/certificate.hpp"
#include "fiberscope/estimate.hpp"
#include "fiberscope/flag_complex.hpp"
#include "fiberscope/legality.hpp"
#include "fiberscope/move_system.hpp"

namespace fiberscope {

enum class Strategy { Exhaustive, Sampled };

std::string_view to_string(Strategy strategy) noexcept;
/// "exhaustive" or "sampled". Throws InvalidArgument.
Strategy parse_strategy(std::string_view text);

struct SearchOptions {
  Strategy strategy = Strategy::Exhaustive;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  /// Exhaustive searches refuse complexes with more vertices.
  std::size_t vertex_cap = 28;
  /// Require sharp (m-1)-legality instead of plain (m-1)-legality.
  bool sharply = false;
};

struct SearchResult {
  std::optional<FiberCertificate> certificate;
  /// Exhaustive: Gray-code index of the coset; sampled: index of the sample.
  std::uint64_t position = 0;
  /// Cosets (or samples) in the search space.
  std::uint64_t space = 0;
};

/// First coset all of whose members are (m-1)-legal. Exhaustive order walks
/// representatives that vanish on the pivots of M in Gray-code order over the
/// free coordinates; the sampled strategy reduces seeded random states to the
/// same representatives. Throws BudgetExceeded, UnsupportedDegree, WidthMismatch.
SearchResult coset_search(const FlagComplex& complex, const MoveSystem& moves, int m, LegalityMode mode,
                          const SearchOptions& options = {});

/// Representative of exhaustive coset number `index`.
VertexSet coset_representative(const MoveSystem& moves, std::uint64_t index);

enum class PigeonholeVerdict { Certified, NotImplied, Estimated };
std::string_view to_string(PigeonholeVerdict verdict) noexcept;

struct PigeonholeReport {
  std::size_t vertices = 0;
  std::size_t chromatic = 0;
  int m = 1;
  bool sharply = false;
  bool exhaustive = true;
  /// |F_{m-1}| (exact) or its estimate.
  Estimate bad;
  /// |T_m| for the sharp variant.
  std::optional<Estimate> top;
  /// 2^{n - chi - 1}; log2 kept alongside for sampled runs on large n.
  std::uint64_t threshold = 0;
  int threshold_log2 = 0;
  PigeonholeVerdict verdict = PigeonholeVerdict::NotImplied;
};

/// Compares |F_{m-1}| (plus |T_m| when sharply, which requires m = dim L) with
/// 2^{n - chi - 1}. CERTIFIED only from an exhaustive count.
/// Throws BudgetExceeded, UnsupportedDegree, InvalidArgument.
PigeonholeReport pigeonhole_check(const FlagComplex& complex, int m, LegalityMode mode, bool sharply,
                                  const SearchOptions& options = {});

}  // namespace fiberscope
