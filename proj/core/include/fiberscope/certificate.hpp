#pragma once

#include <string>
#include <vector>

#include "fiberscope/flag_complex.hpp"
#include "fiberscope/homology.hpp"
#include "fiberscope/legality.hpp"
#include "fiberscope/move_system.hpp"

namespace fiberscope {

inline constexpr const char* kCertificateSchema = "fiberscope-cert/1";

struct StateEvidence {
  VertexSet state;
  HomologyProfile side_a;  // induced by the state
  HomologyProfile side_b;  // induced by its complement
};

/// Witness that every member of rep + span(moves) is (m-1)-legal (or sharply so).
struct FiberCertificate {
  FlagComplex complex;
  MoveSystem moves;
  VertexSet rep;
  int m = 1;
  LegalityMode mode = LegalityMode::Homological;
  bool sharply = false;
  std::vector<StateEvidence> evidence;  // one per coset member, in coset_members order
};

/// Computes the evidence for every coset member (no legality check).
FiberCertificate make_certificate(const FlagComplex& complex, const MoveSystem& moves, const VertexSet& rep, int m,
                                  LegalityMode mode, bool sharply);

/// Deterministic JSON (sorted keys, two-space indent, trailing newline).
std::string to_json(const FiberCertificate& certificate);
/// Throws ParseError.
FiberCertificate certificate_from_json(const std::string& text);

struct VerifyReport {
  bool ok = false;
  std::vector<std::string> failures;
};

/// Replays a serialized certificate from scratch: complex hash, move axioms,
/// coset membership, every homology profile, and the legality predicate.
VerifyReport verify_certificate(const std::string& json_text);

}  // namespace fiberscope
