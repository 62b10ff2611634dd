#include "fiberscope/certificate.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "fiberscope/complex_io.hpp"
#include "fiberscope/error.hpp"

namespace fiberscope {

using nlohmann::json;

namespace {

json profile_to_json(const HomologyProfile& p) {
  json degrees = json::array();
  for (const auto& d : p.degrees) {
    json torsion = json::array();
    for (const auto& t : d.torsion) torsion.push_back(t.str());
    degrees.push_back({{"free_rank", d.free_rank}, {"torsion", torsion}});
  }
  return {{"nonempty", p.nonempty}, {"degrees", degrees}};
}

HomologyProfile profile_from_json(const json& j) {
  HomologyProfile p;
  p.nonempty = j.at("nonempty").get<bool>();
  for (const auto& d : j.at("degrees")) {
    DegreeHomology h;
    h.free_rank = d.at("free_rank").get<std::size_t>();
    for (const auto& t : d.at("torsion")) h.torsion.emplace_back(t.get<std::string>());
    p.degrees.push_back(std::move(h));
  }
  return p;
}

json complex_to_json(const FlagComplex& c) {
  json edges = json::array();
  for (const auto& [a, b] : c.edges()) edges.push_back({a, b});
  return {{"n", c.vertex_count()}, {"edges", edges}};
}

FlagComplex complex_from_json(const json& j) {
  const auto n = j.at("n").get<std::size_t>();
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
  return FlagComplex::from_graph(n, edges);
}

// Legality read off the recomputed profiles.
bool profile_legal(const HomologyProfile& p, int m, bool sharply) {
  const int k = m - 1;
  if (k < -1) return true;
  if (!p.nonempty) return false;
  for (int i = 0; i <= k; ++i) {
    if (!p.trivial_at(static_cast<std::size_t>(i))) return false;
  }
  if (sharply) {
    if (p.trivial_at(static_cast<std::size_t>(k + 1))) return false;
    if (!p.trivial_at(static_cast<std::size_t>(k + 2))) return false;
  }
  return true;
}

}  // namespace

FiberCertificate make_certificate(const FlagComplex& complex, const MoveSystem& moves, const VertexSet& rep, int m,
                                  LegalityMode mode, bool sharply) {
  FiberCertificate cert;
  cert.complex = complex;
  cert.moves = moves;
  cert.rep = rep;
  cert.m = m;
  cert.mode = mode;
  cert.sharply = sharply;
  for (auto& s : coset_members(moves, rep)) {
    StateEvidence ev;
    ev.side_a = reduced_homology(induced(complex, s));
    ev.side_b = reduced_homology(induced(complex, s.complement()));
    ev.state = std::move(s);
    cert.evidence.push_back(std::move(ev));
  }
  return cert;
}

std::string to_json(const FiberCertificate& c) {
  json moves = json::array();
  for (const auto& mv : c.moves.moves()) moves.push_back(mv.to_hex());
  json evidence = json::array();
  for (const auto& ev : c.evidence) {
    evidence.push_back({{"state_hex", ev.state.to_hex()},
                        {"side_a_profile", profile_to_json(ev.side_a)},
                        {"side_b_profile", profile_to_json(ev.side_b)}});
  }
  json j = {{"schema", kCertificateSchema},
            {"complex_hash", complex_hash(c.complex)},
            {"complex", complex_to_json(c.complex)},
            {"moves", moves},
            {"rep_bits_hex", c.rep.to_hex()},
            {"m", c.m},
            {"mode", std::string(to_string(c.mode))},
            {"sharply", c.sharply},
            {"evidence", evidence}};
  return j.dump(2) + "\n";
}

FiberCertificate certificate_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.at("schema").get<std::string>() != kCertificateSchema) {
      throw Error(ErrorCode::ParseError, "unsupported schema " + j.at("schema").dump());
    }
    FiberCertificate c;
    c.complex = complex_from_json(j.at("complex"));
    const std::size_t n = c.complex.vertex_count();
    std::vector<VertexSet> moves;
    for (const auto& mv : j.at("moves")) moves.push_back(VertexSet::from_hex(n, mv.get<std::string>()));
    c.moves = MoveSystem::unchecked(n, std::move(moves));
    c.rep = VertexSet::from_hex(n, j.at("rep_bits_hex").get<std::string>());
    c.m = j.at("m").get<int>();
    c.mode = parse_mode(j.at("mode").get<std::string>());
    c.sharply = j.at("sharply").get<bool>();
    for (const auto& ev : j.at("evidence")) {
      c.evidence.push_back({VertexSet::from_hex(n, ev.at("state_hex").get<std::string>()),
                            profile_from_json(ev.at("side_a_profile")), profile_from_json(ev.at("side_b_profile"))});
    }
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ParseError, e.what());
  }
}

VerifyReport verify_certificate(const std::string& json_text) {
  VerifyReport report;
  auto fail = [&](std::string msg) { report.failures.push_back(std::move(msg)); };
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(std::string("not valid JSON: ") + e.what());
    return report;
  }
  try {
    if (j.at("schema").get<std::string>() != kCertificateSchema) fail("unsupported schema");
    const FlagComplex complex = complex_from_json(j.at("complex"));
    const std::size_t n = complex.vertex_count();
    if (complex_hash(complex) != j.at("complex_hash").get<std::string>()) fail("complex hash mismatch");

    std::vector<VertexSet> moves;
    for (const auto& mv : j.at("moves")) moves.push_back(VertexSet::from_hex(n, mv.get<std::string>()));
    const auto axiom = move_axiom_violation(complex, moves);
    if (!axiom.empty()) fail("move axioms: " + axiom);

    // span by closure under each distinct move, independent of the basis code
    const VertexSet rep = VertexSet::from_hex(n, j.at("rep_bits_hex").get<std::string>());
    std::set<VertexSet> coset{rep};
    std::set<VertexSet> distinct(moves.begin(), moves.end());
    for (const auto& mv : distinct) {
      if (coset.size() > (std::size_t{1} << 20)) {
        fail("coset too large to replay");
        return report;
      }
      std::set<VertexSet> next = coset;
      for (const auto& s : coset) next.insert(s ^ mv);
      coset = std::move(next);
    }

    const int m = j.at("m").get<int>();
    const LegalityMode mode = parse_mode(j.at("mode").get<std::string>());
    const bool sharply = j.at("sharply").get<bool>();
    if (mode == LegalityMode::Connectivity && m - 1 > 0) fail("connectivity mode with m - 1 > 0");

    std::set<VertexSet> claimed;
    for (const auto& ev : j.at("evidence")) {
      const VertexSet state = VertexSet::from_hex(n, ev.at("state_hex").get<std::string>());
      const std::string hex = state.to_hex();
      if (!claimed.insert(state).second) fail("state " + hex + " listed twice");
      if (!coset.count(state)) fail("state " + hex + " is not in the coset");
      const auto a = reduced_homology(induced(complex, state));
      const auto b = reduced_homology(induced(complex, state.complement()));
      if (profile_from_json(ev.at("side_a_profile")) != a) fail("state " + hex + " side A profile mismatch");
      if (profile_from_json(ev.at("side_b_profile")) != b) fail("state " + hex + " side B profile mismatch");
      if (!profile_legal(a, m, sharply) || !profile_legal(b, m, sharply)) fail("state " + hex + " is not legal");
    }
    if (claimed != coset) fail("evidence does not cover the coset");
  } catch (const json::exception& e) {
    fail(std::string("malformed certificate: ") + e.what());
  } catch (const Error& e) {
    fail(std::string("malformed certificate: ") + e.what());
  }
  report.ok = report.failures.empty();
  return report;
}

}  // namespace fiberscope
