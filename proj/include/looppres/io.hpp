#pragma once

// JSON input of complexes and JSON reports of presentations and homotopy data.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "looppres/errors.hpp"
#include "looppres/homotopy.hpp"
#include "looppres/presentation.hpp"
#include "looppres/simplicial.hpp"

namespace looppres::io {

using json = nlohmann::ordered_json;

/// Machine integers stay numbers; larger values are emitted as decimal strings.
inline json integer_to_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

inline json vertex_set_to_json(VertexSet s) { return s.elements(); }

/// Parses {"m": int, "facets": [[int, ...], ...]}; m defaults to the largest vertex.
inline SimplicialComplex complex_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("complex must be a JSON object");
  if (!doc.contains("facets") || !doc["facets"].is_array()) throw ParseError("missing array \"facets\"");
  std::vector<std::vector<long long>> raw;
  long long top = 0;
  for (const auto& f : doc["facets"]) {
    if (!f.is_array()) throw ParseError("each facet must be an array of vertices");
    std::vector<long long> face;
    for (const auto& v : f) {
      if (!v.is_number_integer()) throw ParseError("vertices must be integers");
      const long long x = v.get<long long>();
      if (x < 1) throw ParseError("vertices are 1-indexed, got " + std::to_string(x));
      face.push_back(x);
      top = std::max(top, x);
    }
    raw.push_back(std::move(face));
  }
  long long m = top;
  if (doc.contains("m")) {
    if (!doc["m"].is_number_integer()) throw ParseError("\"m\" must be an integer");
    m = doc["m"].get<long long>();
    if (m < top) throw ParseError("vertex " + std::to_string(top) + " exceeds m = " + std::to_string(m));
  }
  if (m < 0 || m > max_vertices())
    throw InvalidComplex("m = " + std::to_string(m) + " outside 0.." + std::to_string(max_vertices()) +
                         " (LOOPPRES_MAX_M raises the cap)");
  std::vector<VertexSet> facets;
  for (const auto& face : raw) {
    VertexSet s;
    for (long long v : face) s = s.with(static_cast<int>(v));
    facets.push_back(s);
  }
  return SimplicialComplex(static_cast<int>(m), facets);
}

inline SimplicialComplex complex_from_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return complex_from_json(doc);
}

inline SimplicialComplex load_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return complex_from_string(buf.str());
}

inline json complex_to_json(const SimplicialComplex& K) {
  json facets = json::array();
  for (VertexSet f : K.facets()) facets.push_back(vertex_set_to_json(f));
  return {{"m", K.m()}, {"facets", facets}};
}

inline json polynomial_terms_to_json(const FreePolynomial& p) {
  json terms = json::array();
  for (const auto& [w, c] : p.terms()) {
    json word = json::array();
    for (const auto& s : w) word.push_back(to_string(s));
    terms.push_back({{"coeff", integer_to_json(c)}, {"word", word}});
  }
  return terms;
}

/// Inverse of polynomial_terms_to_json.
inline FreePolynomial polynomial_from_terms_json(const json& terms, const CoefficientRing& ring) {
  FreePolynomial p = FreePolynomial::zero(ring);
  for (const auto& t : terms) {
    Word w;
    for (const auto& s : t.at("word")) w.push_back(parse_symbol(s.get<std::string>()));
    const auto& c = t.at("coeff");
    p.add_term(w, c.is_string() ? Integer(c.get<std::string>()) : Integer(c.get<long>()));
  }
  return p;
}

inline json cycle_to_json(const SimplicialCycle& kappa) {
  json out = json::array();
  for (const auto& [face, c] : kappa.terms) out.push_back({{"face", vertex_set_to_json(face)}, {"coeff", integer_to_json(c)}});
  return out;
}

inline const char* grading_name(Grading g) { return g == Grading::Multigraded ? "multi" : "z"; }

inline json presentation_to_json(const Presentation& P) {
  json gens = json::array();
  for (const auto& g : P.generators)
    gens.push_back({{"J", vertex_set_to_json(g.J)},
                    {"i", g.i},
                    {"degree", g.degree()},
                    {"symbol", to_string(g.symbol)},
                    {"value", g.value.to_string()}});
  json rels = json::array();
  for (const auto& r : P.relations)
    rels.push_back({{"J", vertex_set_to_json(r.J)},
                    {"degree", r.degree()},
                    {"order", integer_to_json(r.order)},
                    {"cycle", cycle_to_json(r.source_cycle)},
                    {"rendering", r.to_string()},
                    {"terms", polynomial_terms_to_json(r.poly)}});
  json out = {{"ring", P.ring.name()},
              {"grading", grading_name(P.grading)},
              {"generator_count", P.generators.size()},
              {"relation_count", P.relation_count()},
              {"generators", gens},
              {"relations", rels}};
  if (P.grading == Grading::ZGraded) {
    json merged = json::array();
    for (const auto& r : P.merged) {
      json parts = json::array();
      for (const auto& [k, s] : r.constituents) parts.push_back({{"relation", k}, {"scale", integer_to_json(s)}});
      merged.push_back({{"degree", r.degree},
                        {"order", integer_to_json(r.order)},
                        {"constituents", parts},
                        {"terms", polynomial_terms_to_json(r.poly)}});
    }
    out["merged_relations"] = merged;
  }
  json gen_deg = json::object(), rel_deg = json::object();
  for (const auto& [n, c] : P.certificate.generators_by_degree)
    if (c) gen_deg[std::to_string(n)] = c;
  const auto& rel_src = P.grading == Grading::Multigraded ? P.certificate.multigraded_relations_by_degree
                                                          : P.certificate.zgraded_relations_by_degree;
  for (const auto& [n, c] : rel_src)
    if (c) rel_deg[std::to_string(n)] = c;
  out["certificate"] = {{"generators_by_degree", gen_deg}, {"relations_by_degree", rel_deg}};
  return out;
}

inline json series_to_json(const Series& s) {
  json out = json::array();
  for (const auto& c : s) out.push_back(integer_to_json(c));
  return out;
}

inline json multiplicity_report_to_json(const MultiplicityReport& rep) {
  json D = json::object(), ranks = json::object();
  for (const auto& [n, d] : rep.D)
    if (sgn(d) != 0) D[std::to_string(n)] = integer_to_json(d);
  for (const auto& [N, r] : rep.rational_ranks) ranks[std::to_string(N)] = integer_to_json(r);
  return {{"P", series_to_json(rep.P)},
          {"euler_identity", rep.identity.equal},
          {"D", D},
          {"product_matches", rep.product_matches},
          {"poincare", series_to_json(rep.poincare)},
          {"rational_ranks", ranks}};
}

inline json verify_report_to_json(const VerifyReport& rep) {
  return {{"passed", rep.passed()},
          {"generators", {{"checked", rep.generators_checked}, {"failed", rep.generators_failed}}},
          {"rewrites", {{"checked", rep.rewrites_checked}, {"failed", rep.rewrites_failed}}},
          {"relations", {{"checked", rep.relations_checked}, {"failed", rep.relations_failed}}},
          {"counts_ok", rep.counts_ok},
          {"failures", rep.failures}};
}

}  // namespace looppres::io
