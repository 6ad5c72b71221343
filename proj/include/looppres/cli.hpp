#pragma once

// Subcommand implementations behind the looppres executable. Each returns
// the process exit code and writes its report to `out`.

#include <ostream>
#include <string>

#include "looppres/homotopy.hpp"
#include "looppres/io.hpp"
#include "looppres/pcalg.hpp"
#include "looppres/presentation.hpp"
#include "looppres/simplicial.hpp"

namespace looppres::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kParseError = 2, kNotFlag = 3 };

struct RunConfig {
  std::string input;
  CoefficientRing ring = CoefficientRing::integers();
  Grading grading = Grading::Multigraded;
  int trunc = 0;  ///< 0 selects the command's default
  bool json = false;
  bool skeleton_clique = false;
  unsigned jobs = 1;
};

/// Loads the input; replaces K by the clique complex of its 1-skeleton on request.
inline SimplicialComplex load(const RunConfig& cfg) {
  SimplicialComplex K = io::load_complex(cfg.input);
  return cfg.skeleton_clique ? K.clique_of_skeleton() : K;
}

inline void print_vector(std::ostream& out, const std::vector<Integer>& v) {
  out << "(";
  for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << v[k];
  out << ")";
}

inline int report_not_flag(const SimplicialComplex& K, const RunConfig& cfg, std::ostream& out) {
  const VertexSet w = *K.is_flag().witness;
  if (cfg.json)
    out << io::json{{"flag", false}, {"witness", io::vertex_set_to_json(w)}}.dump(2) << "\n";
  else
    out << "flag: false\nwitness: " << to_string(w) << " (minimal non-face)\n";
  return kNotFlag;
}

inline int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const SimplicialComplex K = load(cfg);
  if (!K.is_flag().flag) return report_not_flag(K, cfg, out);
  const auto fh = K.f_h_vectors();
  std::vector<std::tuple<VertexSet, std::size_t, ModuleInvariants>> rows;
  for_each_subset(K.vertices(), [&](VertexSet J) {
    if (J.empty()) return;
    const std::size_t b0 = static_cast<std::size_t>(K.theta_set(J).size());
    auto h1 = K.reduced_homology(J, cfg.ring, 2).invariants;
    if (b0 || !h1.is_zero()) rows.emplace_back(J, b0, h1);
  });
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return SizeThenMask{}(std::get<0>(a), std::get<0>(b)); });
  if (cfg.json) {
    io::json table = io::json::array();
    for (const auto& [J, b0, h1] : rows) {
      io::json tors = io::json::array();
      for (const auto& d : h1.torsion) tors.push_back(io::integer_to_json(d));
      table.push_back({{"J", io::vertex_set_to_json(J)}, {"b0", b0}, {"h1_rank", h1.rank}, {"h1_torsion", tors}});
    }
    out << io::json{{"m", K.m()},
                    {"flag", true},
                    {"dimension", K.dimension()},
                    {"f", io::series_to_json(fh.f)},
                    {"h", io::series_to_json(fh.h)},
                    {"ring", cfg.ring.name()},
                    {"subsets", table}}
               .dump(2)
        << "\n";
    return kOk;
  }
  out << "m: " << K.m() << "\nflag: true\ndimension: " << K.dimension() << "\nf: ";
  print_vector(out, fh.f);
  out << "\nh: ";
  print_vector(out, fh.h);
  out << "\nfull subcomplexes with reduced b0 > 0 or H1 != 0 over " << cfg.ring.name() << ":\n";
  for (const auto& [J, b0, h1] : rows) {
    out << "  " << to_string(J) << "  b0=" << b0 << "  H1=";
    std::string h;
    if (h1.rank) h += (cfg.ring.name() == "Z" ? "Z" : cfg.ring.name()) + (h1.rank > 1 ? "^" + std::to_string(h1.rank) : "");
    for (const auto& d : h1.torsion) h += (h.empty() ? "" : "+") + std::string("Z/") + d.get_str();
    out << (h.empty() ? "0" : h) << "\n";
  }
  return kOk;
}

inline int cmd_presentation(const RunConfig& cfg, std::ostream& out) {
  const SimplicialComplex K = load(cfg);
  if (!K.is_flag().flag) return report_not_flag(K, cfg, out);
  PresentationEngine engine(K, cfg.ring);
  const Presentation P = engine.build(cfg.grading, cfg.jobs);
  if (cfg.json) {
    out << io::presentation_to_json(P).dump(2) << "\n";
    return kOk;
  }
  out << "ring: " << P.ring.name() << "\ngrading: " << io::grading_name(P.grading) << "\n";
  out << "generators: " << P.generators.size() << "\n";
  for (const auto& g : P.generators) out << "  deg " << g.degree() << "  " << to_string(g.symbol) << "\n";
  out << "relations: " << P.relation_count() << "\n";
  if (P.grading == Grading::Multigraded) {
    for (const auto& r : P.relations) {
      out << "  J=" << to_string(r.J) << " deg " << r.degree();
      if (sgn(r.order) != 0) out << " order " << r.order;
      out << ":\n    " << r.to_string() << " = 0\n";
    }
  } else {
    for (const auto& r : P.merged) {
      out << "  deg " << r.degree << ":";
      for (const auto& [k, s] : r.constituents) out << " " << s << "*R(J=" << to_string(P.relations[k].J) << ")";
      out << "\n    " << r.poly.to_string() << " = 0\n";
    }
  }
  return kOk;
}

inline int cmd_homotopy(const RunConfig& cfg, std::ostream& out) {
  const SimplicialComplex K = load(cfg);
  if (!K.is_flag().flag) return report_not_flag(K, cfg, out);
  const int N = cfg.trunc > 0 ? cfg.trunc : 16;
  const auto rep = multiplicity_report(K, N);
  if (cfg.json) {
    out << io::multiplicity_report_to_json(rep).dump(2) << "\n";
    return kOk;
  }
  out << "P(t) = " << series::to_string(rep.P) << "\n";
  out << "euler identity: " << (rep.identity.equal ? "holds" : "FAILS") << "\n";
  out << "multiplicities (n <= " << N + 1 << "):\n";
  for (const auto& [n, d] : rep.D)
    if (sgn(d) != 0) out << "  D_" << n << " = " << d << "\n";
  out << "product re-expansion matches P mod t^" << N + 1 << ": " << (rep.product_matches ? "yes" : "no") << "\n";
  out << "loop homology Poincare series: " << series::to_string(rep.poincare) << " + O(t^" << N + 1 << ")\n";
  out << "rational homotopy ranks:\n";
  for (const auto& [k, r] : rep.rational_ranks)
    if (sgn(r) != 0) out << "  pi_" << k << " (x) Q: " << r << "\n";
  return kOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const SimplicialComplex K = load(cfg);
  if (!K.is_flag().flag) return report_not_flag(K, cfg, out);
  PresentationEngine engine(K, cfg.ring);
  const Presentation P = engine.build(cfg.grading, cfg.jobs);
  const VerifyReport rep = engine.verify(P, cfg.jobs);
  if (cfg.json) {
    out << io::verify_report_to_json(rep).dump(2) << "\n";
  } else {
    auto ok = [](std::size_t checked, std::size_t failed) { return std::to_string(checked - failed) + "/" + std::to_string(checked); };
    out << "generators: " << ok(rep.generators_checked, rep.generators_failed) << " match c(J\\i,u_i)\n";
    out << "rewrites: " << ok(rep.rewrites_checked, rep.rewrites_failed) << " evaluate to c(J\\i,u_i)\n";
    out << "relations: " << ok(rep.relations_checked, rep.relations_failed) << " vanish in k[K]!\n";
    out << "counts: " << (rep.counts_ok ? "match" : "MISMATCH") << "\n";
    for (const auto& f : rep.failures) out << "FAIL: " << f << "\n";
    out << (rep.passed() ? "all checks passed" : "verification failed") << "\n";
  }
  return rep.passed() ? kOk : kFailed;
}

inline int cmd_hilbert(const RunConfig& cfg, std::ostream& out) {
  const SimplicialComplex K = load(cfg);
  if (!K.is_flag().flag) return report_not_flag(K, cfg, out);
  const int N = cfg.trunc > 0 ? cfg.trunc : 8;
  const PCAlgebra alg(K, cfg.ring);
  const Series dims = alg.graded_dimensions(N);
  const Series loop = loop_poincare_series(K, N);
  const Series expected = series::multiply(loop, series::power({1, 1}, K.m()), static_cast<std::size_t>(N));
  const bool match = dims == series::truncated(expected, static_cast<std::size_t>(N));
  if (cfg.json) {
    out << io::json{{"dimensions", io::series_to_json(dims)},
                    {"expected", io::series_to_json(series::truncated(expected, static_cast<std::size_t>(N)))},
                    {"loop_homology", io::series_to_json(loop)},
                    {"match", match}}
               .dump(2)
        << "\n";
  } else {
    out << "degree  dim k[K]!  (1+t)^m/P  dim H(OmegaZ_K)\n";
    for (int k = 0; k <= N; ++k)
      out << "  " << k << "  " << dims[static_cast<std::size_t>(k)] << "  " << expected[static_cast<std::size_t>(k)]
          << "  " << loop[static_cast<std::size_t>(k)] << "\n";
    out << "match: " << (match ? "yes" : "no") << "\n";
  }
  return match ? kOk : kFailed;
}

/// Dispatches a subcommand, mapping library errors to exit codes.
inline int run(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (command == "analyze") return cmd_analyze(cfg, out);
    if (command == "presentation") return cmd_presentation(cfg, out);
    if (command == "homotopy") return cmd_homotopy(cfg, out);
    if (command == "verify") return cmd_verify(cfg, out);
    if (command == "hilbert") return cmd_hilbert(cfg, out);
    err << "unknown command " << command << "\n";
    return kParseError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const InvalidComplex& e) {
    err << "invalid complex: " << e.what() << "\n";
    return kParseError;
  } catch (const NotFlag& e) {
    err << "not flag: " << e.what() << "\n";
    return kNotFlag;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
}

}  // namespace looppres::cli
