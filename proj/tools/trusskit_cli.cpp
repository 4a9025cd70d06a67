#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "trusskit/diagram.hpp"
#include "trusskit/json_io.hpp"
#include "trusskit/render.hpp"

using namespace trusskit;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  check(in.good(), "SchemaError", "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Document load(const std::string& path) { return parse_document(slurp(path)); }

StratTruss as_strat(const Document& d) {
  if (d.strat) return *d.strat;
  if (d.tangle) return d.tangle->strat();
  if (d.truss) return StratTruss::trivial(*d.truss);
  if (d.bundle) return d.bundle->strat();
  fail("ValidationError", "document has no stratified content");
}

TanglePresentation as_tangle(const Document& d, int m_flag) {
  if (d.tangle) {
    check(m_flag < 0 || m_flag == d.tangle->m(), "ValidationError",
          "--m disagrees with the document");
    return *d.tangle;
  }
  fail("ValidationError", "expected a tangle document");
}

// Normal form of a tangle: transport Q through the witness coarsening.
TanglePresentation normalize_tangle(const TanglePresentation& tp) {
  NormalizeResult nr = normalize(tp.strat());
  std::vector<int> q;
  for (int x : tp.q()) q.push_back(nr.witness.level_map.back()[static_cast<size_t>(x)]);
  return TanglePresentation::make(nr.nf.bundle(), q, tp.m());
}

int run(int argc, char** argv) {
  CLI::App app{"trusskit: truss calculus for framed combinatorial topology"};
  app.require_subcommand(1);
  bool json_out = false;
  long long seed = 0;  // reserved; no semantic effect
  app.add_flag("--json", json_out, "machine-readable output");
  app.add_option("--seed", seed, "reserved");

  std::string file, file_b, stratum_id, dir = "";
  int m_flag = -1, dir_k = 1, enum_n = 1, enum_max = 4, tangle_m = -1;
  int max_q = 4, max_total = 16;
  bool compact = false, twice = false, inductive = false, slices = false;

  auto* validate = app.add_subcommand("validate", "parse and validate a document");
  validate->add_option("file", file)->required();

  auto* normalize_cmd = app.add_subcommand("normalize", "emit the normal form");
  normalize_cmd->add_option("file", file)->required();

  auto* dual_cmd = app.add_subcommand("dual", "emit the dual");
  dual_cmd->add_option("file", file)->required();
  dual_cmd->add_flag("--twice", twice, "apply dualization twice");

  auto* compactify_cmd = app.add_subcommand("compactify", "cubical compactification");
  compactify_cmd->add_option("file", file)->required();

  auto* interior_cmd = app.add_subcommand("interior", "interior of a closed document");
  interior_cmd->add_option("file", file)->required();

  auto* glue_cmd = app.add_subcommand("glue", "glue two stratified trusses");
  glue_cmd->add_option("a", file)->required();
  glue_cmd->add_option("b", file_b)->required();
  glue_cmd->add_option("--dir", dir_k, "categorical direction k");

  auto* checkd = app.add_subcommand("check-diagram", "manifold/cell diagram recognition");
  checkd->add_option("file", file)->required();
  checkd->add_flag("--compact", compact);

  auto* checkt = app.add_subcommand("check-tangle", "tangle recognition");
  checkt->add_option("file", file)->required();
  checkt->add_option("--m", m_flag, "expected tangle dimension");

  auto* tstr_cmd = app.add_subcommand("tstr", "transversal stratification");
  tstr_cmd->add_option("file", file)->required();

  auto* link_cmd = app.add_subcommand("link", "canonical link of a stratum");
  link_cmd->add_option("file", file)->required();
  link_cmd->add_option("--stratum", stratum_id, "stratum id (s<i>)")->required();

  auto* cells_cmd = app.add_subcommand("cells", "cell report / cell structure");
  cells_cmd->add_option("file", file)->required();

  auto* dcells_cmd = app.add_subcommand("dual-cells", "dual cell structure of a tangle");
  dcells_cmd->add_option("file", file)->required();

  auto* cx_cmd = app.add_subcommand("complexity", "tangle complexity #Q");
  cx_cmd->add_option("file", file)->required();

  auto* enum_cmd = app.add_subcommand("enumerate", "enumerate trusses or tangles");
  enum_cmd->add_option("--n", enum_n)->required();
  enum_cmd->add_option("--max-size", enum_max)->required();
  enum_cmd->add_option("--tangle", tangle_m, "enumerate m-tangles");

  auto* perturb = app.add_subcommand("perturb", "perturbation operations");
  auto* pverify = perturb->add_subcommand("verify", "verify a certificate");
  pverify->add_option("file", file)->required();
  auto* pcompose = perturb->add_subcommand("compose", "compose two certificates");
  pcompose->add_option("a", file)->required();
  pcompose->add_option("b", file_b)->required();
  auto* psearch = perturb->add_subcommand("search", "search for a certificate");
  psearch->add_option("file", file)->required();
  psearch->add_option("--max-q", max_q);
  psearch->add_option("--max-total", max_total);

  auto* stable_cmd = app.add_subcommand("stable", "bounded stability verdict");
  stable_cmd->add_option("file", file)->required();
  stable_cmd->add_flag("--inductive", inductive);
  stable_cmd->add_option("--max-q", max_q);
  stable_cmd->add_option("--max-total", max_total);

  auto* render_cmd = app.add_subcommand("render", "render SVG (n <= 2)");
  render_cmd->add_option("file", file)->required();
  render_cmd->add_flag("--slices", slices, "textual level dump instead of SVG");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  }

  if (validate->parsed()) {
    Document d = load(file);
    std::cout << "{\"ok\":true,\"kind\":\"" << d.kind << "\"}\n";
    return 0;
  }
  if (normalize_cmd->parsed()) {
    Document d = load(file);
    if (d.tangle)
      std::cout << serialize(doc_of(normalize_tangle(*d.tangle)));
    else
      std::cout << serialize(doc_of(normalize(as_strat(d)).nf));
    return 0;
  }
  if (dual_cmd->parsed()) {
    Document d = load(file);
    if (d.truss) {
      TrussBundle t = twice ? d.truss->dual().dual() : d.truss->dual();
      std::cout << serialize(doc_of(t));
    } else if (d.tangle && twice) {
      // dual of the dual: back to a tangle on the nose
      TanglePresentation tp = TanglePresentation::make(
          d.tangle->bundle().dual().dual(), d.tangle->q(), d.tangle->m());
      std::cout << serialize(doc_of(tp));
    } else {
      StratTruss s = twice ? as_strat(d).dual().dual() : as_strat(d).dual();
      std::cout << serialize(doc_of(s));
    }
    return 0;
  }
  if (compactify_cmd->parsed()) {
    Document d = load(file);
    if (d.tangle) {
      auto [comp, retract] = d.tangle->strat().compactified_with_retract();
      std::vector<int> qbar;
      for (size_t e = 0; e < retract.size(); ++e)
        if (d.tangle->in_q(retract[e])) qbar.push_back(static_cast<int>(e));
      std::cout << serialize(doc_of(TanglePresentation::make(comp.bundle(), qbar, d.tangle->m())));
    } else {
      std::cout << serialize(doc_of(as_strat(d).compactified()));
    }
    return 0;
  }
  if (interior_cmd->parsed()) {
    Document d = load(file);
    if (d.tangle) {
      StratTruss inner = d.tangle->strat().interior();
      int in_q = inner.label_poset().index("0");
      std::vector<int> q;
      for (int e = 0; e < inner.bundle().total_size(inner.bundle().n()); ++e)
        if (inner.label_of(e) == in_q) q.push_back(e);
      std::cout << serialize(doc_of(TanglePresentation::make(inner.bundle(), q, d.tangle->m())));
    } else {
      std::cout << serialize(doc_of(as_strat(d).interior()));
    }
    return 0;
  }
  if (glue_cmd->parsed()) {
    StratTruss a = as_strat(load(file));
    StratTruss b = as_strat(load(file_b));
    auto [ra, rb] = match_sides(a, b, dir_k);
    std::cout << serialize(doc_of(glue(ra, rb, dir_k)));
    return 0;
  }
  if (checkd->parsed()) {
    StratTruss st = as_strat(load(file));
    DiagramReport rep = compact ? is_compact_manifold_diagram(st) : is_manifold_diagram(st);
    std::cout << "{\"verdict\":\"" << (rep.yes ? "yes" : "no") << "\"";
    if (!rep.yes) std::cout << ",\"reason\":\"" << rep.reason << "\"";
    if (rep.yes) {
      std::cout << ",\"elements\":[";
      for (size_t i = 0; i < rep.elements.size(); ++i)
        std::cout << (i ? "," : "") << "{\"k\":" << rep.elements[i].k << "}";
      std::cout << "]";
    }
    std::cout << "}\n";
    return rep.yes ? 0 : 1;
  }
  if (checkt->parsed()) {
    TanglePresentation tp = as_tangle(load(file), m_flag);
    TangleReport rep = is_tangle(tp);
    const Poset& top = tp.bundle().total_poset(tp.bundle().n());
    std::cout << "{\"verdict\":\"" << to_string(rep.verdict) << "\"";
    if (rep.verdict == Verdict::No) std::cout << ",\"reason\":\"" << rep.reason << "\"";
    if (rep.verdict != Verdict::No) {
      std::cout << ",\"tdim\":{";
      bool first = true;
      for (auto [x, k] : rep.tdim) {
        std::cout << (first ? "" : ",") << "\"" << top.name(x) << "\":" << k;
        first = false;
      }
      std::cout << "}";
    }
    std::cout << "}\n";
    return rep.verdict == Verdict::Yes ? 0 : (rep.verdict == Verdict::Unknown ? 2 : 1);
  }
  if (tstr_cmd->parsed()) {
    TanglePresentation tp = as_tangle(load(file), -1);
    std::cout << serialize(doc_of(tstr(tp)));
    return 0;
  }
  if (link_cmd->parsed()) {
    StratTruss st = as_strat(load(file));
    int s = st.entr().index_checked(stratum_id);
    LabeledPoset lp = canonical_link(st, s);
    std::string poset_doc = serialize(doc_of(lp.poset));
    while (!poset_doc.empty() && poset_doc.back() == '\n') poset_doc.pop_back();
    std::cout << "{\"poset\":" << poset_doc << ",\"labels\":[";
    for (size_t i = 0; i < lp.labels.size(); ++i)
      std::cout << (i ? "," : "") << lp.labels[i];
    std::cout << "]}\n";
    return 0;
  }
  if (cells_cmd->parsed()) {
    Document d = load(file);
    if (d.tangle) {
      CellStructure cs = cell_structure(*d.tangle);
      std::cout << "{\"cellular\":\"" << to_string(cs.cellular) << "\",\"euler\":" << cs.euler
                << ",\"cells\":" << cs.cells.size() << "}\n";
      return 0;
    }
    StratTruss st = as_strat(d);
    auto cells = cells_report(st);
    std::cout << "[";
    for (size_t i = 0; i < cells.size(); ++i) {
      std::cout << (i ? "," : "") << "{\"element\":\""
                << st.bundle().total_poset(st.bundle().n()).name(cells[i].element)
                << "\",\"dim\":" << cells[i].dim
                << ",\"degenerate\":" << (cells[i].degenerate ? "true" : "false") << "}";
    }
    std::cout << "]\n";
    return 0;
  }
  if (dcells_cmd->parsed()) {
    TanglePresentation tp = as_tangle(load(file), -1);
    CellStructure cs = dual_cell_structure(tp);
    std::cout << "{\"cellular\":\"" << to_string(cs.cellular) << "\",\"euler\":" << cs.euler
              << ",\"cells\":" << cs.cells.size() << "}\n";
    return 0;
  }
  if (cx_cmd->parsed()) {
    TanglePresentation tp = as_tangle(load(file), -1);
    std::cout << complexity(tp) << "\n";
    return 0;
  }
  if (enum_cmd->parsed()) {
    if (tangle_m >= 0) {
      for (const auto& tp : enumerate_tangles(enum_n, enum_max, tangle_m)) {
        std::string s = serialize(doc_of(tp));
        std::replace(s.begin(), s.end(), '\n', ' ');
        std::cout << s << "\n";
      }
    } else {
      for (const auto& t : enumerate_trusses(enum_n, enum_max)) {
        std::string s = serialize(doc_of(t));
        std::replace(s.begin(), s.end(), '\n', ' ');
        std::cout << s << "\n";
      }
    }
    return 0;
  }
  if (pverify->parsed()) {
    Document d = load(file);
    check(d.bundle.has_value(), "ValidationError", "expected a certificate document");
    std::string diag;
    bool ok = verify_perturbation(Perturbation(*d.bundle), &diag);
    std::cout << "{\"verified\":" << (ok ? "true" : "false")
              << (diag.empty() ? "" : ",\"reason\":\"" + diag + "\"") << "}\n";
    return ok ? 0 : 1;
  }
  if (pcompose->parsed()) {
    Document da = load(file), db = load(file_b);
    check(da.bundle && db.bundle, "ValidationError", "expected certificate documents");
    Perturbation c = compose_perturbations(Perturbation(*da.bundle), Perturbation(*db.bundle));
    std::cout << serialize(doc_of(c.tangle_bundle(), true));
    return verify_perturbation(c) ? 0 : 1;
  }
  if (psearch->parsed()) {
    TanglePresentation tp = as_tangle(load(file), -1);
    SearchBounds bounds;
    bounds.max_generic_q = max_q;
    bounds.max_total = max_total;
    SearchResult res = search_perturbation(tp, bounds);
    if (res.status == SearchStatus::Found) {
      std::cout << serialize(doc_of(res.certificate->tangle_bundle(), true));
      return 0;
    }
    std::cout << "{\"status\":\""
              << (res.status == SearchStatus::None ? "none" : "inconclusive") << "\"}\n";
    return res.status == SearchStatus::None ? 1 : 2;
  }
  if (stable_cmd->parsed()) {
    TanglePresentation tp = as_tangle(load(file), -1);
    SearchBounds bounds;
    bounds.max_generic_q = max_q;
    bounds.max_total = max_total;
    StabilityResult st = stability(tp, bounds, inductive);
    std::cout << "{\"status\":\""
              << (st.status == StabilityStatus::StableWithinBounds
                      ? "stable_within_bounds"
                      : st.status == StabilityStatus::Unstable ? "unstable" : "inconclusive")
              << "\"";
    if (st.inductively_stable)
      std::cout << ",\"inductively_stable\":" << (*st.inductively_stable ? "true" : "false");
    std::cout << "}\n";
    return st.status == StabilityStatus::StableWithinBounds
               ? 0
               : (st.status == StabilityStatus::Unstable ? 1 : 2);
  }
  if (render_cmd->parsed()) {
    Document d = load(file);
    StratTruss st = as_strat(d);
    if (slices || st.bundle().n() > 2) {
      check(slices, "DimensionUnsupported", "n >= 3: use --slices for textual dumps");
      const TrussBundle& b = st.bundle();
      for (int i = 1; i <= b.n(); ++i) {
        std::cout << "level " << i << ":";
        for (const auto& f : b.level(i).fibers) std::cout << " " << f.word();
        std::cout << "\n";
      }
      return 0;
    }
    std::vector<int> emph;
    if (d.tangle)
      emph.assign(d.tangle->q().begin(), d.tangle->q().end());
    std::cout << render_svg(st, emph);
    return 0;
  }
  return 64;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 65;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 65;
  }
}
