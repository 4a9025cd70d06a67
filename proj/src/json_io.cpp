#include "trusskit/json_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include <json.hpp>

namespace trusskit {

using json = nlohmann::ordered_json;

long long max_total_guard() {
  if (const char* env = std::getenv("TRUSSKIT_MAX_TOTAL")) {
    long long v = std::atoll(env);
    if (v > 0) return v;
  }
  return 100000;
}

namespace {

json poset_json(const Poset& p) {
  json j;
  j["elements"] = json::array();
  for (int i = 0; i < p.size(); ++i) j["elements"].push_back(p.name(i));
  j["covers"] = json::array();
  std::vector<std::pair<std::string, std::string>> covers;
  for (auto [a, b] : p.covers()) covers.push_back({p.name(a), p.name(b)});
  std::sort(covers.begin(), covers.end());
  for (auto& [a, b] : covers) j["covers"].push_back(json::array({a, b}));
  return j;
}

Poset poset_from(const json& j, const std::string& where) {
  check(j.is_object() && j.contains("elements") && j.contains("covers"), "SchemaError",
        where + ": expected {elements, covers}");
  std::vector<std::string> elements;
  for (const auto& e : j.at("elements")) {
    check(e.is_string(), "SchemaError", where + "/elements: names must be strings");
    elements.push_back(e.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& c : j.at("covers")) {
    check(c.is_array() && c.size() == 2, "SchemaError", where + "/covers: expected pairs");
    covers.push_back({c.at(0).get<std::string>(), c.at(1).get<std::string>()});
  }
  return Poset::build(std::move(elements), covers);
}

json truss_json(const TrussBundle& b) {
  json j;
  j["n"] = b.n();
  if (!b.base_is_point()) j["base"] = poset_json(b.base());
  j["levels"] = json::array();
  for (int i = 1; i <= b.n(); ++i) {
    json lvl;
    std::map<std::string, std::string> fibers;
    for (int p = 0; p < b.total_size(i - 1); ++p)
      fibers[b.total_poset(i - 1).name(p)] = b.level(i).fibers[static_cast<size_t>(p)].word();
    lvl["fibers"] = json::object();
    for (auto& [k, v] : fibers) lvl["fibers"][k] = v;
    std::map<std::string, json> bords;
    for (const auto& [cov, bord] : b.level(i).bordisms) {
      std::string key =
          b.total_poset(i - 1).name(cov.first) + ">" + b.total_poset(i - 1).name(cov.second);
      json pairs = json::array();
      for (auto [t, s] : bord.pairs()) pairs.push_back(json::array({t, s}));
      bords[key] = pairs;
    }
    lvl["bordisms"] = json::object();
    for (auto& [k, v] : bords) lvl["bordisms"][k] = v;
    j["levels"].push_back(lvl);
  }
  return j;
}

TrussBundle truss_from(const json& j, const std::string& where) {
  check(j.contains("n") && j.contains("levels"), "SchemaError", where + ": expected {n, levels}");
  int n = j.at("n").get<int>();
  Poset base = j.contains("base") ? poset_from(j.at("base"), where + "/base") : Poset::point();
  check(j.at("levels").is_array() && static_cast<int>(j.at("levels").size()) == n, "SchemaError",
        where + "/levels: expected " + std::to_string(n) + " levels");
  std::vector<LevelData> levels;
  long long total = base.size();
  for (int i = 1; i <= n; ++i) {
    TrussBundle prefix = TrussBundle::make(base, levels);
    const Poset& parent = prefix.total_poset(i - 1);
    const json& lvl = j.at("levels").at(static_cast<size_t>(i - 1));
    check(lvl.contains("fibers") && lvl.contains("bordisms"), "SchemaError",
          where + "/levels/" + std::to_string(i - 1) + ": expected {fibers, bordisms}");
    LevelData ld;
    for (int p = 0; p < parent.size(); ++p) {
      const std::string key = parent.name(p);
      check(lvl.at("fibers").contains(key), "SchemaError",
            where + ": missing fiber over '" + key + "'");
      ld.fibers.push_back(Fiber::parse(lvl.at("fibers").at(key).get<std::string>()));
      total += ld.fibers.back().size();
    }
    check(total <= max_total_guard(), "SizeBoundExceeded", "document exceeds TRUSSKIT_MAX_TOTAL");
    for (const auto& [key, pairs] : lvl.at("bordisms").items()) {
      size_t gt = key.find('>');
      check(gt != std::string::npos, "SchemaError", where + ": malformed cover key '" + key + "'");
      int a = parent.index(key.substr(0, gt));
      int b = parent.index(key.substr(gt + 1));
      check(a >= 0 && b >= 0, "SchemaError", where + ": cover key names unknown element");
      std::vector<std::pair<int, int>> gen;
      for (const auto& pr : pairs) {
        check(pr.is_array() && pr.size() == 2, "SchemaError", where + ": bordism pairs");
        gen.push_back({pr.at(0).get<int>(), pr.at(1).get<int>()});
      }
      ld.bordisms.insert({{a, b}, Bordism::make(ld.fibers[static_cast<size_t>(a)],
                                                ld.fibers[static_cast<size_t>(b)], gen)});
    }
    levels.push_back(std::move(ld));
  }
  return TrussBundle::make(std::move(base), std::move(levels));
}

json strat_json(const StratTruss& st) {
  json j = truss_json(st.bundle());
  j["label_poset"] = poset_json(st.label_poset());
  const TrussBundle& b = st.bundle();
  std::map<std::string, std::string> lab;
  for (int e = 0; e < b.total_size(b.n()); ++e)
    lab[b.total_poset(b.n()).name(e)] = st.label_poset().name(st.label_of(e));
  j["labeling"] = json::object();
  for (auto& [k, v] : lab) j["labeling"][k] = v;
  return j;
}

StratTruss strat_from(const json& j, const std::string& where) {
  TrussBundle b = truss_from(j, where);
  check(j.contains("label_poset") && j.contains("labeling"), "SchemaError",
        where + ": expected {label_poset, labeling}");
  Poset lp = poset_from(j.at("label_poset"), where + "/label_poset");
  std::vector<int> lab(static_cast<size_t>(b.total_size(b.n())));
  for (int e = 0; e < b.total_size(b.n()); ++e) {
    const std::string key = b.total_poset(b.n()).name(e);
    check(j.at("labeling").contains(key), "SchemaError", where + ": missing label for '" + key + "'");
    lab[static_cast<size_t>(e)] = lp.index_checked(j.at("labeling").at(key).get<std::string>());
  }
  return StratTruss::make(std::move(b), std::move(lp), std::move(lab));
}

json tangle_json(const TrussBundle& b, const std::vector<int>& q, int m) {
  json j = truss_json(b);
  std::vector<std::string> keys;
  for (int e : q) keys.push_back(b.total_poset(b.n()).name(e));
  std::sort(keys.begin(), keys.end());
  j["Q"] = json::array();
  for (auto& k : keys) j["Q"].push_back(k);
  j["m"] = m;
  return j;
}

std::pair<std::vector<int>, int> tangle_data_from(const json& j, const TrussBundle& b,
                                                  const std::string& where) {
  check(j.contains("Q") && j.contains("m"), "SchemaError", where + ": expected {Q, m}");
  std::vector<int> q;
  for (const auto& k : j.at("Q")) {
    int e = b.total_poset(b.n()).index(k.get<std::string>());
    check(e >= 0, "SchemaError", where + ": Q names unknown element '" + k.get<std::string>() + "'");
    q.push_back(e);
  }
  return {q, j.at("m").get<int>()};
}

}  // namespace

std::string serialize(const Document& doc) {
  json j;
  j["kind"] = doc.kind;
  j["format_version"] = 1;
  if (doc.kind == "poset") {
    json p = poset_json(*doc.poset);
    j.update(p);
  } else if (doc.kind == "truss") {
    j.update(truss_json(*doc.truss));
  } else if (doc.kind == "strat") {
    j.update(strat_json(*doc.strat));
  } else if (doc.kind == "tangle") {
    j.update(tangle_json(doc.tangle->bundle(), doc.tangle->q(), doc.tangle->m()));
  } else if (doc.kind == "bundle" || doc.kind == "certificate") {
    j.update(tangle_json(doc.bundle->bundle(), doc.bundle->q(), doc.bundle->m()));
  } else {
    fail("SchemaError", "unknown document kind '" + doc.kind + "'");
  }
  return j.dump(1) + "\n";
}

Document parse_document(const std::string& bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const std::exception& e) {
    fail("SchemaError", std::string("invalid JSON: ") + e.what());
  }
  check(j.is_object() && j.contains("kind"), "SchemaError", "document needs a 'kind'");
  Document doc;
  doc.kind = j.at("kind").get<std::string>();
  if (j.contains("format_version"))
    check(j.at("format_version").get<int>() == 1, "SchemaError", "unsupported format_version");
  if (doc.kind == "poset") {
    doc.poset = poset_from(j, "poset");
  } else if (doc.kind == "truss") {
    doc.truss = truss_from(j, "truss");
  } else if (doc.kind == "strat") {
    doc.strat = strat_from(j, "strat");
  } else if (doc.kind == "tangle") {
    TrussBundle b = truss_from(j, "tangle");
    auto [q, m] = tangle_data_from(j, b, "tangle");
    doc.tangle = TanglePresentation::make(std::move(b), q, m);
  } else if (doc.kind == "bundle" || doc.kind == "certificate") {
    TrussBundle b = truss_from(j, doc.kind);
    auto [q, m] = tangle_data_from(j, b, doc.kind);
    doc.bundle = TangleBundle::make(std::move(b), q, m);
    if (doc.kind == "certificate")
      check(doc.bundle->bundle().base().size() == 2, "ValidationError",
            "certificates are bundles over the 1-simplex");
  } else {
    fail("SchemaError", "unknown document kind '" + doc.kind + "'");
  }
  return doc;
}

Document doc_of(Poset p) {
  Document d;
  d.kind = "poset";
  d.poset = std::move(p);
  return d;
}
Document doc_of(TrussBundle t) {
  Document d;
  d.kind = "truss";
  d.truss = std::move(t);
  return d;
}
Document doc_of(StratTruss st) {
  Document d;
  d.kind = "strat";
  d.strat = std::move(st);
  return d;
}
Document doc_of(TanglePresentation tp) {
  Document d;
  d.kind = "tangle";
  d.tangle = std::move(tp);
  return d;
}
Document doc_of(TangleBundle tb, bool certificate) {
  Document d;
  d.kind = certificate ? "certificate" : "bundle";
  d.bundle = std::move(tb);
  return d;
}

}  // namespace trusskit
