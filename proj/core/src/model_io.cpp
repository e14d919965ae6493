#include "sirus/model_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sirus/errors.hpp"

namespace sirus {

namespace {

using nlohmann::json;  // keys serialize sorted; doubles as shortest round-trip

json grid_to_json(const QuantileGrid& g) {
  json cuts = json::array();
  for (const auto& cj : g.cuts) {
    json fj = json::array();
    for (const Cut& c : cj) fj.push_back({{"r", c.r}, {"value", c.value}});
    cuts.push_back(std::move(fj));
  }
  return {{"q", g.q}, {"cuts", std::move(cuts)}};
}

QuantileGrid grid_from_json(const json& j) {
  QuantileGrid g;
  g.q = j.at("q").get<int>();
  for (const auto& fj : j.at("cuts")) {
    std::vector<Cut> cj;
    for (const auto& c : fj) cj.push_back({c.at("r").get<int>(), c.at("value").get<double>()});
    g.cuts.push_back(std::move(cj));
  }
  return g;
}

json pre_to_json(const PreprocessMap& pm) {
  json sources = json::array();
  for (const SourceColumn& sc : pm.sources) {
    json sj = {{"name", sc.name},
               {"kind", sc.kind == ColumnKind::numeric ? "numeric" : "categorical"}};
    if (sc.kind == ColumnKind::numeric)
      sj["median"] = sc.median;
    else
      sj["levels"] = sc.levels;
    sources.push_back(std::move(sj));
  }
  return {{"label_column", pm.label_column},
          {"negative_label", pm.negative_label},
          {"positive_label", pm.positive_label},
          {"sources", std::move(sources)},
          {"feature_names", pm.feature_names}};
}

PreprocessMap pre_from_json(const json& j) {
  PreprocessMap pm;
  pm.label_column = j.at("label_column").get<std::string>();
  pm.negative_label = j.at("negative_label").get<std::string>();
  pm.positive_label = j.at("positive_label").get<std::string>();
  for (const auto& sj : j.at("sources")) {
    SourceColumn sc;
    sc.name = sj.at("name").get<std::string>();
    if (sj.at("kind").get<std::string>() == "numeric") {
      sc.kind = ColumnKind::numeric;
      sc.median = sj.at("median").get<double>();
    } else {
      sc.kind = ColumnKind::categorical;
      sc.levels = sj.at("levels").get<std::vector<std::string>>();
    }
    pm.sources.push_back(std::move(sc));
  }
  pm.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  return pm;
}

}  // namespace

std::string model_to_text(const SirusModel& model) {
  json rules = json::array();
  for (const Rule& r : model.rules) {
    json splits = json::array();
    for (int s = 0; s < r.path.len; ++s)
      splits.push_back({{"j", r.path.s[s].j},
                        {"r", r.path.s[s].r},
                        {"side", r.path.s[s].side == Side::L ? "L" : "R"}});
    rules.push_back({{"path", std::move(splits)},
                     {"out_inside", r.out_inside},
                     {"out_outside", r.out_outside},
                     {"n_inside", r.n_inside},
                     {"phat", r.phat}});
  }
  json doc = {{"format_version", 1},
              {"preprocess", pre_to_json(model.pre)},
              {"grid", grid_to_json(model.grid)},
              {"rules", std::move(rules)},
              {"p0", model.p0},
              {"M", model.M},
              {"seed", model.seed},
              {"threshold", model.threshold},
              {"prevalence", model.prevalence}};
  return doc.dump(2) + "\n";
}

SirusModel model_from_text(const std::string& text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("format_version").get<int>() != 1)
      throw DataError("model file: unsupported format version");
    SirusModel m;
    m.pre = pre_from_json(doc.at("preprocess"));
    m.grid = grid_from_json(doc.at("grid"));
    for (const auto& rj : doc.at("rules")) {
      const auto& splits = rj.at("path");
      Path path;
      if (splits.size() == 1) {
        const auto& s0 = splits[0];
        path = Path::single({s0.at("j").get<int>(), s0.at("r").get<int>(),
                             s0.at("side").get<std::string>() == "L" ? Side::L : Side::R});
      } else if (splits.size() == 2) {
        const auto& s0 = splits[0];
        const auto& s1 = splits[1];
        path = Path::duo({s0.at("j").get<int>(), s0.at("r").get<int>(),
                          s0.at("side").get<std::string>() == "L" ? Side::L : Side::R},
                         {s1.at("j").get<int>(), s1.at("r").get<int>(),
                          s1.at("side").get<std::string>() == "L" ? Side::L : Side::R});
      } else {
        throw DataError("model file: rule path must have 1 or 2 splits");
      }
      Rule r;
      r.path = path;
      for (int s = 0; s < path.len; ++s)
        r.conds.push_back({path.s[s].j, path.s[s].r, m.grid.value_of(path.s[s].j, path.s[s].r),
                           path.s[s].side});
      r.out_inside = rj.at("out_inside").get<double>();
      r.out_outside = rj.at("out_outside").get<double>();
      r.n_inside = rj.at("n_inside").get<long long>();
      r.phat = rj.at("phat").get<double>();
      m.rules.push_back(std::move(r));
    }
    m.p0 = doc.at("p0").get<double>();
    m.M = doc.at("M").get<long long>();
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.threshold = doc.at("threshold").get<double>();
    m.prevalence = doc.at("prevalence").get<double>();
    return m;
  } catch (const DataError&) {
    throw;
  } catch (const std::exception& e) {
    throw DataError(std::string("model file: ") + e.what());
  }
}

void save_model(const SirusModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << model_to_text(model);
  if (!out) throw DataError("write failed: " + path);
}

SirusModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return model_from_text(ss.str());
}

}  // namespace sirus
