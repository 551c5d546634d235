#include "ergm/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace ergm {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw std::runtime_error("config: " + where + " must be an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key))
      throw std::runtime_error("config: unknown key '" + key + "' in " + where);
}

}  // namespace

MotifGraph motif_from_name(const std::string& name) {
  if (name == "edge") return single_edge();
  if (name == "wedge" || name == "path3") return wedge();
  if (name == "triangle") return triangle();
  if (name.rfind("path", 0) == 0) return path_graph(std::stoi(name.substr(4)));
  if (name.rfind("star", 0) == 0) return star_graph(std::stoi(name.substr(4)));
  if (name.rfind("cycle", 0) == 0) return cycle_graph(std::stoi(name.substr(5)));
  if (name.rfind("k", 0) == 0) return complete_graph(std::stoi(name.substr(1)));
  throw std::runtime_error("config: unknown motif name '" + name + "'");
}

MotifGraph motif_from_json(const nlohmann::json& j) {
  if (j.is_string()) return motif_from_name(j.get<std::string>());
  if (!j.is_array() || j.empty())
    throw std::runtime_error("config: motif must be a name or a nonempty edge array");
  std::vector<std::pair<int, int>> edges;
  int max_vertex = 0;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2)
      throw std::runtime_error("config: motif edges must be [u, w] pairs");
    const int u = e[0].get<int>(), w = e[1].get<int>();
    edges.emplace_back(u, w);
    max_vertex = std::max({max_vertex, u, w});
  }
  return MotifGraph::from_edges(max_vertex + 1, std::move(edges), "custom");
}

ExperimentConfig parse_config(const nlohmann::json& j) {
  check_keys(j, {"model", "phase", "dynamics", "observables", "hajek", "couple", "stein", "oracle",
                 "seed", "workers", "out"},
             "top level");
  ExperimentConfig cfg;

  if (!j.contains("model")) throw std::runtime_error("config: missing model section");
  const auto& model = j.at("model");
  check_keys(model, {"motifs", "beta"}, "model");
  if (!model.contains("motifs") || !model.contains("beta"))
    throw std::runtime_error("config: model needs motifs and beta");
  std::vector<MotifGraph> motifs;
  for (const auto& m : model.at("motifs")) motifs.push_back(motif_from_json(m));
  std::vector<double> beta = model.at("beta").get<std::vector<double>>();
  cfg.spec = ErgmSpec::make(std::move(motifs), std::move(beta));

  if (j.contains("phase")) {
    const auto& phase = j.at("phase");
    check_keys(phase, {"grid", "tol", "scan"}, "phase");
    if (phase.contains("grid")) cfg.phase_grid = phase.at("grid").get<int>();
    if (phase.contains("tol")) cfg.phase_tol = phase.at("tol").get<double>();
    if (phase.contains("scan")) {
      for (const auto& s : phase.at("scan")) {
        check_keys(s, {"motif_index", "lo", "hi", "count"}, "phase.scan entry");
        ExperimentConfig::BetaScan scan;
        scan.motif_index = s.at("motif_index").get<int>();
        scan.lo = s.at("lo").get<double>();
        scan.hi = s.at("hi").get<double>();
        scan.count = s.at("count").get<int>();
        if (scan.motif_index < 0 || scan.motif_index >= cfg.spec.motif_count())
          throw std::runtime_error("config: phase.scan motif_index out of range");
        if (scan.count < 1) throw std::runtime_error("config: phase.scan count must be positive");
        cfg.phase_scan.push_back(scan);
      }
    }
  }

  if (j.contains("dynamics")) {
    const auto& dyn = j.at("dynamics");
    check_keys(dyn,
               {"n", "burn_in", "thinning_sweeps", "samples", "replicas", "init", "init_p", "well"},
               "dynamics");
    if (dyn.contains("n")) {
      if (dyn.at("n").is_array())
        cfg.sizes = dyn.at("n").get<std::vector<int>>();
      else
        cfg.sizes = {dyn.at("n").get<int>()};
    }
    if (dyn.contains("burn_in")) cfg.burn_in = dyn.at("burn_in").get<long long>();
    if (dyn.contains("thinning_sweeps"))
      cfg.thinning_sweeps = dyn.at("thinning_sweeps").get<double>();
    if (dyn.contains("samples")) cfg.samples = dyn.at("samples").get<int>();
    if (dyn.contains("replicas")) cfg.replicas = dyn.at("replicas").get<int>();
    if (dyn.contains("init")) cfg.init = dyn.at("init").get<std::string>();
    if (dyn.contains("init_p")) cfg.init_p = dyn.at("init_p").get<double>();
    if (dyn.contains("well")) {
      const auto& well = dyn.at("well");
      check_keys(well, {"p", "eta", "index"}, "dynamics.well");
      cfg.well_enabled = true;
      if (well.contains("p")) cfg.well_p = well.at("p").get<double>();
      if (well.contains("eta")) cfg.well_eta = well.at("eta").get<double>();
      if (well.contains("index")) cfg.well_index = well.at("index").get<int>();
    }
  }

  if (j.contains("observables")) {
    const auto& obs = j.at("observables");
    check_keys(obs, {"list"}, "observables");
    if (obs.contains("list")) cfg.observable_names = obs.at("list").get<std::vector<std::string>>();
  }

  if (j.contains("hajek")) {
    const auto& hajek = j.at("hajek");
    check_keys(hajek, {"motif", "rooted", "rho", "vertex"}, "hajek");
    if (hajek.contains("motif")) cfg.hajek_motif = hajek.at("motif").get<std::string>();
    if (hajek.contains("rooted")) cfg.hajek_rooted = hajek.at("rooted").get<bool>();
    if (hajek.contains("rho")) cfg.hajek_rho = hajek.at("rho").get<int>();
    if (hajek.contains("vertex")) cfg.hajek_vertex = hajek.at("vertex").get<int>();
  }

  if (j.contains("couple")) {
    const auto& couple = j.at("couple");
    check_keys(couple, {"horizon_sweeps", "replicas"}, "couple");
    if (couple.contains("horizon_sweeps"))
      cfg.couple_horizon_sweeps = couple.at("horizon_sweeps").get<double>();
    if (couple.contains("replicas")) cfg.couple_replicas = couple.at("replicas").get<int>();
  }

  if (j.contains("stein")) {
    const auto& stein = j.at("stein");
    check_keys(stein, {"mode", "vertex"}, "stein");
    if (stein.contains("mode")) {
      const std::string mode = stein.at("mode").get<std::string>();
      if (mode == "edge")
        cfg.stein_mode = SteinMode::EdgeCount;
      else if (mode == "degree")
        cfg.stein_mode = SteinMode::Degree;
      else
        throw std::runtime_error("config: stein.mode must be 'edge' or 'degree'");
    }
    if (stein.contains("vertex")) cfg.stein_vertex = stein.at("vertex").get<int>();
  }

  if (j.contains("oracle")) {
    const auto& oracle = j.at("oracle");
    check_keys(oracle, {"n", "dump"}, "oracle");
    if (oracle.contains("n")) cfg.oracle_n = oracle.at("n").get<int>();
    if (oracle.contains("dump")) cfg.oracle_dump = oracle.at("dump").get<bool>();
    if (cfg.oracle_n > 7)
      throw std::runtime_error("config: oracle.n capped at 7 by default (memory grows as 2^C(n,2))");
  }

  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
  if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();

  cfg.resolved = j;
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config: parse error in " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

}  // namespace ergm
