#include "entdist/io.hpp"

#include <fstream>

namespace entdist {

namespace {

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InvalidInput("expected a number or a [re, im] pair, got " + j.dump());
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

DimList dims_from_json(const Json& j) {
  if (!j.contains("dims") || !j["dims"].is_array()) throw InvalidInput("state document needs a \"dims\" array");
  DimList dims;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer()) throw InvalidInput("dims must be integers");
    dims.push_back(d.get<int>());
  }
  return dims;
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

Json witness_basis(const CMatrix& basis) { return to_json(basis); }

}  // namespace

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw InvalidInput("matrix must be a non-empty array of rows");
  const auto rows = j.size(), cols = j[0].size();
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw InvalidInput("matrix rows have different lengths");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

CVector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("vector must be a non-empty array");
  CVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

DensityMatrix state_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("state document must be an object");
  const DimList dims = dims_from_json(j);
  try {
    if (j.contains("matrix")) return DensityMatrix(matrix_from_json(j["matrix"]), dims);
    if (j.contains("vector")) return PureState(vector_from_json(j["vector"]), dims).density();
  } catch (const InvalidInput&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  }
  throw InvalidInput("state document needs \"matrix\" or \"vector\"");
}

Json state_to_json(const DensityMatrix& rho) {
  Json j;
  j["dims"] = rho.dims();
  j["matrix"] = to_json(rho.matrix());
  return j;
}

DensityMatrix read_state(const std::string& path) {
  try {
    return state_from_json(read_file(path));
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

KrausChannel channel_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("channel document must be an object");
  const std::string label = j.value("label", "");
  try {
    if (j.contains("identity")) return identity_channel(j["identity"].get<int>());
    if (j.contains("pauli")) {
      const auto p = j["pauli"].get<std::vector<double>>();
      if (p.size() != 4) throw InvalidInput("pauli needs four probabilities");
      return pauli_channel({p[0], p[1], p[2], p[3]});
    }
    if (j.contains("kraus")) {
      std::vector<CMatrix> ops;
      for (const auto& k : j["kraus"]) ops.push_back(matrix_from_json(k));
      return KrausChannel(std::move(ops), label.empty() ? "kraus" : label);
    }
  } catch (const InvalidInput&) {
    throw;
  } catch (const std::exception& e) {
    throw InvalidInput(e.what());
  }
  throw InvalidInput("channel document needs \"identity\", \"pauli\" or \"kraus\"");
}

Json channel_to_json(const KrausChannel& ch) {
  Json j;
  j["label"] = ch.label();
  Json ops = Json::array();
  for (const auto& k : ch.kraus()) ops.push_back(to_json(k));
  j["kraus"] = std::move(ops);
  return j;
}

KrausChannel read_channel(const std::string& path) {
  try {
    return channel_from_json(read_file(path));
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

Json to_json(const OptimizerConfig& cfg) {
  Json j;
  j["restarts"] = cfg.restarts;
  j["max_iters"] = cfg.max_iters;
  j["step_tol"] = cfg.step_tol;
  j["value_tol"] = cfg.value_tol;
  j["seed"] = cfg.seed;
  return j;
}

Json to_json(const MeasureResult& r) {
  Json j;
  j["value"] = r.value;
  j["kind"] = to_string(r.kind);
  j["method"] = r.method;
  j["restarts"] = r.restarts;
  j["iterations"] = r.iterations;
  j["achieved_tol"] = r.achieved_tol;
  return j;
}

Json to_json(const ClassReport& r) {
  Json j;
  j["dims"] = r.dims;
  Json cuts = Json::object();
  for (const auto& c : r.cuts) {
    Json cj;
    cj["ppt"] = c.ppt.ppt;
    cj["min_pt_eigenvalue"] = c.ppt.min_eigenvalue;
    cj["verdict"] = c.verdict;
    cuts[c.cut.str()] = std::move(cj);
  }
  j["cuts"] = std::move(cuts);
  Json zd = Json::object();
  for (std::size_t k = 0; k < r.zero_discord.size(); ++k) {
    Json zj;
    zj["zero_discord"] = r.zero_discord[k].zero;
    zj["distance"] = r.zero_discord[k].distance;
    zj["basis"] = witness_basis(r.zero_discord[k].basis);
    zd[std::string(1, static_cast<char>('A' + k))] = std::move(zj);
  }
  j["zero_discord"] = std::move(zd);
  if (r.cc) {
    Json cj;
    cj["cc"] = r.cc->cc;
    cj["distance"] = r.cc->distance;
    cj["basis_a"] = witness_basis(r.cc->basis_a);
    cj["basis_b"] = witness_basis(r.cc->basis_b);
    j["classically_correlated"] = std::move(cj);
  } else {
    j["classically_correlated"] = nullptr;
  }
  j["ppt_tol"] = r.ppt_tol;
  j["tol"] = r.tol;
  j["hierarchy_violations"] = r.hierarchy_violations();
  return j;
}

Json to_json(const DistributionOutcome& o) {
  Json j;
  j["measure"] = to_string(o.measure);
  j["channel"] = o.channel;
  j["E_before"] = to_json(o.before);
  j["E_after"] = to_json(o.after);
  j["E_carrier"] = o.carrier ? to_json(*o.carrier) : Json(nullptr);
  j["gain"] = o.gain;
  j["initial"] = state_to_json(o.initial);
  j["final"] = state_to_json(o.final_state);
  return j;
}

Json to_json(const ProtocolClass& p) {
  Json j;
  j["verdict"] = p.excessive ? "excessive" : "nonexcessive";
  j["E_AC|B"] = to_json(p.before);
  j["E_A|BC"] = to_json(p.after);
  j["E_AB|C"] = to_json(p.carrier);
  j["guard"] = p.guard;
  return j;
}

Json to_json(const BoundReport& r) {
  Json j;
  j["id"] = r.id;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack;
  j["tol"] = r.tol;
  j["holds"] = r.holds;
  j["worst_case_slack"] = r.worst_case_slack;
  Json comps = Json::array();
  for (const auto& c : r.components) {
    Json cj;
    cj["name"] = c.name;
    cj["value"] = c.value;
    cj["kind"] = to_string(c.kind);
    cj["achieved_tol"] = c.achieved_tol;
    comps.push_back(std::move(cj));
  }
  j["components"] = std::move(comps);
  return j;
}

Json to_json(const SandwichReport& r) {
  Json j;
  j["upper"] = to_json(r.upper);
  j["lower"] = to_json(r.lower);
  j["holds"] = r.holds();
  return j;
}

Json run_record(const std::vector<std::string>& command, const OptimizerConfig& cfg) {
  Json j;
  j["tool"] = "entdist";
  j["version"] = ENTDIST_VERSION;
  j["seed"] = cfg.seed;
  j["config"] = to_json(cfg);
  j["command"] = command;
  return j;
}

}  // namespace entdist
