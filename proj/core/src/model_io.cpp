#include "savings/model_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace savings {

namespace {

Tensor3 read_table(const nlohmann::json& doc, const char* name, std::size_t nz,
                   std::size_t nk) {
  const nlohmann::json& arr = doc.at(name);
  const auto bad_shape = [&] {
    std::ostringstream msg;
    msg << "table \"" << name << "\" must be nested [z][zhat][k] with shape ("
        << nz << ", " << nz << ", " << nk << ")";
    return std::runtime_error(msg.str());
  };
  if (!arr.is_array() || arr.size() != nz) throw bad_shape();
  Tensor3 t(nz, nz, nk);
  for (std::size_t z = 0; z < nz; ++z) {
    const nlohmann::json& row = arr[z];
    if (!row.is_array() || row.size() != nz) throw bad_shape();
    for (std::size_t zh = 0; zh < nz; ++zh) {
      const nlohmann::json& cell = row[zh];
      if (!cell.is_array() || cell.size() != nk) throw bad_shape();
      for (std::size_t k = 0; k < nk; ++k) t(z, zh, k) = cell[k].get<double>();
    }
  }
  return t;
}

}  // namespace

LoadedModel parse_model_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("model text is not valid JSON: ") + e.what());
  }

  LoadedModel out;
  try {
    const auto nz = doc.at("states").get<std::size_t>();
    out.prims.num_states = nz;

    const auto flat_p = doc.at("P").get<std::vector<double>>();
    if (flat_p.size() != nz * nz)
      throw std::runtime_error("transition matrix \"P\" must hold states^2 entries, row-major");
    out.prims.P = Matrix(nz);
    for (std::size_t z = 0; z < nz; ++z)
      for (std::size_t zh = 0; zh < nz; ++zh) out.prims.P(z, zh) = flat_p[z * nz + zh];

    out.prims.shocks.weights = doc.at("shocks").at("weights").get<std::vector<double>>();
    const std::size_t nk = out.prims.shocks.weights.size();

    out.prims.beta_tab = read_table(doc, "beta", nz, nk);
    out.prims.R_tab = read_table(doc, "R", nz, nk);
    out.prims.Y_tab = read_table(doc, "Y", nz, nk);

    const nlohmann::json& prefs = doc.at("preferences");
    out.prefs.gamma = prefs.at("gamma").get<double>();
    out.prefs.delta = prefs.at("delta").get<double>();
    out.prefs.psi = prefs.at("psi").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("model document is missing fields or has wrong types: ") +
                             e.what());
  }

  out.prims.validate();
  out.prefs.validate();
  return out;
}

LoadedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open model file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad())
    throw std::runtime_error("cannot read model file: " + path.string());
  return parse_model_json(buf.str());
}

}  // namespace savings
