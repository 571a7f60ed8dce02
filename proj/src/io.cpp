#include "eqmod/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <utility>

namespace eqmod::io {

using nlohmann::json;

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json element_to_json(const AlgebraElement& e) {
  json blocks = json::array();
  for (const auto& b : e.blocks()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < b.cols(); ++c) row.push_back(complex_to_json(b(r, c)));
      rows.push_back(std::move(row));
    }
    blocks.push_back(std::move(rows));
  }
  return blocks;
}

Complex json_to_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(where + ": complex entry must be a [re, im] number pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

AlgebraElement json_to_element(const json& j, const AlgebraDescriptor& desc,
                               const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != desc.num_blocks()) {
    throw ParseError(where + ": expected " + std::to_string(desc.num_blocks()) + " blocks");
  }
  std::vector<BlockMatrix> blocks;
  blocks.reserve(j.size());
  for (int i = 0; i < desc.num_blocks(); ++i) {
    const int s = desc.block_sizes()[static_cast<size_t>(i)];
    const json& rows = j[static_cast<size_t>(i)];
    if (!rows.is_array() || static_cast<int>(rows.size()) != s) {
      throw ParseError(where + " block " + std::to_string(i) + ": expected " + std::to_string(s) +
                       "x" + std::to_string(s) + " matrix");
    }
    BlockMatrix b(s, s);
    for (int r = 0; r < s; ++r) {
      const json& row = rows[static_cast<size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != s) {
        throw ParseError(where + " block " + std::to_string(i) + ": expected " + std::to_string(s) +
                         "x" + std::to_string(s) + " matrix");
      }
      for (int c = 0; c < s; ++c) {
        b(r, c) = json_to_complex(row[static_cast<size_t>(c)],
                                  where + " block " + std::to_string(i) + " entry (" +
                                      std::to_string(r) + "," + std::to_string(c) + ")");
      }
    }
    blocks.push_back(std::move(b));
  }
  return {desc, std::move(blocks)};
}

void check_real_entries(const AlgebraElement& e, const std::string& where) {
  for (const auto& b : e.blocks()) {
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      for (Eigen::Index c = 0; c < b.cols(); ++c) {
        if (std::abs(b(r, c).imag()) > kDefaultTol) {
          throw ParseError(where + ": real_flag forbids imaginary parts above tolerance");
        }
      }
    }
  }
}

json spectral_json(const AlgebraElement& e) {
  json out = json::array();
  int idx = 0;
  const auto spectrum = hermitian_spectrum(e);
  for (int i = 0; i < e.algebra().num_blocks(); ++i) {
    const int s = e.algebra().block_sizes()[static_cast<size_t>(i)];
    json block = json::array();
    for (int k = 0; k < s; ++k) block.push_back(spectrum[static_cast<size_t>(idx++)]);
    out.push_back(std::move(block));
  }
  return out;
}

json verification_to_json(const VerificationReport& rep) {
  json out;
  out["kind"] = to_string(rep.kind);
  out["pass"] = rep.pass;
  out["max_unit_deviation"] = rep.max_unit_deviation;
  out["max_angle_deviation"] = rep.max_angle_deviation;
  out["worst_unit_index"] = rep.worst_unit_index;
  out["worst_pair"] = json::array({rep.worst_pair_j, rep.worst_pair_k});
  out["tol"] = rep.tol;
  if (rep.witness) {
    out["witness"] = element_to_json(*rep.witness);
    out["witness_spectrum"] = spectral_json(*rep.witness);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

json certificate_to_json(const BoundCertificate& cert) {
  json out;
  out["theorem"] = to_string(cert.theorem);
  out["pass"] = cert.pass;
  out["tol"] = cert.tol;
  json hyps = json::array();
  for (const auto& h : cert.hypotheses) {
    hyps.push_back({{"name", h.name}, {"verdict", h.verdict}, {"detail", h.detail}});
  }
  out["hypotheses"] = std::move(hyps);
  if (cert.bound_value) {
    out["bound_value"] = *cert.bound_value;
  } else {
    out["bound_value"] = nullptr;
  }
  if (cert.witness) {
    out["witness"] = element_to_json(*cert.witness);
    out["witness_spectrum"] = spectral_json(*cert.witness);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

}  // namespace

std::string emit_configuration(const ConfigurationDocument& doc) {
  const Configuration& config = doc.config;
  json out;
  out["schema_version"] = doc.schema_version;
  out["algebra"] = {{"block_sizes", config.algebra().block_sizes()},
                    {"real_flag", config.algebra().real_flag()}};
  out["d"] = config.d();
  out["n"] = config.n();
  json vectors = json::array();
  for (const auto& v : config.vectors()) {
    json comps = json::array();
    for (int r = 0; r < v.dim(); ++r) comps.push_back(element_to_json(v.component(r)));
    vectors.push_back(std::move(comps));
  }
  out["vectors"] = std::move(vectors);
  if (doc.targets.a || doc.targets.b || doc.targets.gamma) {
    json targets;
    if (doc.targets.a) targets["a"] = element_to_json(*doc.targets.a);
    if (doc.targets.b) targets["b"] = element_to_json(*doc.targets.b);
    if (doc.targets.gamma) targets["gamma"] = *doc.targets.gamma;
    out["targets"] = std::move(targets);
  }
  if (config.label()) out["label"] = *config.label();
  if (doc.provenance) out["provenance"] = *doc.provenance;
  return out.dump(2) + "\n";
}

namespace {

ConfigurationDocument parse_configuration_impl(const json& j) {
  if (!j.is_object()) throw ParseError("document root must be an object");
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer()) {
    throw ParseError("schema_version: missing or not an integer");
  }
  if (j["schema_version"].get<int>() != 1) {
    throw ParseError("schema_version: unknown version " + j["schema_version"].dump());
  }
  if (!j.contains("algebra") || !j["algebra"].is_object()) {
    throw ParseError("algebra: missing object");
  }
  const json& alg = j["algebra"];
  if (!alg.contains("block_sizes") || !alg["block_sizes"].is_array()) {
    throw ParseError("algebra.block_sizes: missing array");
  }
  std::vector<int> sizes;
  for (const auto& s : alg["block_sizes"]) {
    if (!s.is_number_integer() || s.get<int>() < 1) {
      throw ParseError("algebra.block_sizes: entries must be positive integers");
    }
    sizes.push_back(s.get<int>());
  }
  const bool real_flag = alg.value("real_flag", false);
  AlgebraDescriptor desc(std::move(sizes), real_flag);

  if (!j.contains("d") || !j["d"].is_number_integer() || j["d"].get<int>() < 1) {
    throw ParseError("d: missing or not a positive integer");
  }
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<int>() < 1) {
    throw ParseError("n: missing or not a positive integer");
  }
  const int d = j["d"].get<int>();
  const int n = j["n"].get<int>();

  if (!j.contains("vectors") || !j["vectors"].is_array() ||
      static_cast<int>(j["vectors"].size()) != n) {
    throw ParseError("vectors: expected an array of n = " + std::to_string(n) + " vectors");
  }
  std::vector<ModuleVector> vectors;
  vectors.reserve(static_cast<size_t>(n));
  for (int jj = 0; jj < n; ++jj) {
    const json& vec = j["vectors"][static_cast<size_t>(jj)];
    if (!vec.is_array() || static_cast<int>(vec.size()) != d) {
      throw ParseError("vectors[" + std::to_string(jj) + "]: expected d = " + std::to_string(d) +
                       " components");
    }
    std::vector<AlgebraElement> comps;
    comps.reserve(static_cast<size_t>(d));
    for (int r = 0; r < d; ++r) {
      const std::string where = "vectors[" + std::to_string(jj) + "][" + std::to_string(r) + "]";
      AlgebraElement e = json_to_element(vec[static_cast<size_t>(r)], desc, where);
      if (real_flag) check_real_entries(e, where);
      comps.push_back(std::move(e));
    }
    vectors.emplace_back(std::move(comps));
  }

  std::optional<std::string> label;
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw ParseError("label: must be a string");
    label = j["label"].get<std::string>();
  }

  ConfigurationDocument doc{1, Configuration(desc, d, std::move(vectors), std::move(label)), {}, {}};
  if (j.contains("targets")) {
    const json& t = j["targets"];
    if (!t.is_object()) throw ParseError("targets: must be an object");
    if (t.contains("a")) doc.targets.a = json_to_element(t["a"], desc, "targets.a");
    if (t.contains("b")) doc.targets.b = json_to_element(t["b"], desc, "targets.b");
    if (t.contains("gamma")) {
      if (!t["gamma"].is_number()) throw ParseError("targets.gamma: must be a number");
      doc.targets.gamma = t["gamma"].get<double>();
    }
  }
  if (j.contains("provenance")) {
    if (!j["provenance"].is_string()) throw ParseError("provenance: must be a string");
    doc.provenance = j["provenance"].get<std::string>();
  }
  return doc;
}

}  // namespace

ConfigurationDocument parse_configuration(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  try {
    return parse_configuration_impl(j);
  } catch (const json::exception& e) {
    throw ParseError(std::string("document structure: ") + e.what());
  }
}

std::string content_digest(const std::string& canonical_text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical_text) {
    hash ^= static_cast<std::uint64_t>(c);
    hash *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) out << ((hash >> shift) & 0xf);
  return out.str();
}

namespace {

json solver_to_json(const SolverMetadata& meta) {
  json out;
  out["algorithm"] = meta.algorithm;
  out["seed"] = meta.seed;
  out["restarts"] = meta.restarts;
  out["iterations_used"] = meta.iterations_used;
  out["restart_losses"] = meta.restart_losses;
  out["best_loss"] = meta.best_loss;
  out["converged"] = meta.converged;
  return out;
}

}  // namespace

std::string emit_certificate(const CertificateDocument& doc) {
  json out;
  out["schema_version"] = doc.schema_version;
  out["input_digest"] = doc.input_digest;
  out["tolerance"] = doc.tolerance;
  json verifications = json::array();
  for (const auto& rep : doc.verifications) verifications.push_back(verification_to_json(rep));
  out["verifications"] = std::move(verifications);
  json certificates = json::array();
  for (const auto& cert : doc.certificates) certificates.push_back(certificate_to_json(cert));
  out["certificates"] = std::move(certificates);
  out["all_pass"] = all_pass(doc);
  if (doc.solver) out["solver"] = solver_to_json(*doc.solver);
  return out.dump(2) + "\n";
}

CertificateDocument certify(const ConfigurationDocument& doc, double tol) {
  const Configuration& config = doc.config;
  CertificateDocument cert;
  cert.input_digest = content_digest(emit_configuration(doc));
  cert.tolerance = tol;

  const bool is_scalar = config.algebra().num_blocks() == 1 &&
                         config.algebra().block_sizes()[0] == 1;
  const std::optional<AlgebraElement>& a = doc.targets.a;
  const AlgebraElement b_eff =
      doc.targets.b.value_or(AlgebraElement::identity(config.algebra()));
  const bool b_is_unit =
      op_norm(b_eff - AlgebraElement::identity(config.algebra())) <= tol;

  if (a) {
    if (b_is_unit) {
      cert.verifications.push_back(verify_modular_ab(config, *a, std::nullopt, tol));
    } else {
      cert.verifications.push_back(verify_modular_ab(config, *a, b_eff, tol));
    }
  }

  std::optional<double> gamma = doc.targets.gamma;
  if (!gamma && a) gamma = std::sqrt(op_norm(*a));  // ||<t_j,t_k>||^2 = ||a|| by the C*-identity
  if (gamma) cert.verifications.push_back(verify_norm_gamma(config, *gamma, tol));
  cert.verifications.push_back(verify_special(config, tol));

  if (a && config.algebra().commutative()) {
    cert.certificates.push_back(vls_modular(config.d(), config.n(), *a, tol));
    cert.certificates.push_back(vls_ab(config.d(), config.n(), *a, b_eff, tol));
  }
  if (a) {
    if (b_is_unit) {
      cert.certificates.push_back(gerzon_modular(config, *a, tol));
    } else {
      cert.certificates.push_back(gerzon_ab(config, *a, b_eff, tol));
    }
  }
  if (gamma) {
    cert.certificates.push_back(vls_special(config, *gamma, tol));
    cert.certificates.push_back(
        vls_norm(config.d(), config.n(), *gamma, NormBoundMode::Modular, tol));
    if (is_scalar) {
      cert.certificates.push_back(
          vls_norm(config.d(), config.n(), *gamma, NormBoundMode::Classical, tol));
    }
  }
  if (is_scalar) {
    cert.certificates.push_back(classical_gerzon(
        config.d(), config.n(),
        config.algebra().real_flag() ? ScalarField::Real : ScalarField::Complex));
  }
  return cert;
}

bool all_pass(const CertificateDocument& doc) {
  return std::all_of(doc.verifications.begin(), doc.verifications.end(),
                     [](const VerificationReport& r) { return r.pass; }) &&
         std::all_of(doc.certificates.begin(), doc.certificates.end(),
                     [](const BoundCertificate& c) { return c.pass; });
}

}  // namespace eqmod::io
