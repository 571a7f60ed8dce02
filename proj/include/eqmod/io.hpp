#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqmod/bounds.hpp"
#include "eqmod/search.hpp"

namespace eqmod::io {

struct Targets {
  std::optional<AlgebraElement> a;
  std::optional<AlgebraElement> b;
  std::optional<double> gamma;
};

/// On-disk form of a configuration. JSON, schema_version 1: complex entries
/// as [re, im] pairs, a vector entry as blocks of row-major matrices, keys
/// emitted sorted with round-trip-exact number formatting.
struct ConfigurationDocument {
  int schema_version = 1;
  Configuration config;
  Targets targets;
  std::optional<std::string> provenance;
};

ConfigurationDocument parse_configuration(const std::string& text);
std::string emit_configuration(const ConfigurationDocument& doc);

/// FNV-1a 64-bit content hash of the canonical emitted text, as 16 hex digits.
std::string content_digest(const std::string& canonical_text);

struct SolverMetadata {
  std::string algorithm;
  std::uint64_t seed = 0;
  int restarts = 0;
  std::vector<int> iterations_used;
  std::vector<double> restart_losses;
  double best_loss = 0.0;
  bool converged = false;
};

/// Self-contained record of every verdict reached for one configuration:
/// an independent checker can re-run each theorem from the configuration
/// text (matched by digest) and the tolerances stored here.
struct CertificateDocument {
  int schema_version = 1;
  std::string input_digest;
  double tolerance = kDefaultTol;
  std::vector<VerificationReport> verifications;
  std::vector<BoundCertificate> certificates;
  std::optional<SolverMetadata> solver;
};

std::string emit_certificate(const CertificateDocument& doc);

/// Run every theorem applicable to the document's algebra and targets.
/// With an `a` target: the (a,b) verifier, the Gerzon certificate, and the
/// commutative relative bounds; with a known or derivable gamma
/// (gamma = sqrt(||a||) when only a is given): the norm verifier and the
/// norm/special relative bounds; over the scalars additionally the
/// classical statements. verify_special always runs.
CertificateDocument certify(const ConfigurationDocument& doc, double tol = kDefaultTol);

/// True iff every verification and certificate in the document passed.
bool all_pass(const CertificateDocument& doc);

}  // namespace eqmod::io
