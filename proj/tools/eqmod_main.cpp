// Command-line front end: verify / bound / certify / search / corpus.
// Exit codes: 0 = pass or converged, 1 = fail or not converged,
// 2 = usage or input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "eqmod/bounds.hpp"
#include "eqmod/corpus.hpp"
#include "eqmod/io.hpp"
#include "eqmod/search.hpp"

namespace {

using namespace eqmod;

double default_tolerance() {
  if (const char* env = std::getenv("EQMOD_DEFAULT_TOL")) {
    try {
      const double v = std::stod(env);
      if (v >= 0.0) return v;
    } catch (...) {
    }
    std::cerr << "warning: ignoring unparsable EQMOD_DEFAULT_TOL\n";
  }
  return kDefaultTol;
}

std::vector<int> parse_block_sizes(const std::string& spec) {
  std::vector<int> sizes;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      sizes.push_back(std::stoi(item));
    } catch (...) {
      throw ParseError("--algebra: expected comma-separated block sizes, got '" + spec + "'");
    }
  }
  if (sizes.empty()) throw ParseError("--algebra: empty block size list");
  return sizes;
}

// "0.25" means the central element 0.25 * 1; "0.25,0" gives one scalar per block.
AlgebraElement parse_target(const std::string& spec, const AlgebraDescriptor& desc,
                            const std::string& flag) {
  std::vector<double> values;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (...) {
      throw ParseError(flag + ": expected comma-separated reals, got '" + spec + "'");
    }
  }
  if (values.size() == 1) return AlgebraElement::scalar(desc, values[0]);
  if (static_cast<int>(values.size()) != desc.num_blocks()) {
    throw ParseError(flag + ": expected 1 or " + std::to_string(desc.num_blocks()) +
                     " values for this algebra");
  }
  AlgebraElement e = AlgebraElement::zero(desc);
  for (int i = 0; i < desc.num_blocks(); ++i) {
    e.block(i) = values[static_cast<size_t>(i)] *
                 BlockMatrix::Identity(desc.block_sizes()[static_cast<size_t>(i)],
                                       desc.block_sizes()[static_cast<size_t>(i)]);
  }
  return e;
}

io::ConfigurationDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return io::parse_configuration(buffer.str());
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write file: " + path);
  out << text;
}

struct VerifyArgs {
  std::string file;
  std::string kind;
  std::string a, b;
  double gamma = -1.0;
  double tol = kDefaultTol;
};

int run_verify(const VerifyArgs& args) {
  const io::ConfigurationDocument doc = load_document(args.file);
  const AlgebraDescriptor& desc = doc.config.algebra();

  std::optional<AlgebraElement> a = doc.targets.a;
  if (!args.a.empty()) a = parse_target(args.a, desc, "--a");
  std::optional<AlgebraElement> b = doc.targets.b;
  if (!args.b.empty()) b = parse_target(args.b, desc, "--b");
  std::optional<double> gamma = doc.targets.gamma;
  if (args.gamma >= 0.0) gamma = args.gamma;

  VerificationReport report;
  if (args.kind == "modular-a") {
    if (!a) throw InvalidTarget("verify modular-a: no target a (flag or file)");
    report = verify_modular_ab(doc.config, *a, std::nullopt, args.tol);
  } else if (args.kind == "modular-ab") {
    if (!a) throw InvalidTarget("verify modular-ab: no target a (flag or file)");
    report = verify_modular_ab(doc.config, *a,
                               b.value_or(AlgebraElement::identity(desc)), args.tol);
  } else if (args.kind == "norm-gamma") {
    if (!gamma) throw InvalidTarget("verify norm-gamma: no target gamma (flag or file)");
    report = verify_norm_gamma(doc.config, *gamma, args.tol);
  } else if (args.kind == "special") {
    report = verify_special(doc.config, args.tol);
  } else {
    throw ParseError("verify: unknown --kind '" + args.kind + "'");
  }

  io::CertificateDocument out;
  out.input_digest = io::content_digest(io::emit_configuration(doc));
  out.tolerance = args.tol;
  out.verifications.push_back(report);
  std::cout << io::emit_certificate(out);
  return report.pass ? 0 : 1;
}

struct BoundArgs {
  std::string file;
  std::string theorem;
  std::string a, b, algebra{"1"};
  int d = 0, n = 0;
  double gamma = -1.0;
  double tol = kDefaultTol;
};

int run_bound(const BoundArgs& args) {
  std::optional<io::ConfigurationDocument> doc;
  if (!args.file.empty()) doc = load_document(args.file);

  const AlgebraDescriptor desc =
      doc ? doc->config.algebra() : AlgebraDescriptor(parse_block_sizes(args.algebra));
  const int d = args.d > 0 ? args.d : (doc ? doc->config.d() : 0);
  const int n = args.n > 0 ? args.n : (doc ? doc->config.n() : 0);

  std::optional<AlgebraElement> a = doc ? doc->targets.a : std::nullopt;
  if (!args.a.empty()) a = parse_target(args.a, desc, "--a");
  std::optional<AlgebraElement> b = doc ? doc->targets.b : std::nullopt;
  if (!args.b.empty()) b = parse_target(args.b, desc, "--b");
  std::optional<double> gamma = doc ? doc->targets.gamma : std::nullopt;
  if (args.gamma >= 0.0) gamma = args.gamma;

  auto need_config = [&]() -> const Configuration& {
    if (!doc) throw ParseError("bound: theorem '" + args.theorem + "' needs a configuration file");
    return doc->config;
  };
  auto need_a = [&]() -> const AlgebraElement& {
    if (!a) throw InvalidTarget("bound: no target a (flag or file)");
    return *a;
  };
  auto need_gamma = [&]() -> double {
    if (!gamma) throw InvalidTarget("bound: no target gamma (flag or file)");
    return *gamma;
  };
  auto need_dn = [&] {
    if (d < 1 || n < 1) throw ParseError("bound: --d and --n (or a file) are required");
  };

  BoundCertificate cert;
  if (args.theorem == "vls-modular") {
    need_dn();
    cert = vls_modular(d, n, need_a(), args.tol);
  } else if (args.theorem == "vls-norm" || args.theorem == "classical-relative") {
    need_dn();
    cert = vls_norm(d, n, need_gamma(),
                    args.theorem == "vls-norm" ? NormBoundMode::Modular : NormBoundMode::Classical,
                    args.tol);
  } else if (args.theorem == "vls-special") {
    cert = vls_special(need_config(), need_gamma(), args.tol);
  } else if (args.theorem == "gerzon-modular") {
    cert = gerzon_modular(need_config(), need_a(), args.tol);
  } else if (args.theorem == "vls-ab") {
    need_dn();
    cert = vls_ab(d, n, need_a(), b.value_or(AlgebraElement::identity(desc)), args.tol);
  } else if (args.theorem == "gerzon-ab") {
    cert = gerzon_ab(need_config(), need_a(),
                     b.value_or(AlgebraElement::identity(desc)), args.tol);
  } else if (args.theorem == "classical-gerzon-real" ||
             args.theorem == "classical-gerzon-complex") {
    need_dn();
    cert = classical_gerzon(
        d, n, args.theorem == "classical-gerzon-real" ? ScalarField::Real : ScalarField::Complex);
  } else {
    throw ParseError("bound: unknown --theorem '" + args.theorem + "'");
  }

  io::CertificateDocument out;
  if (doc) out.input_digest = io::content_digest(io::emit_configuration(*doc));
  out.tolerance = args.tol;
  out.certificates.push_back(cert);
  std::cout << io::emit_certificate(out);
  return cert.pass ? 0 : 1;
}

int run_certify(const std::string& file, double tol, const std::string& out_path) {
  const io::ConfigurationDocument doc = load_document(file);
  const io::CertificateDocument cert = io::certify(doc, tol);
  const std::string text = io::emit_certificate(cert);
  std::cout << text;
  if (!out_path.empty()) write_text(text, out_path);
  return io::all_pass(cert) ? 0 : 1;
}

struct SearchArgs {
  std::string algebra{"1"};
  int d = 0, n = 0;
  std::string a, b;
  double gamma = -1.0;
  std::uint64_t seed = 0;
  int restarts = 20;
  int max_iter = 2000;
  double success_loss = 1e-18;
  double tol = kDefaultTol;
  std::string out, cert_out;
};

int run_search(const SearchArgs& args) {
  if (args.d < 1 || args.n < 1) throw ParseError("search: --d and --n are required");
  SearchProblem problem;
  problem.algebra = AlgebraDescriptor(parse_block_sizes(args.algebra));
  problem.d = args.d;
  problem.n = args.n;
  problem.seed = args.seed;
  problem.restarts = args.restarts;
  problem.max_iterations = args.max_iter;
  problem.success_loss = args.success_loss;
  if (!args.a.empty()) {
    problem.mode = SearchMode::TargetA;
    problem.a = parse_target(args.a, problem.algebra, "--a");
    if (!args.b.empty()) problem.b = parse_target(args.b, problem.algebra, "--b");
  } else if (args.gamma >= 0.0) {
    problem.mode = SearchMode::TargetGamma;
    problem.gamma = args.gamma;
  } else {
    throw ParseError("search: one of --a or --gamma is required");
  }

  const SearchResult result = solve(problem);

  Configuration best = *result.best_config;
  bool polished = false;
  try {
    best = polish(best, args.tol);
    polished = true;
  } catch (const CannotNormalize&) {
  }

  io::ConfigurationDocument doc{1, best, {}, {}};
  if (problem.mode == SearchMode::TargetA) {
    doc.targets.a = problem.a;
    doc.targets.b = problem.b;
  } else {
    doc.targets.gamma = problem.gamma;
  }
  std::ostringstream provenance;
  provenance << "search(" << result.algorithm << ", seed=" << problem.seed
             << ", restarts=" << problem.restarts << ", polished=" << (polished ? "yes" : "no")
             << ")";
  doc.provenance = provenance.str();

  io::SolverMetadata meta;
  meta.algorithm = result.algorithm;
  meta.seed = problem.seed;
  meta.restarts = problem.restarts;
  meta.iterations_used = result.iterations_used;
  meta.restart_losses = result.restart_losses;
  meta.best_loss = result.best_loss;
  meta.converged = result.converged;

  io::CertificateDocument cert = io::certify(doc, args.tol);
  cert.solver = meta;

  if (!args.out.empty()) write_text(io::emit_configuration(doc), args.out);
  if (!args.cert_out.empty()) write_text(io::emit_certificate(cert), args.cert_out);
  std::cout << io::emit_certificate(cert);
  return result.converged ? 0 : 1;
}

struct CorpusArgs {
  std::string name;
  int d = 0, n = 0;
  std::string algebra;
  bool real_flag = false;
  std::string base, base2;
  std::string out;
};

corpus::ReferenceConfiguration make_reference(const std::string& name, const CorpusArgs& args);

corpus::ReferenceConfiguration base_by_name(const std::string& name, const CorpusArgs& args) {
  CorpusArgs nested = args;
  nested.algebra.clear();  // lifts decide the algebra at the top level only
  return make_reference(name, nested);
}

corpus::ReferenceConfiguration make_reference(const std::string& name, const CorpusArgs& args) {
  if (name == "trine") return corpus::trine();
  if (name == "icosahedron") return corpus::icosahedron();
  if (name == "sic_d2") return corpus::sic_d2();
  if (name == "etf_3_2") return corpus::etf_3_2();
  if (name == "orthonormal") {
    if (args.d < 1) throw ParseError("corpus orthonormal: --d is required");
    const AlgebraDescriptor desc =
        args.algebra.empty()
            ? scalars(args.real_flag)
            : AlgebraDescriptor(parse_block_sizes(args.algebra), args.real_flag);
    return corpus::orthonormal(args.d, desc);
  }
  if (name == "repeated_vector") {
    if (args.d < 1 || args.n < 1) throw ParseError("corpus repeated_vector: --d and --n required");
    return corpus::repeated_vector(args.n, args.d);
  }
  if (name == "scalar_lift") {
    if (args.base.empty() || args.algebra.empty()) {
      throw ParseError("corpus scalar_lift: --base and --algebra are required");
    }
    return corpus::scalar_lift(base_by_name(args.base, args),
                               AlgebraDescriptor(parse_block_sizes(args.algebra)));
  }
  if (name == "direct_sum") {
    if (args.base.empty() || args.base2.empty()) {
      throw ParseError("corpus direct_sum: --base and --base2 are required");
    }
    return corpus::direct_sum(base_by_name(args.base, args), base_by_name(args.base2, args));
  }
  throw ParseError("corpus: unknown name '" + name + "'");
}

int run_corpus_list() {
  for (const auto& name : corpus::names()) std::cout << name << "\n";
  return 0;
}

int run_corpus_emit(const CorpusArgs& args) {
  const corpus::ReferenceConfiguration ref = make_reference(args.name, args);
  io::ConfigurationDocument doc{1, ref.config, {ref.a, ref.b, ref.gamma}, "corpus"};
  write_text(io::emit_configuration(doc), args.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equiangular lines in standard Hilbert C*-modules: verifiers, bound "
               "certificates, and numerical search"};
  app.require_subcommand(1);
  const double tol_default = default_tolerance();

  VerifyArgs verify_args;
  verify_args.tol = tol_default;
  auto* verify_cmd = app.add_subcommand("verify", "run one equiangularity verifier on a file");
  verify_cmd->add_option("file", verify_args.file, "configuration document")->required();
  verify_cmd->add_option("--kind", verify_args.kind,
                         "modular-a | modular-ab | norm-gamma | special")
      ->required();
  verify_cmd->add_option("--a", verify_args.a, "target a (scalar or per-block list)");
  verify_cmd->add_option("--b", verify_args.b, "target b (scalar or per-block list)");
  verify_cmd->add_option("--gamma", verify_args.gamma, "target gamma in [0,1]");
  verify_cmd->add_option("--tol", verify_args.tol, "tolerance");

  BoundArgs bound_args;
  bound_args.tol = tol_default;
  auto* bound_cmd = app.add_subcommand("bound", "evaluate one bound theorem");
  bound_cmd->add_option("file", bound_args.file, "configuration document (optional)");
  bound_cmd->add_option("--theorem", bound_args.theorem,
                        "vls-modular | vls-norm | vls-special | gerzon-modular | vls-ab | "
                        "gerzon-ab | classical-relative | classical-gerzon-real | "
                        "classical-gerzon-complex")
      ->required();
  bound_cmd->add_option("--d", bound_args.d, "module dimension d");
  bound_cmd->add_option("--n", bound_args.n, "number of lines n");
  bound_cmd->add_option("--a", bound_args.a, "target a");
  bound_cmd->add_option("--b", bound_args.b, "target b");
  bound_cmd->add_option("--gamma", bound_args.gamma, "target gamma");
  bound_cmd->add_option("--algebra", bound_args.algebra, "block sizes, e.g. 1,1,2");
  bound_cmd->add_option("--tol", bound_args.tol, "tolerance");

  std::string certify_file, certify_out;
  double certify_tol = tol_default;
  auto* certify_cmd = app.add_subcommand("certify", "run every applicable theorem on a file");
  certify_cmd->add_option("file", certify_file, "configuration document")->required();
  certify_cmd->add_option("--tol", certify_tol, "tolerance");
  certify_cmd->add_option("--out", certify_out, "write the certificate here as well");

  SearchArgs search_args;
  search_args.tol = tol_default;
  auto* search_cmd = app.add_subcommand("search", "numerical search for a configuration");
  search_cmd->add_option("--algebra", search_args.algebra, "block sizes, e.g. 1 or 1,2");
  search_cmd->add_option("--d", search_args.d, "module dimension d")->required();
  search_cmd->add_option("--n", search_args.n, "number of lines n")->required();
  search_cmd->add_option("--a", search_args.a, "target a (scalar or per-block list)");
  search_cmd->add_option("--b", search_args.b, "target b");
  search_cmd->add_option("--gamma", search_args.gamma, "target gamma (norm surrogate mode)");
  search_cmd->add_option("--seed", search_args.seed, "random seed");
  search_cmd->add_option("--restarts", search_args.restarts, "number of seeded restarts");
  search_cmd->add_option("--max-iter", search_args.max_iter, "iteration cap per restart");
  search_cmd->add_option("--success-loss", search_args.success_loss, "stop threshold");
  search_cmd->add_option("--tol", search_args.tol, "verification tolerance");
  search_cmd->add_option("--out", search_args.out, "write the best configuration here");
  search_cmd->add_option("--cert-out", search_args.cert_out, "write its certificate here");

  CorpusArgs corpus_args;
  auto* corpus_cmd = app.add_subcommand("corpus", "list or emit reference configurations");
  auto* corpus_list = corpus_cmd->add_subcommand("list", "print available names");
  auto* corpus_emit = corpus_cmd->add_subcommand("emit", "emit one reference configuration");
  corpus_emit->add_option("name", corpus_args.name, "construction name")->required();
  corpus_emit->add_option("--d", corpus_args.d, "dimension (orthonormal, repeated_vector)");
  corpus_emit->add_option("--n", corpus_args.n, "count (repeated_vector)");
  corpus_emit->add_option("--algebra", corpus_args.algebra,
                          "block sizes (orthonormal, scalar_lift)");
  corpus_emit->add_flag("--real", corpus_args.real_flag, "mark the algebra real (orthonormal)");
  corpus_emit->add_option("--base", corpus_args.base, "base name (scalar_lift, direct_sum)");
  corpus_emit->add_option("--base2", corpus_args.base2, "second base name (direct_sum)");
  corpus_emit->add_option("--out", corpus_args.out, "output path (default stdout)");
  corpus_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify_cmd) return run_verify(verify_args);
    if (*bound_cmd) return run_bound(bound_args);
    if (*certify_cmd) return run_certify(certify_file, certify_tol, certify_out);
    if (*search_cmd) return run_search(search_args);
    if (*corpus_list) return run_corpus_list();
    if (*corpus_emit) return run_corpus_emit(corpus_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
