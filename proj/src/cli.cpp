#include "tensorspec/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "tensorspec/direct_solve.hpp"
#include "tensorspec/markov.hpp"
#include "tensorspec/power_iter.hpp"
#include "tensorspec/rankone.hpp"
#include "tensorspec/tensor_io.hpp"

namespace tensorspec::cli {

using nlohmann::json;

namespace {

struct Shared {
  double tol = 1e-10;
  int max_iter = 10000;
  std::uint64_t seed = 0;
  bool json = false;
};

// What a handler produces besides the shared report fields.
struct Outcome {
  int exit_code = kSuccess;
  json results = json::object();
  std::string human;
  std::optional<int> iterations;
};

struct Input {
  std::string digest;
  std::string bytes;
};

Input load_bytes(const std::string& path) {
  Input in;
  in.bytes = io::read_file_bytes(path);
  in.digest = "sha256:" + sha256_hex(in.bytes);
  return in;
}

std::string h6(double v) { return io::format_double(v, 6); }

json vec_json(const Vector& x) {
  json arr = json::array();
  for (int i = 0; i < x.size(); ++i) arr.push_back(x[i]);
  return arr;
}

std::string vec_human(const Vector& x) {
  std::string s = "(";
  for (int i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += h6(x[i]);
  }
  return s + ")";
}

Vector parse_vector(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ValidationError({"invalid number '" + tok + "' in vector '" + text + "'"});
    }
  }
  Vector x(static_cast<int>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) x[static_cast<int>(i)] = vals[i];
  return x;
}

// "a,b;c,d" -> two vectors, most recent first.
std::vector<Vector> parse_history(const std::string& text) {
  std::vector<Vector> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) out.push_back(parse_vector(part));
  return out;
}

IterOptions iter_options(const Shared& s) {
  IterOptions o;
  o.tol = s.tol;
  o.max_iter = s.max_iter;
  o.seed = s.seed;
  return o;
}

json pair_json(const EigenPair& p) {
  json j;
  j["lambda"] = {{"re", p.lambda.real()}, {"im", p.lambda.imag()}};
  j["kind"] = std::string(to_string(p.kind));
  j["multiplicity"] = p.multiplicity;
  if (p.vector) {
    j["vector"] = vec_json(*p.vector);
    j["residual"] = p.residual;
  } else {
    j["vector"] = nullptr;
  }
  return j;
}

std::string pair_human(const EigenPair& p) {
  std::string s = "  lambda = " + h6(p.lambda.real());
  if (p.lambda.imag() != 0.0) {
    s += (p.lambda.imag() < 0 ? " - " : " + ") + h6(std::abs(p.lambda.imag())) + "i";
  }
  s += "  [" + std::string(to_string(p.kind)) + "]";
  if (p.multiplicity > 1) s += "  x" + std::to_string(p.multiplicity);
  if (p.vector) s += "  x = " + vec_human(*p.vector);
  return s + "\n";
}

// --- handlers --------------------------------------------------------------

Outcome run_eig_h(const io::TensorFile& f, const Shared& s) {
  const SymTensor a = f.symmetric();
  const auto pairs = h_spectrum_2d(a, s.tol);
  const auto poly = char_poly_2d(a);
  const double det = sym_hyperdet_2d(a);
  std::complex<double> sum = 0.0;
  std::complex<double> product = 1.0;
  for (const auto& p : pairs) {
    sum += static_cast<double>(p.multiplicity) * p.lambda;
    product *= std::pow(p.lambda, p.multiplicity);
  }
  Outcome o;
  o.results["eigenvalues"] = json::array();
  for (const auto& p : pairs) o.results["eigenvalues"].push_back(pair_json(p));
  o.results["char_poly_ascending"] = poly.coefficients();
  o.results["degree"] = poly.degree();
  o.results["hyperdeterminant"] = det;
  o.results["trace"] = trace(a);
  o.results["eigenvalue_sum"] = sum.real();
  o.results["eigenvalue_product"] = product.real();
  std::string h = "eigenvalues (" + std::to_string(poly.degree()) + " with multiplicity):\n";
  for (const auto& p : pairs) h += pair_human(p);
  h += "det = " + h6(det) + ", sum = " + h6(sum.real()) + ", (m-1) tr = " +
       h6((a.order() - 1) * trace(a)) + "\n";
  o.human = h;
  return o;
}

Outcome run_eig_z(const io::TensorFile& f, const Shared& s, const std::string& method) {
  const SymTensor a = f.symmetric();
  Outcome o;
  o.results["method"] = method;
  if (method == "direct") {
    const auto spectrum = z_spectrum_small(a, s.tol);
    o.results["degenerate"] = spectrum.degenerate;
    o.results["eigenpairs"] = json::array();
    std::string h = "Z-eigenpairs (" + std::to_string(spectrum.pairs.size()) + ")";
    h += spectrum.degenerate ? ", degenerate: every unit vector is an eigenvector\n" : ":\n";
    for (const auto& p : spectrum.pairs) {
      o.results["eigenpairs"].push_back(pair_json(p));
      h += pair_human(p);
    }
    o.human = h;
    return o;
  }
  const auto r = z_power(a, iter_options(s));
  o.results["eigenpair"] = pair_json(r.pair);
  o.results["converged"] = r.converged;
  o.results["shift"] = r.shift;
  o.iterations = r.iterations;
  o.human = std::string(r.converged ? "converged" : "NOT converged") + " after " +
            std::to_string(r.iterations) + " iterations:\n" + pair_human(r.pair);
  if (!r.converged) o.exit_code = kNotConverged;
  return o;
}

Outcome run_pd(const io::TensorFile& f, const Shared& s) {
  const SymTensor a = f.symmetric();
  const auto v = pd_check(a, s.tol);
  Outcome o;
  o.results["classification"] = std::string(to_string(v.classification));
  o.results["method"] = std::string(to_string(v.method));
  o.results["margin"] = v.margin;
  std::string h = std::string(to_string(v.classification)) + " (" +
                  std::string(to_string(v.method)) + ", margin " + h6(v.margin) + ")\n";
  if (v.witness) {
    o.results["witness"] = vec_json(*v.witness);
    o.results["witness_value"] = apply_m(a, *v.witness);
    h += "witness x = " + vec_human(*v.witness) + ", A x^m = " +
         h6(apply_m(a, *v.witness)) + "\n";
  } else {
    o.results["witness"] = nullptr;
  }
  o.human = h;
  return o;
}

Outcome run_specrad(const io::TensorFile& f, const Shared& s) {
  const auto opts = iter_options(s);
  NQZTrace t;
  bool irreducible = false;
  if (f.kind == io::TensorKind::Symmetric) {
    const SymTensor a = f.symmetric();
    t = nqz(a, opts);
    irreducible = is_weakly_irreducible(a);
  } else {
    const GenTensor a = f.general();
    t = nqz(a, opts);
    irreducible = is_weakly_irreducible(a);
  }
  Outcome o;
  o.results["rho"] = t.rho;
  o.results["bracket"] = {t.lower(), t.upper()};
  o.results["converged"] = t.converged;
  o.results["stop_reason"] = t.stop_reason;
  o.results["bound_estimate"] = t.bound_estimate;
  o.results["weakly_irreducible"] = irreducible;
  if (!t.iterates.empty()) o.results["eigenvector"] = vec_json(t.iterates.back().x);
  o.iterations = static_cast<int>(t.iterates.size());
  o.human = "rho in [" + h6(t.lower()) + ", " + h6(t.upper()) + "], estimate " +
            h6(t.rho) + " (" + t.stop_reason + ", " +
            std::to_string(t.iterates.size()) + " iterations" +
            (irreducible ? "" : ", not weakly irreducible") + ")\n";
  if (!t.converged) o.exit_code = kNotConverged;
  return o;
}

Outcome run_gershgorin(const io::TensorFile& f) {
  const auto disks = gershgorin_disks(f.symmetric());
  Outcome o;
  o.results["disks"] = json::array();
  std::string h;
  for (std::size_t i = 0; i < disks.size(); ++i) {
    o.results["disks"].push_back({{"center", disks[i].center}, {"radius", disks[i].radius}});
    h += "disk " + std::to_string(i + 1) + ": center " + h6(disks[i].center) +
         ", radius " + h6(disks[i].radius) + "\n";
  }
  o.human = h;
  return o;
}

Outcome run_markov_stationary(const io::TensorFile& f, const Shared& s,
                              const std::string& x0_text) {
  const auto p = f.stochastic();
  const Vector x0 = x0_text.empty() ? Vector() : parse_vector(x0_text);
  const auto r = stationary_power(p, x0, iter_options(s));
  Outcome o;
  o.results["x_star"] = vec_json(r.x_star);
  o.results["residual"] = r.residual;
  o.results["status"] = to_string(r.status);
  o.iterations = r.iterations;
  o.human = "x* = " + vec_human(r.x_star) + "\nresidual " + h6(r.residual) + " (" +
            to_string(r.status) + ", " + std::to_string(r.iterations) + " iterations)\n";
  if (r.status != StationaryStatus::Converged) o.exit_code = kNotConverged;
  return o;
}

std::vector<Vector> history_or_uniform(const TransitionTensor& p, const std::string& text) {
  if (!text.empty()) {
    auto h = parse_history(text);
    for (const auto& x : h) check_prob_vec(x);
    return h;
  }
  return std::vector<Vector>(p.order() - 1, Vector::Constant(p.dim(), 1.0 / p.dim()));
}

Outcome run_markov_evolve(const io::TensorFile& f, const std::string& history) {
  const auto p = f.stochastic();
  if (history.empty()) throw ValidationError({"evolve needs --history"});
  const Vector x = evolve(p, history_or_uniform(p, history));
  Outcome o;
  o.results["x"] = vec_json(x);
  o.human = "x = " + vec_human(x) + "\n";
  return o;
}

Outcome run_markov_simulate(const io::TensorFile& f, const std::string& history, int steps) {
  const auto p = f.stochastic();
  const auto r = simulate(p, history_or_uniform(p, history), steps);
  Outcome o;
  o.results["steps"] = steps;
  o.results["final"] = r.trajectory.empty() ? json(nullptr) : vec_json(r.trajectory.back());
  o.results["last_change"] = r.last_change;
  o.iterations = steps;
  o.human = (r.trajectory.empty() ? std::string("no steps\n")
                                  : "x(T) = " + vec_human(r.trajectory.back()) + "\n") +
            "last change " + h6(r.last_change) + " (observed, not a convergence claim)\n";
  return o;
}

Outcome run_rankone(const io::TensorFile& f, const Shared& s, int terms) {
  const SymTensor a = f.symmetric();
  const auto r = ssbra(a, terms, s.tol, iter_options(s));
  const double decay = 1.0 - 1.0 / std::pow(static_cast<double>(a.dim()), a.order() - 1);
  Outcome o;
  o.results["terms"] = json::array();
  std::string h;
  double prev = r.initial_norm;
  for (std::size_t k = 0; k < r.terms.size(); ++k) {
    const auto& t = r.terms[k];
    const double res = r.residual_norms[k];
    const bool within = res * res <= prev * prev * decay + 1e-12 * r.initial_norm * r.initial_norm;
    o.results["terms"].push_back({{"lambda", t.lambda},
                                  {"vector", vec_json(t.x)},
                                  {"exact", t.exact},
                                  {"residual_norm", res},
                                  {"decay_bound_holds", within}});
    h += "term " + std::to_string(k + 1) + ": lambda = " + h6(t.lambda) + ", x = " +
         vec_human(t.x) + ", ||residual||_F = " + h6(res) + "\n";
    prev = res;
  }
  o.results["initial_norm"] = r.initial_norm;
  o.results["decay_factor"] = decay;
  o.results["reconstruction_error"] =
      frobenius_norm(subtract(a, reconstruct(r, a.order(), a.dim())));
  o.iterations = static_cast<int>(r.terms.size());
  if (r.failure) {
    o.results["failure"] = *r.failure;
    h += "stopped early: " + *r.failure + "\n";
    o.exit_code = kNotConverged;
  }
  o.human = h;
  return o;
}

Outcome run_bounds_app(int m, int n) {
  const auto b = app_bounds(m, n);
  Outcome o;
  o.results = {{"m", b.m},
               {"n", b.n},
               {"lower", b.lower},
               {"upper", b.upper},
               {"rho_z", b.rho_z},
               {"reference_norm", b.reference_norm}};
  o.results["closed_form_upper"] = b.closed_form_upper ? json(*b.closed_form_upper) : json(nullptr);
  o.human = "App(S_{" + std::to_string(m) + "," + std::to_string(n) + "}) in [" +
            h6(b.lower) + ", " + h6(b.upper) + "]";
  if (b.closed_form_upper) o.human += ", closed-form upper " + h6(*b.closed_form_upper);
  o.human += "\n";
  return o;
}

Outcome run_transform(const io::TensorFile& f, const io::TensorFile& mat) {
  const SymTensor b = transform(f.symmetric(), io::to_matrix(mat));
  Outcome o;
  const std::string text = io::write_tensor(io::to_file(b));
  o.results["tensor"] = text;
  o.human = text;
  return o;
}

Outcome run_hypergraph(const std::string& edges_bytes, int n) {
  std::istringstream in(edges_bytes);
  const SymTensor a = hypergraph_adjacency(io::parse_edges(in), n);
  Outcome o;
  const std::string text = io::write_tensor(io::to_file(a));
  o.results["tensor"] = text;
  o.results["order"] = a.order();
  o.results["weakly_irreducible"] = is_weakly_irreducible(a);
  o.human = text;
  return o;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream ss;
  for (unsigned int i = 0; i < len; ++i) {
    ss << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return ss.str();
}

RunOutcome run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  Shared shared;
  std::string input;
  std::string method = "direct";
  std::string matrix_path;
  std::string edges_path;
  std::string x0;
  std::string history;
  int steps = 100;
  int terms = 1;
  int bound_order = 0;
  int bound_dim = 0;
  int dim = 0;

  CLI::App app{"Spectral analysis of higher-order tensors", "tensorspec"};
  app.require_subcommand(1);
  auto shared_flags = [&](CLI::App* sub) {
    sub->add_option("--tol", shared.tol, "Tolerance")->capture_default_str();
    sub->add_option("--max-iter", shared.max_iter, "Iteration cap")->capture_default_str();
    sub->add_option("--seed", shared.seed, "Random seed")->capture_default_str();
    sub->add_flag("--json", shared.json, "Emit one JSON document");
  };
  auto with_input = [&](CLI::App* sub) {
    sub->add_option("--input", input, ".tns tensor file")->required();
    shared_flags(sub);
    return sub;
  };

  auto* eig_h = with_input(app.add_subcommand("eig-h", "All eigenvalues of an n = 2 tensor"));
  auto* eig_z = with_input(app.add_subcommand("eig-z", "Z-eigenpairs"));
  eig_z->add_option("--method", method, "direct (n <= 3) or power")
      ->check(CLI::IsMember({"direct", "power"}))
      ->capture_default_str();
  auto* pd = with_input(app.add_subcommand("pd", "Positive-definiteness of an even-order form"));
  auto* specrad = with_input(app.add_subcommand("specrad", "Spectral radius of a nonnegative tensor"));
  auto* gersh = with_input(app.add_subcommand("gershgorin", "Eigenvalue inclusion disks"));

  auto* markov = app.add_subcommand("markov", "Higher-order Markov chains");
  markov->require_subcommand(1);
  auto* stationary = with_input(markov->add_subcommand("stationary", "Stationary distribution"));
  stationary->add_option("--x0", x0, "Start distribution, comma separated");
  auto* evolve_cmd = with_input(markov->add_subcommand("evolve", "One step of the chain"));
  evolve_cmd->add_option("--history", history,
                         "m-1 distributions, most recent first: 'a,b;c,d'");
  auto* simulate_cmd = with_input(markov->add_subcommand("simulate", "Run the full-history chain"));
  simulate_cmd->add_option("--history", history, "Initial history (default uniform)");
  simulate_cmd->add_option("--steps", steps, "Number of steps")->capture_default_str();

  auto* rankone = with_input(app.add_subcommand("rankone", "Successive best rank-one approximation"));
  rankone->add_option("--terms", terms, "Number of rank-one terms")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "Approximation-ratio bounds");
  bounds->require_subcommand(1);
  auto* app_cmd = bounds->add_subcommand("app", "Best rank-one approximation ratio bounds");
  app_cmd->add_option("--order", bound_order, "Tensor order m")->required()->check(CLI::Range(2, 64));
  app_cmd->add_option("--dim", bound_dim, "Dimension n")->required()->check(CLI::Range(1, 1 << 20));
  shared_flags(app_cmd);

  auto* transform_cmd = with_input(app.add_subcommand("transform", "Compute P^m A"));
  transform_cmd->add_option("--matrix", matrix_path, "Order-2 .tns matrix file")->required();

  auto* hyper = app.add_subcommand("hypergraph", "Adjacency tensor of a uniform hypergraph");
  hyper->add_option("--edges", edges_path, "Edge file")->required();
  hyper->add_option("--dim", dim, "Number of vertices")->required()->check(CLI::PositiveNumber);
  shared_flags(hyper);

  RunOutcome result;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return result;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return result;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    result.exit_code = kInvalidInput;
    result.report = {{"status", "invalid-input"}, {"exit_code", kInvalidInput}, {"error", e.what()}};
    if (shared.json) out << result.report.dump(2) << "\n";
    return result;
  }

  std::string command;
  for (const auto* sub : app.get_subcommands()) {
    command = sub->get_name();
    for (const auto* leaf : sub->get_subcommands()) command += " " + leaf->get_name();
  }

  json report;
  report["command"] = command;
  report["arguments"] = args;
  report["tolerances"] = {{"tol", shared.tol}, {"max_iter", shared.max_iter}, {"seed", shared.seed}};

  Outcome o;
  try {
    std::string digest;
    auto load = [&]() {
      const Input in = load_bytes(input);
      digest = in.digest;
      return io::parse_tensor(std::string_view(in.bytes));
    };
    if (eig_h->parsed()) {
      o = run_eig_h(load(), shared);
    } else if (eig_z->parsed()) {
      o = run_eig_z(load(), shared, method);
    } else if (pd->parsed()) {
      o = run_pd(load(), shared);
    } else if (specrad->parsed()) {
      o = run_specrad(load(), shared);
    } else if (gersh->parsed()) {
      o = run_gershgorin(load());
    } else if (stationary->parsed()) {
      o = run_markov_stationary(load(), shared, x0);
    } else if (evolve_cmd->parsed()) {
      o = run_markov_evolve(load(), history);
    } else if (simulate_cmd->parsed()) {
      o = run_markov_simulate(load(), history, steps);
    } else if (rankone->parsed()) {
      o = run_rankone(load(), shared, terms);
    } else if (app_cmd->parsed()) {
      digest = "sha256:" + sha256_hex("bounds app --order " + std::to_string(bound_order) +
                                      " --dim " + std::to_string(bound_dim));
      o = run_bounds_app(bound_order, bound_dim);
    } else if (transform_cmd->parsed()) {
      const Input tin = load_bytes(input);
      const Input min = load_bytes(matrix_path);
      digest = "sha256:" + sha256_hex(tin.bytes + min.bytes);
      report["matrix_digest"] = min.digest;
      o = run_transform(io::parse_tensor(std::string_view(tin.bytes)),
                        io::parse_tensor(std::string_view(min.bytes)));
    } else if (hyper->parsed()) {
      const Input ein = load_bytes(edges_path);
      digest = ein.digest;
      o = run_hypergraph(ein.bytes, dim);
    }
    report["input_digest"] = digest;
  } catch (const SolverError& e) {
    o.exit_code = kNotConverged;
    report["error"] = e.what();
  } catch (const std::invalid_argument& e) {
    o.exit_code = kInvalidInput;
    report["error"] = e.what();
  } catch (const std::exception& e) {
    o.exit_code = kInvalidInput;
    report["error"] = e.what();
  }
  if (!report.contains("input_digest")) report["input_digest"] = nullptr;

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report["status"] = o.exit_code == kSuccess        ? "ok"
                     : o.exit_code == kInvalidInput ? "invalid-input"
                                                    : "not-converged";
  report["exit_code"] = o.exit_code;
  report["results"] = o.results;
  if (o.iterations) report["iterations"] = *o.iterations;
  report["wall_time_seconds"] = wall;

  if (shared.json) {
    out << report.dump(2) << "\n";
  } else {
    out << o.human;
    if (report.contains("error")) err << "error: " << report["error"].get<std::string>() << "\n";
  }
  result.exit_code = o.exit_code;
  result.report = std::move(report);
  return result;
}

}  // namespace tensorspec::cli
