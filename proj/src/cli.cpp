#include "cuspcal/cli.hpp"

#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "cuspcal/cache.hpp"
#include "cuspcal/charformula.hpp"
#include "cuspcal/error.hpp"
#include "cuspcal/json_io.hpp"
#include "cuspcal/lietype.hpp"
#include "cuspcal/variety.hpp"

namespace cuspcal::cli {

namespace {

using json_io::json;

struct Job {
  Budget budget;
  std::string output;
  std::uint64_t seed = 1;

  std::string input, char_path, element_path, at_path, mode = "dot", suite = "full", torus = "split";
  Int tiebreak = 0;
  std::string tiebreak_pi = "0";
  Int q = 0;
  int m = 1;
  std::vector<Int> s, t;
  // Set by a command whose output is written but whose check failed.
  mutable std::string failure;
};

void check_field(const padic::FieldContext& ctx, const Budget& b) {
  if (ctx.precision() > b.max_precision)
    fail_budget("precision " + std::to_string(ctx.precision()) + " exceeds the limit " +
                std::to_string(b.max_precision));
  if (ctx.degree() > b.max_degree)
    fail_budget("degree " + std::to_string(ctx.degree()) + " exceeds the limit " + std::to_string(b.max_degree));
}

void check_q(Int Q, const Budget& b) {
  if (Q < 2) throw Error(ErrorKind::Schema, "q must be a prime power");
  if (Q > b.max_q) fail_budget("q = " + std::to_string(Q) + " exceeds the limit " + std::to_string(b.max_q));
}

torus::TorusCharacter load_character(const Job& job) {
  auto mu = json_io::character_from_json(json_io::read_file(job.char_path));
  check_field(mu.context(), job.budget);
  return mu;
}

weakfact::TieBreak tiebreak_of(const Job& job) {
  return {job.tiebreak, normalize_phase(json_io::parse_rational(json(job.tiebreak_pi)))};
}

jordan::CompactModCenterElement load_element(const padic::FieldContext& ctx, const std::string& path,
                                             json* doc = nullptr) {
  json j = json_io::read_file(path);
  auto g = jordan::to_vertex_stabilizer(ctx, json_io::entries_from_json(ctx, j));
  if (doc) *doc = std::move(j);
  return g;
}

json cmd_tjd(const Job& job) {
  const auto in = json_io::matrix_from_json(json_io::read_file(job.input));
  check_field(*in.field, job.budget);
  const auto cls = jordan::classify_entries(*in.field, in.entries);
  if (cls.cls == jordan::ElementClass::OutsideGx) return {{"class", jordan::to_string(cls.cls)}, {"in_Gx", false}};
  const auto g = jordan::to_vertex_stabilizer(*in.field, in.entries);
  const auto jd = jordan::tjd_mod_center(g);
  if (!jordan::is_valid_decomposition(g, jd.s, jd.u)) fail_assert("decomposition failed validation");
  return {{"in_Gx", true},
          {"s", json_io::to_json(jd.s)},
          {"u", json_io::to_json(jd.u)},
          {"order_prime_to_p", jd.order_prime_to_p},
          {"class", jordan::to_string(cls.cls)},
          {"topologically_unipotent", cls.topologically_unipotent},
          {"absolutely_semisimple_mod_center", cls.absolutely_semisimple_mod_center}};
}

json cmd_tower(const Job& job) {
  const auto mu = load_character(job);
  const auto analysis = torus::orbit_restriction_depths(mu);
  const auto tower = torus::levi_tower(mu, analysis);
  json out = json_io::to_json(tower, torus::is_regular_pair(mu, tower.bottom_degree()));
  json orbits = json::array();
  for (const auto& o : analysis.orbits)
    orbits.push_back({{"delta", o.delta},
                      {"divisor", o.divisor},
                      {"depth", o.depth ? json(*o.depth) : json(nullptr)},
                      {"lattice_certificate", o.lattice_certificate}});
  out["orbits"] = orbits;
  return out;
}

json cmd_factorize(const Job& job) {
  const auto mu = load_character(job);
  const auto wf = weakfact::weak_factorize(mu, tiebreak_of(job));
  return {{"mu", json_io::to_json(mu)}, {"factorization", json_io::to_json(wf)}};
}

json cmd_eval(const Job& job) {
  const auto mu = load_character(job);
  const weakfact::ExtendedCharacter ext(weakfact::weak_factorize(mu, tiebreak_of(job)));
  json doc;
  const auto g = load_element(mu.context(), job.at_path, &doc);
  json out = {{"mode", job.mode}};
  if (job.mode == "sharp") {
    const auto v = ext.sharp(g);
    out["in_domain"] = v.has_value();
    out["value"] = v ? json(json_io::format_rational(*v)) : json(nullptr);
  } else if (job.mode == "dot") {
    out["value"] = json_io::to_json(ext.dot(g));
  } else {
    padic::FieldElement t{0, padic::Elem::one(mu.context())};
    if (doc.contains("t")) t = json_io::field_element_from_json(mu.context(), doc["t"]);
    out["value"] = json_io::format_rational(ext.hat(t, g));
  }
  return out;
}

std::string dltable_document(Int Q) {
  const auto ctx = lietype::FiniteLieContext::make(Q);
  const auto table = lietype::character_table(*ctx);
  const auto cert = lietype::certify_table(*ctx, table);
  return json_io::tagged(json_io::to_json(*ctx, table, cert)).dump(2) + "\n";
}

std::string cmd_dltable(const Job& job) {
  check_q(job.q, job.budget);
  const auto store = cache::Store::from_env();
  std::string doc = store.get_or(cache::Store::gl2_key(job.q), [&] { return dltable_document(job.q); });
  const json parsed = json_io::parse(doc);
  if (!parsed.value("/certificate/ok"_json_pointer, false))
    job.failure = "character table certificate failed for q = " + std::to_string(job.q);
  return doc;
}

json cmd_variety(const Job& job) {
  check_q(job.q, job.budget);
  if (job.m < 1) throw Error(ErrorKind::Schema, "m must be positive");
  if (ipow(job.q, job.m) > job.budget.max_qm)
    fail_budget("q^m = " + std::to_string(ipow(job.q, job.m)) + " exceeds the limit " +
                std::to_string(job.budget.max_qm));
  const auto version = job.torus == "elliptic" ? variety::TorusVersion::Elliptic : variety::TorusVersion::Split;
  const variety::VarietySetup setup(job.q, version);
  std::vector<variety::VarietyReport> reports;
  if (job.s.empty() && job.t.empty()) {
    reports = variety::check_all(setup, job.m);
  } else {
    if (job.s.empty() || job.t.empty()) throw Error(ErrorKind::Schema, "--s and --t go together");
    auto elem = [&](const std::vector<Int>& e) { return setup.torus_element(e[0], e.size() > 1 ? e[1] : 0); };
    reports.push_back(variety::variety_decomposition_check(setup, job.m, elem(job.s), elem(job.t)));
  }
  json list = json::array();
  bool all_ok = true;
  for (const auto& r : reports) {
    list.push_back(json_io::to_json(r));
    all_ok = all_ok && r.ok();
  }
  if (!all_ok) job.failure = "variety decomposition check failed";
  return {{"reports", list}, {"instances", reports.size()}, {"all_ok", all_ok}};
}

json cmd_rho_trace(const Job& job) {
  const auto mu = load_character(job);
  auto ext = std::make_shared<const weakfact::ExtendedCharacter>(weakfact::weak_factorize(mu, tiebreak_of(job)));
  const charformula::TraceEvaluator ev(ext);
  const auto g = load_element(mu.context(), job.element_path);
  return json_io::to_json(ev.evaluate(g));
}

json cmd_verify(const Job& job) {
  const auto mu = load_character(job);
  charformula::SampleSpec spec;
  spec.seed = job.seed;
  const bool full = job.suite == "full";
  spec.perturbations = full ? 3 : 1;
  const int D = torus::levi_tower(mu).bottom_degree();
  const int r = mu.context().degree() / D;
  if (r == 2) {
    const Int QD = ipow(mu.context().p(), D);
    const size_t group = static_cast<size_t>((QD * QD - 1) * (QD * QD - QD));
    spec.class_stride = spec.conjugation_stride = (group + 47) / 48;
  }
  const auto report = charformula::cross_validate(mu, spec, charformula::default_tiebreaks(), full);
  json out = {{"suite", job.suite}, {"seed", job.seed}, {"report", json_io::to_json(report)}};
  if (!report.ok()) job.failure = "cross-validation failed: " + report.witnesses.front();
  return out;
}

json cmd_cache(const std::string& action, const Job& job) {
  const auto store = cache::Store::from_env();
  json out = {{"action", action}, {"directory", store.dir().string()}};
  if (action == "build") {
    check_q(job.q, job.budget);
    const std::string key = cache::Store::gl2_key(job.q);
    out["key"] = key;
    out["checksum"] = store.put(key, dltable_document(job.q));
  } else if (action == "clear") {
    store.clear();
  }
  json entries = json::array();
  for (const auto& e : store.status())
    entries.push_back({{"key", e.key}, {"checksum", e.checksum}, {"bytes", e.bytes}});
  out["entries"] = entries;
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Job job;
  CLI::App app{"Characters of tame supercuspidal representations of GL_n: exact computations", "cuspcal"};
  app.require_subcommand(1);
  app.add_option("-o,--output", job.output, "Write the JSON result to this file");
  app.add_option("--seed", job.seed, "Seed for sampled suites");
  app.add_option("--max-q", job.budget.max_q, "Largest residue field size");
  app.add_option("--max-qm", job.budget.max_qm, "Largest Q^m for variety points");
  app.add_option("--max-precision", job.budget.max_precision, "Largest p-adic precision N");
  app.add_option("--max-degree", job.budget.max_degree, "Largest field degree n");

  auto* tjd = app.add_subcommand("tjd", "Topological Jordan decomposition of a matrix");
  tjd->add_option("--input", job.input, "Matrix JSON")->required();

  auto* tower = app.add_subcommand("tower", "Twisted Levi tower and depths of a character");
  tower->add_option("--char", job.char_path, "Character JSON")->required();

  auto* factorize = app.add_subcommand("factorize", "Weak factorization of a character");
  factorize->add_option("--char", job.char_path, "Character JSON")->required();

  auto* eval = app.add_subcommand("eval", "Evaluate mu-sharp, its extension by zero, or mu-hat");
  eval->add_option("--char", job.char_path, "Character JSON")->required();
  eval->add_option("--mode", job.mode, "sharp | dot | hat")->check(CLI::IsMember({"sharp", "dot", "hat"}));
  eval->add_option("--at", job.at_path, "Element JSON")->required();

  for (auto* sub : {factorize, eval}) {
    sub->add_option("--tiebreak", job.tiebreak, "Teichmüller exponent of the determinant character");
    sub->add_option("--tiebreak-pi", job.tiebreak_pi, "Value of the determinant character at p, as a/N");
  }

  auto* dltable = app.add_subcommand("dltable", "Certified character table of GL_2(F_q)");
  dltable->add_option("--q", job.q, "Residue field size")->required();

  auto* variety = app.add_subcommand("variety-check", "Fixed-point decomposition check on the variety X");
  variety->add_option("--q", job.q, "Residue field size")->required();
  variety->add_option("--m", job.m, "Points over F_{q^m}");
  variety->add_option("--torus", job.torus, "split | elliptic")->check(CLI::IsMember({"split", "elliptic"}));
  variety->add_option("--s", job.s, "Torus exponents of s")->expected(1, 2);
  variety->add_option("--t", job.t, "Torus exponents of t")->expected(1, 2);

  auto* rho = app.add_subcommand("rho-trace", "Trace of rho_T^mu at an element of T H_{x,0}");
  rho->add_option("--char", job.char_path, "Character JSON")->required();
  rho->add_option("--element", job.element_path, "Element JSON")->required();
  rho->add_option("--tiebreak", job.tiebreak, "Teichmüller exponent of the determinant character");
  rho->add_option("--tiebreak-pi", job.tiebreak_pi, "Value of the determinant character at p, as a/N");

  auto* verify = app.add_subcommand("verify", "Cross-validate the character formula");
  verify->add_option("--char", job.char_path, "Character JSON")->required();
  verify->add_option("--suite", job.suite, "quick | full")->check(CLI::IsMember({"quick", "full"}));

  auto* cache_cmd = app.add_subcommand("cache", "Manage cached character tables");
  cache_cmd->require_subcommand(1);
  auto* cache_build = cache_cmd->add_subcommand("build", "Compute and store the table for q");
  cache_build->add_option("--q", job.q, "Residue field size")->required();
  auto* cache_clear = cache_cmd->add_subcommand("clear", "Remove all entries");
  auto* cache_status = cache_cmd->add_subcommand("status", "List keys and checksums");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kSchema;
  }

  try {
    std::string text;
    auto emit = [&](const json& j) { text = json_io::tagged(j).dump(2) + "\n"; };
    if (*tjd) emit(cmd_tjd(job));
    else if (*tower) emit(cmd_tower(job));
    else if (*factorize) emit(cmd_factorize(job));
    else if (*eval) emit(cmd_eval(job));
    else if (*dltable) text = cmd_dltable(job);
    else if (*variety) emit(cmd_variety(job));
    else if (*rho) emit(cmd_rho_trace(job));
    else if (*verify) emit(cmd_verify(job));
    else if (*cache_build) emit(cmd_cache("build", job));
    else if (*cache_clear) emit(cmd_cache("clear", job));
    else if (*cache_status) emit(cmd_cache("status", job));

    if (job.output.empty()) {
      out << text;
    } else {
      std::ofstream f(job.output, std::ios::binary | std::ios::trunc);
      if (!f) fail("cannot write " + job.output);
      f << text;
    }
    if (!job.failure.empty()) {
      err << "error: " << job.failure << "\n";
      return kAssertion;
    }
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Schema:
      case ErrorKind::Precondition:
        return kSchema;
      case ErrorKind::Budget:
        return kBudget;
      case ErrorKind::Assertion:
        return kAssertion;
    }
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace cuspcal::cli
