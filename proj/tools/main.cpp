#include "gammamod/document.hpp"
#include "gammamod/suites.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>
#include <map>

using namespace gammamod;
using json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, failed = 1, parse = 2, invariant = 3, domain = 4, budget = 5 };

void emit(const json& j) { std::cout << j.dump() << "\n"; }

json error_line(const std::string& command, const char* status, const std::string& detail) {
  json j;
  j["command"] = command;
  j["status"] = status;
  j["detail"] = detail;
  return j;
}

void check_field(const ArrModule& F, std::optional<std::uint32_t> field) {
  if (field && F.prime() != *field)
    throw DomainError("document field " + std::to_string(F.prime()) + " differs from --field " + std::to_string(*field));
}

ArrModule as_module(const Document& d, const std::string& what) {
  if (auto* m = std::get_if<ArrModule>(&d.payload)) return *m;
  if (auto* g = std::get_if<GammaModule>(&d.payload)) return g->module();
  throw DomainError(what + ": expected a module document, got " + d.type());
}

int cmd_validate(const std::string& path, std::optional<std::uint32_t> field) {
  Document d = read_document(path);
  if (auto* m = std::get_if<ArrModule>(&d.payload)) check_field(*m, field);
  if (auto* g = std::get_if<GammaModule>(&d.payload)) check_field(g->module(), field);
  json j;
  j["command"] = "validate";
  j["status"] = "ok";
  j["type"] = d.type();
  emit(j);
  return ok;
}

int cmd_functor(const std::string& name, const std::string& in, const std::string& out) {
  Document d = read_document(in);
  Document r = [&]() -> Document {
    if (name == "beta-star") return {beta_star(as_module(d, "beta-star"))};
    auto* g = std::get_if<GammaModule>(&d.payload);
    if (!g) throw DomainError(name + " needs a gamma-module document, got " + d.type());
    if (name == "beta-inv") return {beta_inv(*g)};
    if (name == "alpha-star") return {alpha_star(*g)};
    throw DomainError("unknown functor \"" + name + "\"");
  }();
  write_document(out, r);
  json j;
  j["command"] = "functor";
  j["status"] = "ok";
  j["functor"] = name;
  j["type"] = r.type();
  j["output"] = out;
  emit(j);
  return ok;
}

struct DistanceArgs {
  std::string kind, a, b;
  std::string direction;
  std::string mode = "exact";
  std::string tol;
  unsigned budget = 20;
  std::string witness_out;
};

json result_json(const DistanceResult& d) {
  json j;
  if (d.kind == DistanceResult::Kind::exact) {
    j["value"] = distance_string(d);
    j["attained"] = !d.infinite && d.attained;
  } else {
    j["lo"] = d.lo.str();
    j["hi"] = d.hi_infinite ? std::string("inf") : d.hi.str();
  }
  j["decisions"] = d.decisions;
  return j;
}

int cmd_distance(const DistanceArgs& args, std::optional<std::uint32_t> field) {
  Document da = read_document(args.a), db = read_document(args.b);
  DistanceOptions opt;
  opt.search.budget_bits = args.budget;
  if (!args.tol.empty()) {
    opt.mode = DistanceOptions::Mode::bisection;
    opt.tolerance = Rat::parse(args.tol);
    if (opt.tolerance.sign() <= 0) throw DomainError("--tol must be positive");
  } else if (args.mode != "exact") {
    throw DomainError("--mode must be exact (use --tol for bisection)");
  }
  json j;
  j["command"] = "distance";
  j["kind"] = args.kind;
  DistanceResult d;
  if (args.kind == "interleaving") {
    ArrModule F = as_module(da, "first input"), G = as_module(db, "second input");
    check_field(F, field);
    check_field(G, field);
    if (args.direction.empty()) throw DomainError("interleaving distance needs --direction");
    RatVec v = parse_vector(args.direction);
    const ConeSpec& cone = F.complex().frame().cone();
    if (v.size() != cone.dim() || !interior_contains(antipode(cone), v))
      throw DomainError("direction " + args.direction + " is not interior to the antipodal cone");
    d = interleaving_distance(F, G, v, opt);
    if (!args.witness_out.empty() && d.witness) {
      write_document(args.witness_out, Document{WitnessDocument{F, G, *d.witness}});
      j["witness_path"] = args.witness_out;
    }
  } else if (args.kind == "convolution") {
    auto* F = std::get_if<RaySheaf>(&da.payload);
    auto* G = std::get_if<RaySheaf>(&db.payload);
    if (!F || !G) throw DomainError("convolution distance needs two ray-sheaf documents");
    RatVec v = parse_vector(args.direction.empty() ? "1" : args.direction);
    if (v.size() != 1 || v[0].sign() <= 0) throw DomainError("gauge direction must be a positive rational");
    GaugeSpec g(ConeSpec::orthant(1, -1), v);
    CIsoOptions co;
    co.budget_bits = args.budget;
    d = convolution_distance(*F, *G, g, co);
  } else {
    throw DomainError("distance kind must be interleaving or convolution");
  }
  j["status"] = d.budget_exceeded ? "budget-exceeded" : "ok";
  j.update(result_json(d));
  if (d.budget_exceeded) {
    j["lo"] = d.lo.str();
    j["hi"] = d.hi_infinite ? std::string("inf") : d.hi.str();
  }
  emit(j);
  return d.budget_exceeded ? budget : ok;
}

int cmd_check(const std::string& suite, std::uint64_t seed, std::optional<std::size_t> count) {
  static const std::map<std::string, std::size_t> defaults{
      {"isometry", 30}, {"ephemeral", 100}, {"gauge", 1000}, {"conv-vs-int", 500}, {"serre", 100}};
  auto it = defaults.find(suite);
  if (it == defaults.end()) throw DomainError("unknown suite \"" + suite + "\"");
  SuiteReport rep = run_suite(suite, seed, count.value_or(it->second));
  for (const auto& f : rep.failures) {
    json j;
    j["command"] = "check";
    j["suite"] = suite;
    j["status"] = "case-failed";
    j["seed"] = f.seed;
    j["detail"] = f.detail;
    emit(j);
  }
  json j;
  j["command"] = "check";
  j["suite"] = suite;
  j["status"] = rep.ok() ? "ok" : "failed";
  j["seed"] = rep.seed;
  j["count"] = rep.count;
  j["passed"] = rep.passed;
  emit(j);
  return rep.ok() ? ok : failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gammamod: persistence modules over cone orders"};
  app.require_subcommand(1);
  std::optional<std::uint32_t> field;
  app.add_option("--field", field, "Expected field characteristic of module documents");

  std::string vpath;
  auto* validate = app.add_subcommand("validate", "Check a document and the functoriality of its module");
  validate->add_option("path", vpath)->required();

  std::string fname, fin, fout;
  auto* functor = app.add_subcommand("functor", "Apply beta-star, beta-inv or alpha-star");
  functor->add_option("name", fname)->required()->check(CLI::IsMember({"beta-star", "beta-inv", "alpha-star"}));
  functor->add_option("input", fin)->required();
  functor->add_option("output", fout)->required();

  DistanceArgs dargs;
  auto* distance = app.add_subcommand("distance", "Interleaving or convolution distance");
  distance->add_option("kind", dargs.kind)->required()->check(CLI::IsMember({"interleaving", "convolution"}));
  distance->add_option("first", dargs.a)->required();
  distance->add_option("second", dargs.b)->required();
  distance->add_option("--direction", dargs.direction, "Shift direction \"p/q,p/q,...\"");
  auto* mode = distance->add_option("--mode", dargs.mode, "Only \"exact\"; pass --tol for bisection");
  distance->add_option("--tol", dargs.tol, "Bisection tolerance \"p/q\"")->excludes(mode);
  distance->add_option("--budget", dargs.budget, "Search budget in bits (2^N nodes per decision)");
  distance->add_option("--witness-out", dargs.witness_out, "Write the optimal interleaving witness here");

  std::string suite;
  std::uint64_t seed = 1;
  std::optional<std::size_t> count;
  auto* check = app.add_subcommand("check", "Run a seeded property suite");
  check->add_option("suite", suite)->required()->check(CLI::IsMember(suite_names()));
  check->add_option("--seed", seed);
  check->add_option("--count", count);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? ok : parse;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    if (*validate) return cmd_validate(vpath, field);
    if (*functor) return cmd_functor(fname, fin, fout);
    if (*distance) return cmd_distance(dargs, field);
    return cmd_check(suite, seed, count);
  } catch (const ParseError& e) {
    emit(error_line(command, "parse-error", e.what()));
    return parse;
  } catch (const DimensionError& e) {
    emit(error_line(command, "parse-error", e.what()));
    return parse;
  } catch (const InvariantError& e) {
    emit(error_line(command, "invariant-violation", e.what()));
    return invariant;
  } catch (const DomainError& e) {
    emit(error_line(command, "domain-error", e.what()));
    return domain;
  } catch (const BudgetExceeded& e) {
    emit(error_line(command, "budget-exceeded", e.what()));
    return budget;
  } catch (const std::exception& e) {
    emit(error_line(command, "error", e.what()));
    return failed;
  }
}
