// wreathkit: build wreath products and check claims about their normal
// subgroups from the command line.
//
// Exit status: 0 all checks pass, 1 internal failure, 2 usage error,
// 3 every check ran but at least one disagrees with a published claim.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wreathkit/catalog.hpp"
#include "wreathkit/group.hpp"
#include "wreathkit/report.hpp"
#include "wreathkit/tableau.hpp"
#include "wreathkit/wreath.hpp"

using namespace wreathkit;

namespace {

constexpr int kUsage = 2;

struct UsageError : Error {
  using Error::Error;
};

struct Options {
  std::uint64_t seed = 0;
  std::uint64_t limit = kDefaultEnumerationLimit;
  std::size_t leaf_limit = kDefaultLeafLimit;
  std::string format = "text";
  std::string out;
  std::optional<std::size_t> sampling;

  std::string spec;
  std::string literal;
  bool order_only = false;
  std::size_t triple_n = 3;
  std::size_t depth = 0;
  std::size_t level = 0;
  std::size_t vertex = 1;
};

WreathType parse_spec(const std::string& text) {
  try {
    return parse_wreath_type(text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void emit(const std::string& text, const Options& opt) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(opt.out);
  if (!file) throw Error("cannot open " + opt.out);
  file << text;
}

int finish(VerificationReport& report, const Options& opt, const std::string& extra_text = "") {
  report.finish();
  if (opt.format == "json") {
    emit(report.to_json().dump(2) + "\n", opt);
  } else {
    emit(extra_text + report.to_text(), opt);
  }
  return report.exit_code();
}

Tableau parse_element(const std::string& text, const WreathSpec& spec) {
  try {
    if (text.find('[') != std::string::npos) return parse_tableau(text, spec);
    return perm_to_tableau(parse_permutation(text, spec.leaves()), spec);
  } catch (const Error& e) {
    throw UsageError(std::string("bad element: ") + e.what());
  }
}

// Number of normal subgroups a published theorem claims for this ambient.
std::optional<std::size_t> claimed_lattice_size(const WreathType& type) {
  if (type.depth() != 2) return std::nullopt;
  const std::size_t n = type.spec.degree(1);
  const std::size_t m = type.spec.degree(2);
  const bool generic = n >= 3 && m >= 3 && n != 4 && m != 4;
  const bool top_s = type.kinds[0] == LevelKind::symmetric;
  const bool base_s = type.kinds[1] == LevelKind::symmetric;
  if (top_s && base_s && n == 3 && m == 2) return 9;
  if (top_s && base_s && generic) return 10;
  if (!top_s && base_s && generic) return 7;
  if (top_s && !base_s && n == m && generic) return 6;
  return std::nullopt;
}

int run_build(const Options& opt) {
  const WreathType type = parse_spec(opt.spec);
  const Group w = build_wreath(type, opt.leaf_limit);
  if (opt.order_only && opt.format == "text") {
    emit(w.order().str() + "\n", opt);
    return 0;
  }
  VerificationReport r("build", to_string(type), opt.seed);
  r.expect("order", wreath_order(type).str(), w.order().str(), Status::fail);
  r.add("degree", std::to_string(type.spec.leaves()), std::to_string(w.degree()),
        w.degree() == type.spec.leaves() ? Status::pass : Status::fail);
  r.details()["generators"] = generator_strings(w);
  std::string text = "order " + w.order().str() + ", degree " + std::to_string(w.degree()) + ", " +
                     std::to_string(w.generators().size()) + " generators\n";
  return finish(r, opt, text);
}

int run_element(const Options& opt) {
  const WreathType type = parse_spec(opt.spec);
  const Tableau t = parse_element(opt.literal, type.spec);
  const Permutation p = tableau_to_perm(t);
  const Group w = build_wreath(type, opt.leaf_limit);
  if (!w.contains(p)) throw UsageError("element is not in " + to_string(type));
  VerificationReport r("element", to_string(type), opt.seed);
  r.expect("roundtrip", to_string(t), to_string(perm_to_tableau(p, type.spec)), Status::fail);
  const std::size_t d = depth(t);
  std::string parity;
  for (bool b : level_parity_vector(t)) parity += b ? '1' : '0';
  std::string ranks;
  for (std::size_t l = 1; l <= type.depth(); ++l) ranks += (l > 1 ? "," : "") + std::to_string(rank_sum(t, l));
  const std::string flags = to_string(classify(t));
  r.details()["tableau"] = to_string(t);
  r.details()["permutation"] = to_string(p);
  r.details()["depth"] = d == kInfiniteDepth ? "infinite" : std::to_string(d);
  r.details()["level_parity"] = parity;
  r.details()["rank_sums"] = ranks;
  r.details()["flags"] = flags;
  std::string text = "tableau      " + to_string(t) + "\npermutation  " + to_string(p) + "\ndepth        " +
                     (d == kInfiniteDepth ? "infinite" : std::to_string(d)) + "\nrank sums    " + ranks +
                     "\nparity       " + parity + "\nflags        " + flags + "\n";
  return finish(r, opt, text);
}

int run_normal_subgroups(const Options& opt) {
  const WreathType type = parse_spec(opt.spec);
  const Group w = build_wreath(type, opt.leaf_limit);
  VerificationReport r("normal subgroups", to_string(type), opt.seed);
  const auto lattice = enumerate_normal_subgroups(w, opt.limit);

  bool all_normal = true;
  for (const auto& n : lattice.members()) all_normal = all_normal && is_normal(w, n);
  r.expect("members-normal", "yes", yes_no(all_normal), Status::fail);

  // Joins and meets of normal subgroups are normal, so they must be listed.
  bool closed = true;
  for (std::size_t i = 0; i < lattice.size() && closed; ++i) {
    for (std::size_t j = i + 1; j < lattice.size() && closed; ++j) {
      auto meet = lattice.class_set(i);
      for (std::size_t c = 0; c < meet.size(); ++c) meet[c] = meet[c] && lattice.class_set(j)[c];
      auto gens = lattice[i].generators();
      gens.insert(gens.end(), lattice[j].generators().begin(), lattice[j].generators().end());
      const Group join = gens.empty() ? Group::trivial(w.degree()) : Group(gens);
      closed = lattice.find(meet).has_value() && lattice.find(join).has_value();
    }
  }
  r.expect("join-meet-closed", "yes", yes_no(closed), Status::fail);

  const std::string count = std::to_string(lattice.size());
  if (auto claim = claimed_lattice_size(type)) {
    r.expect("count", std::to_string(*claim), count, Status::discrepancy);
  } else {
    r.add("count", "no published count for this spec", count, Status::pass);
  }

  nlohmann::json rows = nlohmann::json::array();
  std::string text = "  #  order        parents    fingerprint\n";
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const auto fp = structure_fingerprint(lattice[i], opt.limit);
    std::vector<std::size_t> parents;
    for (auto p : lattice.parents(i)) parents.push_back(p + 1);
    std::string ps;
    for (auto p : parents) ps += (ps.empty() ? "" : ",") + std::to_string(p);
    rows.push_back({{"index", i + 1},
                    {"order", lattice[i].order().str()},
                    {"generators", generator_strings(lattice[i])},
                    {"fingerprint", to_string(fp)},
                    {"parents", parents}});
    char line[256];
    std::snprintf(line, sizeof line, "%3zu  %-11s  %-9s  %s\n", i + 1, lattice[i].order().str().c_str(),
                  ps.empty() ? "-" : ps.c_str(), to_string(fp).c_str());
    text += line;
  }
  r.details()["lattice"] = rows;
  return finish(r, opt, text);
}

int run_catalog(const Options& opt) {
  const WreathType type = parse_spec(opt.spec);
  if (type.depth() != 2) throw UsageError("catalog needs a two-level spec");
  const CatalogOptions copt{opt.limit, opt.leaf_limit};
  const bool top_s = type.kinds[0] == LevelKind::symmetric;
  const bool base_s = type.kinds[1] == LevelKind::symmetric;
  const std::size_t n = type.spec.degree(1);
  const std::size_t m = type.spec.degree(2);
  VerificationReport r("catalog", to_string(type), opt.seed);
  if (top_s && base_s) {
    r.merge(verify_catalog(Ambient::SnSm, type.spec, copt), "");
  } else if (!top_s && base_s) {
    r.merge(verify_catalog(Ambient::AnSm, type.spec, copt), "AnSm/");
    if (n == m) r.merge(verify_catalog(Ambient::AnSn, type.spec, copt), "AnSn/");
  } else if (top_s && !base_s && n == m) {
    r.merge(verify_catalog(Ambient::SnAn, type.spec, copt), "");
  } else {
    throw UsageError("no catalog for " + to_string(type));
  }
  return finish(r, opt);
}

int run_triple(const Options& opt) {
  if (opt.triple_n < 2) throw UsageError("triple needs n >= 2");
  VerificationReport r = triple_catalog_verify(opt.triple_n, {opt.limit, opt.leaf_limit});
  std::string text;
  for (const auto& c : r.details()["candidates"]) {
    char line[256];
    std::snprintf(line, sizeof line, "  %-5s  %-36s  %-12s  %-10s  %s\n", c["type"].get<std::string>().c_str(),
                  c["name"].get<std::string>().c_str(), c["order"].get<std::string>().c_str(),
                  c["normal"].get<bool>() ? "normal" : "not normal",
                  c["relation_to_A~n2"].get<std::string>().c_str());
    text += line;
  }
  return finish(r, opt, text);
}

int run_monolith(const Options& opt) {
  const WreathType type = parse_spec(opt.spec);
  if (type.depth() != 2 || !type.all_symmetric()) throw UsageError("monolith needs a spec Sn*Sm");
  MonolithOptions mo;
  mo.sampling = opt.sampling.has_value();
  mo.samples = opt.sampling.value_or(100);
  mo.seed = opt.seed;
  mo.limit = opt.limit;
  mo.leaf_limit = opt.leaf_limit;
  VerificationReport r = monolith_claim_check(type.spec, mo);
  std::string text;
  if (r.details().contains("counterexamples")) {
    for (const auto& c : r.details()["counterexamples"]) {
      text += "  counterexample " + c["tableau"].get<std::string>() + " = " +
              c["permutation"].get<std::string>() + ", closure order " +
              c["closure_order"].get<std::string>() + "\n";
    }
  }
  if (r.details().contains("minimal_normal_subgroups")) {
    for (const auto& g : r.details()["minimal_normal_subgroups"]) {
      std::string gens;
      for (const auto& s : g["generators"]) gens += (gens.empty() ? "" : ", ") + s.get<std::string>();
      text += "  minimal normal subgroup of order " + g["order"].get<std::string>() + ": <" + gens + ">\n";
    }
  }
  return finish(r, opt, text);
}

int run_parity(const Options& opt) {
  const WreathType type = parse_spec(opt.spec);
  if (!type.all_symmetric()) throw UsageError("parity needs an all-symmetric spec");
  const Group w = build_wreath(type, opt.leaf_limit);
  const ParityQuotient q = parity_quotient(w, type.spec);
  VerificationReport r("parity quotient", to_string(type), opt.seed);
  r.expect("index", pow(Order(2), type.depth()).str(), q.index.str(), Status::fail);
  r.expect("exponent", "2", std::to_string(q.exponent), Status::fail);
  r.expect("kernel-normal", "yes", yes_no(q.kernel_normal), Status::fail);
  r.expect("quotient-abelian", "yes", yes_no(q.quotient_abelian), Status::fail);
  return finish(r, opt, "index " + q.index.str() + ", exponent " + std::to_string(q.exponent) + "\n");
}

int run_project(const Options& opt) {
  const WreathType type = parse_spec(opt.spec);
  const WreathSpec& spec = type.spec;
  const std::size_t j = opt.depth == 0 ? spec.depth() - 1 : opt.depth;
  if (j < 1 || j >= spec.depth()) throw UsageError("--depth must satisfy 1 <= depth < spec depth");
  const Group w = build_wreath(type, opt.leaf_limit);
  VerificationReport r("projection to depth " + std::to_string(j), to_string(type), opt.seed);
  std::string text;
  if (!opt.literal.empty()) {
    const Tableau t = parse_element(opt.literal, spec);
    const Tableau p = project(t, j);
    text = to_string(p) + " = " + to_string(tableau_to_perm(p)) + "\n";
    r.details()["projection"] = to_string(p);
  }
  Rng rng(opt.seed);
  const std::size_t pairs = opt.sampling.value_or(300);
  bool hom = true;
  bool composes = true;
  for (std::size_t i = 0; i < pairs; ++i) {
    const Tableau a = perm_to_tableau(w.random_element(rng), spec);
    const Tableau b = perm_to_tableau(w.random_element(rng), spec);
    hom = hom && project(t_multiply(a, b), j) == t_multiply(project(a, j), project(b, j));
    for (std::size_t l = j + 1; l < spec.depth(); ++l) {
      composes = composes && project(project(a, l), j) == project(a, j);
    }
  }
  r.expect("homomorphism", "holds on " + std::to_string(pairs) + " pairs",
           hom ? "holds on " + std::to_string(pairs) + " pairs" : "violated", Status::fail);
  r.expect("composition", "holds", composes ? "holds" : "violated", Status::fail);
  // kernel: tableaux trivial on the first j levels
  std::vector<Tableau> kernel_gens;
  for (auto& t : wreath_generator_tableaux(type)) {
    if (depth(t) > j) kernel_gens.push_back(std::move(t));
  }
  const Group kernel = group_of(spec, kernel_gens);
  WreathType top{spec.truncated(j), std::vector<LevelKind>(type.kinds.begin(), type.kinds.begin() + j)};
  r.expect("kernel-order", (wreath_order(type) / wreath_order(top)).str(), kernel.order().str(), Status::fail);
  r.expect("kernel-normal", "yes", yes_no(is_normal(w, kernel)), Status::fail);
  return finish(r, opt, text);
}

int run_witness(const Options& opt) {
  const WreathType type = parse_spec(opt.spec);
  if (!type.all_symmetric()) throw UsageError("witness needs an all-symmetric spec");
  const std::size_t k = opt.level == 0 ? type.depth() : opt.level;
  if (k > type.depth()) throw UsageError("--level exceeds the spec depth");
  if (opt.vertex < 1 || opt.vertex > type.spec.vertices(k)) throw UsageError("--vertex out of range");
  auto w = [&] {
    try {
      return commutator_witness(type.spec, k, opt.vertex - 1, opt.seed, opt.leaf_limit);
    } catch (const LimitExceeded&) {
      throw;
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }();
  return finish(w.report, opt, "witness " + to_string(w.element) + "\n");
}

int run_normalizer(const Options& opt) {
  const WreathType type = parse_spec(opt.spec);
  if (type.depth() != 2 || !type.all_symmetric()) throw UsageError("normalizer needs a spec Sn*Sm");
  VerificationReport r = normalizer_check(type.spec, {opt.limit, opt.leaf_limit});
  return finish(r, opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wreath products of symmetric and alternating groups: construction and normal-subgroup checks",
               "wreathkit"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    sub->add_option("--limit", opt.limit, "enumeration limit (elements)")->capture_default_str();
    sub->add_option("--leaf-limit", opt.leaf_limit, "maximum number of leaves")->capture_default_str();
    sub->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", opt.out, "write the report to a file");
    sub->add_option("--sampling", opt.sampling, "number of random samples");
  };
  auto spec_arg = [&](CLI::App* sub) {
    sub->add_option("spec", opt.spec, "wreath spec such as S3*S3")->required();
  };

  auto* build = app.add_subcommand("build", "construct a wreath product and report its order");
  spec_arg(build);
  build->add_flag("--order", opt.order_only, "print only the order");
  auto* element = app.add_subcommand("element", "convert and classify one element");
  spec_arg(element);
  element->add_option("element", opt.literal, "tableau literal or leaf permutation")->required();
  auto* normal = app.add_subcommand("normal-subgroups", "enumerate the lattice of normal subgroups");
  spec_arg(normal);
  auto* catalog = app.add_subcommand("catalog", "verify the named normal subgroups");
  spec_arg(catalog);
  auto* triple = app.add_subcommand("triple", "verify the three-level catalog");
  triple->add_option("n", opt.triple_n, "level degree")->required();
  auto* mono = app.add_subcommand("monolith", "check the monolith claim, exactly or by sampling");
  spec_arg(mono);
  auto* parity = app.add_subcommand("parity", "index and exponent of the level-parity quotient");
  spec_arg(parity);
  auto* proj = app.add_subcommand("project", "truncation homomorphism checks");
  spec_arg(proj);
  proj->add_option("--depth", opt.depth, "target depth (default: one level less)");
  proj->add_option("--element", opt.literal, "element to project");
  auto* witness = app.add_subcommand("witness", "build the iterated commutator witness");
  spec_arg(witness);
  witness->add_option("--level", opt.level, "level (default: deepest)");
  witness->add_option("--vertex", opt.vertex, "vertex of the level above, 1-based")->capture_default_str();
  auto* normalizer = app.add_subcommand("normalizer", "normalizer of AnA by exhaustion");
  spec_arg(normalizer);
  for (auto* sub : {build, element, normal, catalog, triple, mono, parity, proj, witness, normalizer}) {
    common(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (build->parsed()) return run_build(opt);
    if (element->parsed()) return run_element(opt);
    if (normal->parsed()) return run_normal_subgroups(opt);
    if (catalog->parsed()) return run_catalog(opt);
    if (triple->parsed()) return run_triple(opt);
    if (mono->parsed()) return run_monolith(opt);
    if (parity->parsed()) return run_parity(opt);
    if (proj->parsed()) return run_project(opt);
    if (witness->parsed()) return run_witness(opt);
    if (normalizer->parsed()) return run_normalizer(opt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kUsage;
}
