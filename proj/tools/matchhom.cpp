// matchhom: faces, orbits, homology and checks for matching and
// bounded-degree complexes.
//
// Exit codes: 0 pass, 1 fail, 2 usage, 3 skipped or resource cap hit.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "matchhom/certificates.hpp"
#include "matchhom/errors.hpp"
#include "matchhom/report.hpp"

using namespace matchhom;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kSkipped = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpecArgs {
  std::optional<int> matching;
  std::optional<int> bounded;
  std::string lambda;
  bool gamma = false;
  bool delta = false;
  std::string blocks;

  void add_to(CLI::App* app) {
    app->add_option("--matching", matching, "matching complex M_N");
    app->add_option("--bounded", bounded, "bounded-degree complex on n vertices (needs --lambda)");
    app->add_option("--lambda", lambda, "degree vector, e.g. 2^6,1^2");
    app->add_flag("--gamma", gamma, "Gamma part for the partition given by --lambda/--blocks");
    app->add_flag("--delta", delta, "Delta part for the partition given by --lambda/--blocks");
    app->add_option("--blocks", blocks, "consecutive | interleaved | explicit blocks 1,8/2,9/...");
  }

  std::vector<int> degree_vector() const { return lambda.empty() ? std::vector<int>{} : parse_degree_vector(lambda); }

  BlockPartition partition() const {
    if (lambda.empty() && (blocks.empty() || blocks == "consecutive" || blocks == "interleaved")) {
      throw UsageError("a partition needs --lambda or explicit --blocks");
    }
    return BlockPartition::parse(blocks, degree_vector());
  }

  ComplexSpec spec() const {
    const int chosen = matching.has_value() + bounded.has_value() + gamma + delta;
    if (chosen != 1) throw UsageError("choose exactly one of --matching, --bounded, --gamma, --delta");
    if (matching) return ComplexSpec::matching(*matching);
    if (bounded) {
      auto l = degree_vector();
      if (static_cast<int>(l.size()) != *bounded) {
        throw UsageError("--lambda has " + std::to_string(l.size()) + " entries, expected " + std::to_string(*bounded));
      }
      return ComplexSpec::bounded(std::move(l));
    }
    return gamma ? ComplexSpec::gamma(partition()) : ComplexSpec::delta(partition());
  }

  json to_json() const {
    json j = json::object();
    if (matching) j["matching"] = *matching;
    if (bounded) j["bounded"] = *bounded;
    if (gamma) j["gamma"] = true;
    if (delta) j["delta"] = true;
    if (!lambda.empty()) j["lambda"] = lambda;
    if (!blocks.empty()) j["blocks"] = blocks;
    return j;
  }
};

struct Common {
  std::string out;
  int threads = 1;
  std::size_t max_entries = 0;
  double max_minutes = 0;
  std::vector<std::uint32_t> primes;
  bool timings = false;

  void add_to(CLI::App* app) {
    app->add_option("--out", out, "write the machine-readable document here");
    app->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app->add_option("--max-entries", max_entries, "abort elimination above this many nonzeros");
    app->add_option("--max-minutes", max_minutes, "wall-clock cap per matrix")->check(CLI::NonNegativeNumber);
    app->add_option("--primes", primes, "primes for the modular rank cross-check");
    app->add_flag("--timings", timings, "include elapsed times in the machine document");
  }

  SmithOptions smith() const {
    SmithOptions s;
    s.max_entries = max_entries;
    s.max_seconds = max_minutes * 60;
    if (!primes.empty()) {
      for (auto p : primes) {
        if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
      }
      s.check_primes = primes;
    }
    return s;
  }

  // thread count and output path never change results, so they stay out
  json to_json() const {
    json j = {{"max_entries", max_entries}, {"max_minutes", max_minutes}};
    if (!primes.empty()) j["primes"] = primes;
    return j;
  }

  void emit(const json& doc) const {
    if (out.empty()) return;
    std::ofstream f(out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + out);
    f << dump_document(doc);
  }
};

json merge(json a, const json& b) {
  a.update(b);
  return a;
}

// ---- build

int cmd_build(const SpecArgs& sa, std::optional<int> dim, const Common& common) {
  const ComplexSpec spec = sa.spec();
  json faces = json::object();
  auto emit_dim = [&](int d, bool header) {
    const auto list = enumerate_faces(spec, d);
    if (header) std::cout << "dim " << d << "\n";
    json arr = json::array();
    for (const auto& s : list) {
      std::cout << s.to_string() << "\n";
      arr.push_back(s.to_string());
    }
    faces[std::to_string(d)] = std::move(arr);
  };
  if (dim) {
    emit_dim(*dim, false);
  } else {
    const auto counts = face_counts(spec);
    for (int d = -1; d < static_cast<int>(counts.size()) - 1; ++d) emit_dim(d, true);
  }
  json config = merge(sa.to_json(), common.to_json());
  if (dim) config["dim"] = *dim;
  common.emit(make_document("build", config, {{"complex", spec.id()}, {"faces", faces}}));
  return kPass;
}

// ---- quotient

int cmd_quotient(const SpecArgs& sa, bool with_homology, const Common& common) {
  if (!sa.matching || sa.lambda.empty()) throw UsageError("quotient needs --matching N and --lambda");
  const BlockPartition partition = sa.partition();
  if (partition.total() != *sa.matching) throw UsageError("--lambda does not sum to N");
  const FreeChainComplex complex(ComplexSpec::matching(*sa.matching));
  const QuotientComplex q(complex, YoungAction(partition));
  const std::string id = complex.spec().id() + "/S(" + partition.to_string() + ")";
  const auto counts = orbit_report(q);
  std::cout << format_orbits(id, counts);
  json result = {{"quotient", id}, {"orbits", to_json(counts)}};
  if (with_homology) {
    const auto h = homology_presented(q, true, common.smith());
    std::cout << format_summary(h.total);
    result["homology"] = to_json(h.total, common.timings);
    result["gamma_part"] = to_json(h.gamma, common.timings);
    result["delta_part_mod2"] = to_json(h.delta_mod2, common.timings);
  }
  json config = merge(sa.to_json(), common.to_json());
  if (with_homology) config["homology"] = true;
  common.emit(make_document("quotient", config, result));
  return kPass;
}

// ---- homology

/// Field ranks of whatever boundaries finish within the caps.
json partial_ranks(const FreeChainComplex& c, const SmithOptions& opts) {
  constexpr std::uint32_t p = 2147483647u;
  json ranks = json::array();
  for (int d = c.min_dim() + 1; d <= c.max_dim(); ++d) {
    json row = {{"degree", d}, {"faces", c.rank(d)}, {"prime", p}};
    try {
      SmithOptions o = opts;
      o.check_primes.clear();
      row["rank_mod_p"] = rank_mod_p(c.boundary(d), p, o);
    } catch (const ResourceLimit&) {
      row["rank_mod_p"] = nullptr;
    }
    ranks.push_back(std::move(row));
  }
  return ranks;
}

/// H_d alone, from d_d and d_{d+1}.
HomologySummary single_degree(const ComplexSpec& spec, int d, const SmithOptions& opts) {
  const FaceTable faces(spec, d - 1, d + 1);
  auto rank_of = [&](int k) -> std::size_t {
    if (!faces.has(k) || !faces.has(k - 1)) return 0;
    return smith_normal_form(assemble_boundary(faces.dim(k), faces.dim(k - 1)), opts).rank();
  };
  std::vector<Integer> factors;
  std::size_t rank_up = 0;
  if (faces.has(d + 1) && faces.has(d)) {
    const auto up = smith_normal_form(assemble_boundary(faces.dim(d + 1), faces.dim(d)), opts);
    factors = up.invariant_factors();
    rank_up = up.rank();
  }
  const std::size_t fd = faces.has(d) ? faces.count(d) : 0;
  HomologySummary h;
  h.complex_id = spec.id();
  h.min_degree = d;
  h.groups.push_back(AbelianGroup(fd - rank_of(d) - rank_up, factors));
  return h;
}

int cmd_homology(const SpecArgs& sa, std::optional<int> dim, std::optional<std::uint32_t> mod, bool quotient,
                 const std::string& class_of, bool generators, bool direct, const Common& common) {
  json config = merge(sa.to_json(), common.to_json());
  if (dim) config["dim"] = *dim;
  if (mod) config["mod"] = *mod;
  if (quotient) config["quotient"] = true;
  if (!class_of.empty()) config["class_of"] = class_of;
  if (generators) config["generators"] = true;
  if (direct) config["direct"] = true;
  if (mod && !is_prime(*mod)) throw UsageError("--mod needs a prime");

  const SmithOptions opts = common.smith();
  HomologyOptions ho{opts, common.threads};
  ho.reduce = !direct;

  if (quotient) {
    if (mod || dim || generators || !class_of.empty()) throw UsageError("--quotient takes no other homology flags");
    return cmd_quotient(sa, true, common);
  }

  const ComplexSpec spec = sa.spec();
  // the full complex is only built when something needs every boundary
  std::optional<FreeChainComplex> full;
  auto complex_of = [&]() -> const FreeChainComplex& {
    if (!full) full.emplace(spec);
    return *full;
  };
  json result = json::object();
  try {
    HomologySummary h;
    if (mod) {
      h = betti_mod_p(complex_of(), *mod, ho);
    } else if (dim) {
      h = single_degree(spec, *dim, opts);
    } else {
      h = homology_free(complex_of(), ho);
    }
    std::cout << format_summary(h);
    result["homology"] = to_json(h, common.timings);

    if (generators) {
      if (!dim) throw UsageError("--generators needs --dim");
      const auto gens = CycleClassifier(complex_of(), *dim, opts).torsion_generators();
      json arr = json::array();
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const std::string name = "torsion_" + std::to_string(*dim) + "_" + std::to_string(k);
        std::cout << "generator of order " << gens[k].second.get_str() << "\n" << format_chain(name, gens[k].first);
        arr.push_back({{"order", gens[k].second.get_str()}, {"chain", format_chain(name, gens[k].first)}});
      }
      result["generators"] = arr;
    }
    if (!class_of.empty()) {
      std::ifstream in(class_of);
      if (!in) throw UsageError("cannot read " + class_of);
      json arr = json::array();
      std::map<int, CycleClassifier> classifiers;
      for (const auto& nc : read_chains(in)) {
        const int d = nc.chain.degree();
        auto it = classifiers.find(d);
        if (it == classifiers.end()) it = classifiers.try_emplace(d, complex_of(), d, opts).first;
        const std::string order = to_string(it->second.class_order(nc.chain));
        std::cout << "class of " << nc.name << ": order " << order << "\n";
        arr.push_back({{"name", nc.name}, {"degree", nc.chain.degree()}, {"order", order}});
      }
      result["classes"] = arr;
    }
  } catch (const ResourceLimit& e) {
    std::cout << "resource cap reached: " << e.what() << "\n";
    result["partial"] = true;
    result["reason"] = e.what();
    result["ranks"] = partial_ranks(complex_of(), opts);
    common.emit(make_document("homology", config, result));
    return kSkipped;
  }
  common.emit(make_document("homology", config, result));
  return kPass;
}

// ---- verify / report

struct VerifyArgs {
  std::string name;
  std::string n;
  std::optional<int> d;
  std::string lambda;
  int max_vertices = 10;
  std::vector<std::string> cells;
};

std::pair<int, int> parse_range(const std::string& text) {
  if (text.empty()) throw UsageError("--n is required");
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw UsageError("bad range '" + text + "', expected N or A..B");
  }
}

std::string canonical_name(const std::string& name) {
  static const std::map<std::string, std::string> aliases = {
      {"table1", "matching-table"},   {"bd-tables", "bd-torsion"},          {"eq1", "edge-split"},
      {"pair-les", "pair-sequence"},  {"corollary", "quotient-sequence"},
  };
  auto it = aliases.find(name);
  return it == aliases.end() ? name : it->second;
}

std::vector<CertificateReport> run_verify(const VerifyArgs& va, const CertificateOptions& opts) {
  const std::string name = canonical_name(va.name);
  std::vector<CertificateReport> out;
  if (name == "gamma-prime") {
    out.push_back(verify_gamma_prime(opts));
  } else if (name == "gamma-lift") {
    out.push_back(verify_gamma_lift(opts));
  } else if (name == "matching-table") {
    const auto [a, b] = parse_range(va.n.empty() ? "3..10" : va.n);
    out.push_back(reproduce_table1(a, b, opts));
  } else if (name == "bd-torsion") {
    BdCellSelection sel;
    sel.max_vertices = va.max_vertices;
    for (const auto& c : va.cells) {
      const auto comma = c.find(',');
      if (comma == std::string::npos) throw UsageError("--cell takes n,a");
      sel.cells.emplace_back(std::stoi(c.substr(0, comma)), std::stoi(c.substr(comma + 1)));
    }
    out.push_back(reproduce_bd_tables(sel, opts));
  } else if (name == "bd11-degree4") {
    out.push_back(verify_bd11_degree4(opts));
  } else if (name == "bd8-mod-p") {
    out.push_back(verify_bd8_mod_p(opts));
  } else if (name == "pair-sequence") {
    const auto [a, b] = parse_range(va.n);
    for (int n = a; n <= b; ++n) {
      if (va.d) {
        out.push_back(verify_pair_les(n, *va.d, opts));
      } else {
        for (int d = 0; d <= (n - 1) / 2; ++d) out.push_back(verify_pair_les(n, d, opts));
      }
    }
  } else if (name == "edge-split") {
    const auto [a, b] = parse_range(va.n);
    for (int n = a; n <= b; ++n) {
      out.push_back(verify_eq1_splitting(n, va.d ? std::vector<int>{*va.d} : std::vector<int>{}, opts));
    }
  } else if (name == "quotient-sequence") {
    const auto [a, b] = parse_range(va.n);
    if (a != b) throw UsageError("quotient-sequence takes a single N");
    if (va.lambda.empty()) throw UsageError("quotient-sequence needs --lambda");
    out.push_back(verify_corollary_les(a, parse_degree_vector(va.lambda), va.d, opts));
  } else {
    throw UsageError("unknown check '" + va.name + "'");
  }
  return out;
}

std::vector<CertificateReport> quick_suite(const CertificateOptions& opts) {
  std::vector<CertificateReport> out;
  out.push_back(reproduce_table1(3, 10, opts));
  out.push_back(verify_gamma_prime(opts));
  out.push_back(verify_gamma_lift(opts));
  for (int n = 3; n <= 9; ++n) out.push_back(verify_eq1_splitting(n, {}, opts));
  out.push_back(verify_corollary_les(4, {2, 2}, {}, opts));
  out.push_back(verify_corollary_les(6, {2, 2, 2}, {}, opts));
  return out;
}

std::vector<CertificateReport> extended_suite(const CertificateOptions& opts) {
  std::vector<CertificateReport> out;
  out.push_back(reproduce_table1(11, 12, opts));
  for (int n = 10; n <= 11; ++n) out.push_back(verify_eq1_splitting(n, {}, opts));
  out.push_back(reproduce_bd_tables({12, {}}, opts));
  out.push_back(verify_bd11_degree4(opts));
  out.push_back(verify_bd8_mod_p(opts));
  return out;
}

int finish_reports(const std::string& command, json config, const std::vector<CertificateReport>& reports,
                   const Common& common) {
  json arr = json::array();
  bool failed = false, skipped = false;
  for (const auto& r : reports) {
    std::cout << format_report(r);
    arr.push_back(to_json(r, common.timings));
    failed = failed || r.status == CertificateStatus::fail;
    skipped = skipped || r.status == CertificateStatus::skipped;
  }
  common.emit(make_document(command, std::move(config), {{"reports", arr}}));
  if (failed) return kFail;
  return skipped ? kSkipped : kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homology of matching and bounded-degree complexes"};
  app.require_subcommand(1);
  Common common;

  SpecArgs build_spec;
  std::optional<int> build_dim;
  auto* build = app.add_subcommand("build", "list faces, one per line");
  common.add_to(build);
  build_spec.add_to(build);
  build->add_option("--dim", build_dim, "only this dimension, without the header line");

  SpecArgs quot_spec;
  bool quot_homology = false;
  auto* quotient = app.add_subcommand("quotient", "orbit counts of C(M_N)/G per degree");
  common.add_to(quotient);
  quot_spec.add_to(quotient);
  quotient->add_flag("--homology", quot_homology, "also compute the homology of the quotient");

  SpecArgs hom_spec;
  std::optional<int> hom_dim;
  std::optional<std::uint32_t> hom_mod;
  bool hom_quotient = false, hom_generators = false, hom_direct = false;
  std::string class_of;
  auto* homology = app.add_subcommand("homology", "reduced homology");
  common.add_to(homology);
  hom_spec.add_to(homology);
  homology->add_option("--dim", hom_dim, "only this degree");
  homology->add_option("--mod", hom_mod, "field coefficients F_p");
  homology->add_flag("--quotient", hom_quotient, "homology of C(M_N)/G for --matching with --lambda");
  homology->add_option("--class-of", class_of, "chain file; report the order of each class");
  homology->add_flag("--generators", hom_generators, "print torsion generators in degree --dim");
  homology->add_flag("--direct", hom_direct, "one Smith form per boundary matrix, skipping the whole-complex reduction");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run one check");
  common.add_to(verify);
  verify->add_option("name", va.name,
                     "gamma-prime | gamma-lift | matching-table | bd-torsion | bd11-degree4 | bd8-mod-p | "
                     "pair-sequence | edge-split | quotient-sequence")
      ->required();
  verify->add_option("--n", va.n, "N or a range A..B");
  verify->add_option("--d", va.d, "degree");
  verify->add_option("--lambda", va.lambda, "degree vector for quotient-sequence");
  verify->add_option("--max-vertices", va.max_vertices, "bd-torsion: largest complex to compute");
  verify->add_option("--cell", va.cells, "bd-torsion: explicit cell n,a (repeatable)");

  bool extended = false;
  auto* report = app.add_subcommand("report", "run the check suite");
  common.add_to(report);
  report->add_flag("--extended", extended, "also run the long checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    CertificateOptions copts{common.smith(), common.threads};
    if (*build) return cmd_build(build_spec, build_dim, common);
    if (*quotient) return cmd_quotient(quot_spec, quot_homology, common);
    if (*homology) {
      return cmd_homology(hom_spec, hom_dim, hom_mod, hom_quotient, class_of, hom_generators, hom_direct, common);
    }
    if (*verify) {
      json config = merge(common.to_json(), {{"check", canonical_name(va.name)}});
      if (!va.n.empty()) config["n"] = va.n;
      if (va.d) config["d"] = *va.d;
      if (!va.lambda.empty()) config["lambda"] = va.lambda;
      if (!va.cells.empty()) config["cells"] = va.cells;
      if (canonical_name(va.name) == "bd-torsion") config["max_vertices"] = va.max_vertices;
      return finish_reports("verify", config, run_verify(va, copts), common);
    }
    if (*report) {
      auto reports = quick_suite(copts);
      if (extended) {
        for (auto& r : extended_suite(copts)) reports.push_back(std::move(r));
      }
      return finish_reports("report", merge(common.to_json(), {{"extended", extended}}), reports, common);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource cap reached: " << e.what() << "\n";
    return kSkipped;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
