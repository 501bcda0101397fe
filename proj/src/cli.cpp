#include "suppvar/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "suppvar/enumerate6.hpp"

namespace suppvar {

namespace {

using nlohmann::json;

class ParseFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

MonomialSeq parseIdealArg(const std::string& text) {
  try {
    return parseIdeal(text);
  } catch (const std::invalid_argument& e) {
    throw ParseFailure(std::string("ideal: ") + e.what());
  }
}

Ideal parseCandidate(const std::string& text) {
  try {
    return Ideal(parsePolyList(text));
  } catch (const std::invalid_argument& e) {
    throw ParseFailure(std::string("candidate: ") + e.what());
  }
}

// An ideal whose variety is the described one.
Ideal idealOfVariety(const VarietyDescription& v) {
  switch (v.kind) {
    case VarietyDescription::Kind::FullSpace:
      return Ideal();
    case VarietyDescription::Kind::OriginOnly: {
      std::vector<RatPoly> vars;
      for (int i = 0; i < v.n; ++i) vars.push_back(RatPoly::variable(i));
      return Ideal(vars);
    }
    case VarietyDescription::Kind::Union:
      break;
  }
  std::vector<RatPoly> product{RatPoly(1L)};
  for (const Ideal& c : v.components) {
    std::vector<RatPoly> next;
    for (const RatPoly& a : product)
      for (const RatPoly& b : c.generators()) next.push_back(a * b);
    product = std::move(next);
  }
  return Ideal(product);
}

std::string certaintyName(Certainty c) { return c == Certainty::Certified ? "certified" : "randomized"; }

std::string formatLog2(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << v;
  return os.str();
}

json obstructionJson(const GradingObstruction& o) {
  json witness = json::array();
  for (Subset s : o.witness) witness.push_back("T_" + s.compact());
  return {{"error", "non_gradable"}, {"witness", witness}, {"message", o.describe()}};
}

std::string signedInt(int v) { return v > 0 ? "+" + std::to_string(v) : std::to_string(v); }

// Commands --------------------------------------------------------------------

struct Globals {
  RunConfig config;
  bool json = false;
};

int cmdCompute(const Globals& g, const std::string& idealText, bool oracleOnly, const std::string& candidateText,
               std::ostream& out, std::ostream& err) {
  MonomialSeq f = parseIdealArg(idealText);
  std::optional<Ideal> candidate;
  if (!candidateText.empty()) candidate = parseCandidate(candidateText);
  SupportOptions options = g.config.supportOptions();
  options.periodicOnly = oracleOnly;
  SupportReport report;
  try {
    report = supportSymbolic(f, options);
  } catch (const NonGradableError& e) {
    err << "error: " << e.obstruction().describe() << "\n";
    err << "hint: rerun with --oracle-only to use the periodic complex\n";
    if (g.json) out << obstructionJson(e.obstruction()).dump(2) << "\n";
    return exit_code::kNonGradable;
  }
  Classification cls = classify(report.variety, options.radical);
  std::optional<VarietyVerdict> verdict;
  if (candidate) verdict = varietiesEqual(idealOfVariety(report.variety), *candidate, f.size(), options.radical);

  if (g.json) {
    json j = toJson(report);
    j["ideal"] = f.toString();
    j["classification"] = cls.name();
    j["variety"] = report.variety.toString();
    if (verdict) {
      j["candidate"] = candidate->toString();
      j["candidate_verdict"] = verdict->kindName();
    }
    out << j.dump(2) << "\n";
  } else {
    out << "ideal: " << f.toString() << "\n";
    out << "engine: " << engineName(report.engine) << "\n";
    out << "variety: " << report.variety.toString() << "\n";
    out << "classification: " << cls.name() << "\n";
    out << "certification: " << certaintyName(report.certification) << "\n";
    for (std::size_t i = 0; i < report.perComponent.size(); ++i) {
      const ComponentReport& c = report.perComponent[i];
      out << "component " << i + 1 << ": reduced size " << c.reducedSize << ", ranks";
      for (const auto& [d, r] : c.genericRanks) out << " " << d << ":" << r;
      out << (c.genericallyExact ? "" : " (not generically exact)") << "\n";
    }
    if (verdict) out << "candidate " << candidate->toString() << ": " << verdict->kindName() << "\n";
  }
  return exit_code::kSuccess;
}

int cmdVerify(const Globals& g, const std::string& idealText, const std::string& candidateText, bool periodic,
              std::ostream& out) {
  MonomialSeq f = parseIdealArg(idealText);
  Ideal candidate = parseCandidate(candidateText);
  if (candidate.span() > f.size()) throw ParseFailure("candidate uses parameters beyond a" + std::to_string(f.size()));
  VerifyOptions options;
  options.primes = g.config.effectivePrimes();
  options.samples = g.config.samples;
  options.seed = g.config.seed;
  options.engine = periodic ? Engine::Periodic : Engine::Totalization;
  if (!periodic && !std::holds_alternative<WeakGrading>(weakGrading(subcomplexDiagram(TaylorData(f)))))
    options.engine = Engine::Periodic;
  VerifyReport report = supportVerify(f, candidate, options);
  if (g.json) {
    json j = toJson(report);
    j["ideal"] = f.toString();
    j["candidate"] = candidate.toString();
    j["engine"] = engineName(options.engine);
    out << j.dump(2) << "\n";
  } else {
    out << "ideal: " << f.toString() << "\n";
    out << "candidate: " << candidate.toString() << "\n";
    out << "engine: " << engineName(options.engine) << "\n";
    for (const auto& s : report.perPrime)
      out << "p = " << s.prime << ": " << s.agreements << " agreements (" << s.onVariety << " on the candidate, "
          << s.uniform << " uniform)\n";
    out << "verdict: " << (report.agree ? "agree" : "disagree") << "\n";
    if (report.agree) out << "log2 failure bound: " << formatLog2(report.log2Failure) << "\n";
    if (report.witness) {
      out << "witness over F_" << report.witness->prime << ":";
      for (const auto& c : report.witness->coords) out << " " << c.get_str();
      out << (report.witnessInSupport ? " (in the support, off the candidate)" : " (on the candidate, off the support)")
          << "\n";
    }
  }
  return report.agree ? exit_code::kSuccess : exit_code::kDisagree;
}

int cmdEdgeCycle(int n, std::ostream& out) {
  if (n < 3) throw ParseFailure("edge-cycle needs n >= 3");
  out << edgeCycleText(n) << "\n";
  return exit_code::kSuccess;
}

int cmdWeakGrading(const Globals& g, const std::string& idealText, std::ostream& out, std::ostream& err) {
  MonomialSeq f = parseIdealArg(idealText);
  SubcomplexDiagram diag = subcomplexDiagram(TaylorData(f));
  GradingResult result = weakGrading(diag);
  if (auto* o = std::get_if<GradingObstruction>(&result)) {
    err << "error: " << o->describe() << "\n";
    if (g.json) out << obstructionJson(*o).dump(2) << "\n";
    else out << o->describe() << "\n";
    return exit_code::kNonGradable;
  }
  const WeakGrading& sigma = std::get<WeakGrading>(result);
  auto comps = components(diag);
  if (g.json) {
    json weights = json::object();
    for (const auto& [M, w] : sigma.weights) weights["T_" + M.compact()] = w;
    json comp = json::array();
    for (const auto& c : comps) {
      json names = json::array();
      for (Subset M : c) names.push_back("T_" + M.compact());
      comp.push_back(names);
    }
    out << json{{"classes", diag.classes.size()}, {"edges", diag.edges.size()}, {"weights", weights},
                {"components", comp}}
               .dump(2)
        << "\n";
  } else {
    out << diag.classes.size() << " classes, " << diag.edges.size() << " edges, " << comps.size()
        << " components\n";
    for (const auto& [M, w] : sigma.weights) out << "T_" << M.compact() << " " << w << "\n";
  }
  return exit_code::kSuccess;
}

int cmdDiagnose(const Globals& g, const std::string& idealText, const std::string& subsetText, std::ostream& out) {
  MonomialSeq f = parseIdealArg(idealText);
  Subset J;
  try {
    J = parseSubsetLabels(subsetText, f.size());
  } catch (const std::invalid_argument& e) {
    throw ParseFailure(std::string("subset: ") + e.what());
  }
  TaylorData data(f);
  const Subset M = data.closure(J);
  const auto S = data.sClass(J);
  SimplicialComplexT delta = deltaComplex(data, J);
  CochainComplex cochain = reducedCochain(delta);
  auto ranks = cohomologyRanks(delta, 0);

  if (g.json) {
    json j;
    j["J"] = J.toString();
    j["f_J"] = data.lcm(J).toString();
    j["M_J"] = M.toString();
    j["S_J"] = json::array();
    j["ksgn"] = json::object();
    for (Subset K : S) {
      j["S_J"].push_back(K.toString());
      j["ksgn"][K.toString()] = data.ksgn(K);
    }
    j["faces"] = json::array();
    for (Subset face : delta.faces) j["faces"].push_back(face.toString());
    j["cochain"] = json::array();
    for (int q = -1; q < cochain.topDegree(); ++q) {
      const SparseMatrix& m = cochain.delta(q);
      json rows = json::array();
      for (const auto& r : m.constantDense()) rows.push_back(r);
      json src = json::array(), dst = json::array();
      for (Subset s : m.colBasis) src.push_back(s.toString());
      for (Subset s : m.rowBasis) dst.push_back(s.toString());
      j["cochain"].push_back({{"from", q}, {"source", src}, {"target", dst}, {"matrix", rows}});
    }
    j["cohomology_ranks"] = json::object();
    for (const auto& [q, r] : ranks) j["cohomology_ranks"][std::to_string(q)] = r;
    out << j.dump(2) << "\n";
    return exit_code::kSuccess;
  }

  out << "J = " << J.toString() << "\n";
  out << "f_J = " << data.lcm(J).toString() << "\n";
  out << "M_J = " << M.toString() << "\n";
  out << "S_J =";
  for (Subset K : S) out << " " << K.toString();
  out << "\n";
  out << "ksgn:";
  for (Subset K : S) out << " " << K.toString() << "=" << signedInt(data.ksgn(K));
  out << "\n";
  out << "Delta_J faces:";
  for (Subset face : delta.faces) out << " " << face.toString();
  out << "\n";
  for (int q = -1; q < cochain.topDegree(); ++q) {
    const SparseMatrix& m = cochain.delta(q);
    out << "delta^" << q << " (" << m.rows << "x" << m.cols << ")";
    if (m.cols == 0 || m.rows == 0) {
      out << "\n";
      continue;
    }
    out << ", columns";
    for (Subset s : m.colBasis) out << " " << s.toString();
    out << "\n";
    auto dense = m.constantDense();
    for (int r = 0; r < m.rows; ++r) {
      out << "  " << std::setw(12) << std::left << m.rowBasis[r].toString() << std::right;
      for (int c = 0; c < m.cols; ++c) out << " " << std::setw(2) << dense[r][c];
      out << "\n";
    }
  }
  out << "cohomology ranks over Q:";
  bool any = false;
  for (const auto& [q, r] : ranks)
    if (r != 0) {
      out << " H^" << q << "=" << r;
      any = true;
    }
  out << (any ? "" : " none") << "\n";
  return exit_code::kSuccess;
}

int cmdEnumerate6(const Globals& g, const std::string& resume, const std::vector<std::string>& graphTexts, bool ci,
                  bool dryRun, std::size_t closureCap, std::ostream& out, std::ostream& err) {
  std::vector<GcdGraph> graphs;
  for (const auto& text : graphTexts) {
    try {
      graphs.push_back(GcdGraph::parse(text).canonical());
    } catch (const std::invalid_argument& e) {
      throw ParseFailure(std::string("graph: ") + e.what());
    }
  }
  if (ci) {
    auto extra = ciGraphs();
    graphs.insert(graphs.end(), extra.begin(), extra.end());
  }

  if (dryRun) {
    std::vector<GcdGraph> list = graphs.empty() ? enumerateGraphs() : graphs;
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    json rows = json::array();
    std::size_t totalRays = 0;
    for (const GcdGraph& gr : list) {
      auto cl = admissibleCliques(gr);
      CliqueCone cone = buildCone(cl);
      std::size_t rays = extremeRays(cone.equalities, cone.dimension()).size();
      totalRays += rays;
      rows.push_back({{"canonical_adjacency", gr.toString()},
                      {"excluded", forcesFullSupport(gr)},
                      {"cliques", cl.size()},
                      {"rays", rays}});
    }
    if (g.json) {
      out << json{{"graph_classes", allGraphClasses().size()}, {"graphs", list.size()}, {"rays", totalRays},
                  {"per_graph", rows}}
                 .dump(2)
          << "\n";
    } else {
      out << "graph classes: " << allGraphClasses().size() << "\n";
      out << "graphs: " << list.size() << "\n";
      out << "rays: " << totalRays << "\n";
      for (const auto& r : rows)
        out << "  " << r["canonical_adjacency"].get<std::string>() << " cliques " << r["cliques"] << " rays "
            << r["rays"] << (r["excluded"].get<bool>() ? " (excluded)" : "") << "\n";
    }
    return exit_code::kSuccess;
  }

  PipelineOptions options;
  options.graphs = graphs;
  options.checkpoint = resume;
  options.threads = g.config.threads;
  options.support = g.config.supportOptions();
  options.closureCap = closureCap;
  options.onGraph = [&err](const GraphResult& r) {
    err << "graph " << r.graph.toString() << ": " << r.rays.size() << " rays, " << r.candidates.size()
        << " candidates\n";
  };
  try {
    PipelineTable table = runPipeline(options);
    if (g.json) out << table.toJson().dump(2) << "\n";
    else out << table.summary();
    if (!table.capped.empty()) {
      err << "error: resource cap reached on " << table.capped.size() << " graph(s)\n";
      return exit_code::kResourceCap;
    }
  } catch (const ClassificationFailure& e) {
    if (g.json) out << e.table().toJson().dump(2) << "\n";
    else out << e.table().summary();
    err << "error: " << e.what() << "\n";
    return exit_code::kClassification;
  }
  return exit_code::kSuccess;
}

}  // namespace

// RunConfig ----------------------------------------------------------------------

void RunConfig::validate() const {
  if (seed == 0) throw std::invalid_argument("--seed must be positive");
  if (minorBudget == 0) throw std::invalid_argument("--minor-budget must be positive");
  if (groebnerCap == 0) throw std::invalid_argument("--groebner-cap must be positive");
  if (samples <= 0) throw std::invalid_argument("--samples must be positive");
  if (threads <= 0) throw std::invalid_argument("--threads must be positive");
  for (std::uint64_t p : primes)
    if (!isPrime(p) || p >= (1ull << 32)) throw std::invalid_argument("--prime " + std::to_string(p) + " is not a prime below 2^32");
}

std::vector<std::uint64_t> RunConfig::effectivePrimes() const {
  if (!primes.empty()) return primes;
  const auto& large = largePrimes();
  return {large.begin(), large.begin() + 3};
}

SupportOptions RunConfig::supportOptions() const {
  SupportOptions o;
  o.seed = seed;
  o.minors.budget = minorBudget;
  o.minors.seed = seed;
  o.radical.seed = seed;
  o.radical.limits.maxPairs = groebnerCap;
  o.minors.radical = o.radical;
  return o;
}

Subset parseSubsetLabels(const std::string& text, int n) {
  std::vector<int> labels;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::size_t used = 0;
    int v = std::stoi(token, &used);
    if (used != token.size() || v < 1 || v > n)
      throw std::invalid_argument("label '" + token + "' is not in 1.." + std::to_string(n));
    labels.push_back(v);
    token.clear();
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) token += c;
    else if (c == ',' || c == ' ' || c == '{' || c == '}') flush();
    else if (c == '-' && text.size() == 1) continue;
    else throw std::invalid_argument(std::string("unexpected character '") + c + "'");
  }
  flush();
  return Subset::fromLabels(labels);
}

std::string edgeCycleText(int n) {
  if (n < 3) throw std::invalid_argument("a cycle needs at least 3 vertices");
  std::string out;
  for (int i = 1; i <= n; ++i) {
    if (i > 1) out += ",";
    out += "x" + std::to_string(i) + "*x" + std::to_string(i % n + 1);
  }
  return out;
}

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Support varieties of monomial ideals", "suppvar"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  std::vector<std::uint64_t> primes;
  app.add_option("--prime", primes, "Prime for randomized checks (repeatable)");
  app.add_option("--seed", g.config.seed, "Random seed")->capture_default_str();
  app.add_option("--samples", g.config.samples, "Points per prime, both on the candidate and uniform")->capture_default_str();
  app.add_option("--minor-budget", g.config.minorBudget, "Minors computed before sampling")->capture_default_str();
  app.add_option("--groebner-cap", g.config.groebnerCap, "Pair limit for Groebner computations")
      ->capture_default_str();
  app.add_option("--threads", g.config.threads, "Worker threads")->capture_default_str();
  app.add_flag("--json", g.json, "Emit JSON");

  std::string ideal, candidate, subset, resume;
  bool oracleOnly = false, periodic = false, ci = false, dryRun = false;
  int cycleLength = 0;
  std::size_t closureCap = 1u << 20;
  std::vector<std::string> graphTexts;

  auto* compute = app.add_subcommand("compute", "Support variety of an ideal");
  compute->add_option("ideal", ideal, "Generators, e.g. x1*x2,x2*x3")->required();
  compute->add_flag("--oracle-only", oracleOnly, "Use the periodic complex instead of the totalization");
  compute->add_option("--candidate", candidate, "Compare against V(candidate)");

  auto* verify = app.add_subcommand("verify", "Sample the support against V(candidate)");
  verify->add_option("ideal", ideal)->required();
  verify->add_option("candidate", candidate, "Polynomials in a1..an, comma separated")->required();
  verify->add_flag("--oracle-only", periodic, "Test points with the periodic complex");

  auto* cycle = app.add_subcommand("edge-cycle", "Print the edge ideal of a cycle");
  cycle->add_option("n", cycleLength)->required();

  auto* diagnose = app.add_subcommand("diagnose", "Monomial subcomplex of one subset");
  diagnose->add_option("ideal", ideal)->required();
  diagnose->add_option("subset", subset, "One-based labels, e.g. 1,3,5 (empty for the empty set)")->required();

  auto* grading = app.add_subcommand("weak-grading", "Weak grading of the subcomplex diagram");
  grading->add_option("ideal", ideal)->required();

  auto* enumerate = app.add_subcommand("enumerate6", "Classify supports for six generators");
  enumerate->add_option("--resume", resume, "JSON-lines checkpoint to reuse and extend");
  enumerate->add_option("--graph", graphTexts, "Restrict to a graph given by its 15-bit adjacency string");
  enumerate->add_flag("--ci", ci, "Run the fixed ten-graph subset");
  enumerate->add_flag("--dry-run", dryRun, "Only count graphs and rays");
  enumerate->add_option("--closure-cap", closureCap, "Limit on subset sums per graph")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_code::kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kParse;
  }

  try {
    g.config.primes = primes;
    g.config.validate();
    if (compute->parsed()) return cmdCompute(g, ideal, oracleOnly, candidate, out, err);
    if (verify->parsed()) return cmdVerify(g, ideal, candidate, periodic, out);
    if (cycle->parsed()) return cmdEdgeCycle(cycleLength, out);
    if (diagnose->parsed()) return cmdDiagnose(g, ideal, subset, out);
    if (grading->parsed()) return cmdWeakGrading(g, ideal, out, err);
    if (enumerate->parsed()) return cmdEnumerate6(g, resume, graphTexts, ci, dryRun, closureCap, out, err);
  } catch (const ParseFailure& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kParse;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kParse;
  } catch (const GroebnerCapExceeded& e) {
    err << "error: resource cap: " << e.what() << "\n";
    return exit_code::kResourceCap;
  } catch (const ClosureCapExceeded& e) {
    err << "error: resource cap: " << e.what() << "\n";
    return exit_code::kResourceCap;
  }
  return exit_code::kParse;
}

}  // namespace suppvar
