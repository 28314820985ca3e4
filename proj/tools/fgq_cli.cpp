#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "fgq/fgq.hpp"

// Command-line front end: quantisation and truncation queries on model files
// plus the named verification suites. All reports are JSON with sorted keys
// and lexicographically sorted weight lists, so identical configurations
// produce byte-identical output.
//
// Exit codes: 0 success / verification passed; 1 verification failed;
// 2 parse or configuration error; 3 uncertified model (PropernessUncertified,
// MissingWitness and kin); 4 unknown verification check.

namespace {

using namespace fgq;

struct Options {
  std::string modelPath;
  std::string radiusText = "8";
  std::string outPath;
  std::string checkName;
};

void emit(const Json& report, const std::string& outPath) {
  const std::string text = report.dump(2) + "\n";
  if (outPath.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(outPath, std::ios::binary);
    if (!out) fail(errs::ParseError, "cannot write " + outPath);
    out << text;
  }
}

Rational parseRadius(const std::string& text) {
  const Rational r = parseRational(text);
  if (r < Rational(0)) fail(errs::ParseError, "radius must be nonnegative");
  return r;
}

Json weightListJson(const std::vector<Weight>& ws) {
  Json a = Json::array();
  for (const Weight& w : ws) a.push_back(toJson(w));
  return a;
}

Json linearModelJson(const LinearModel& m) {
  Json j;
  j["kind"] = "linear";
  j["datum"] = toJson(m.datum);
  j["weights"] = weightListJson(m.repWeights);
  if (m.halfSpaceFunctional) {
    Json xi = Json::array();
    for (const Rational& q : *m.halfSpaceFunctional) xi.push_back(toJson(q));
    j["xi"] = xi;
  }
  j["proper"] = m.propernessAsserted;
  if (!m.tag.empty()) j["tag"] = m.tag;
  return j;
}

Json modelDescription(const ModelVariant& mv) {
  if (const auto* lm = std::get_if<LinearModel>(&mv)) return linearModelJson(*lm);
  if (const auto* cm = std::get_if<CoadjointOrbitModel>(&mv)) {
    Json j;
    j["kind"] = "coadjoint";
    j["datum"] = toJson(cm->datum);
    j["weight"] = toJson(cm->weight);
    j["sign"] = std::string(1, cm->sign);
    return j;
  }
  const auto& im = std::get<InducedModel>(mv);
  Json j;
  j["kind"] = "induced";
  j["model"] = modelToJson(im.model);
  if (const auto* lm = std::get_if<LinearModel>(&im.inner)) {
    j["inner"] = linearModelJson(*lm);
  } else {
    const auto& cm = std::get<CoadjointOrbitModel>(im.inner);
    Json inner;
    inner["kind"] = "coadjoint";
    inner["datum"] = toJson(cm.datum);
    inner["weight"] = toJson(cm.weight);
    inner["sign"] = std::string(1, cm.sign);
    j["inner"] = inner;
  }
  return j;
}

// The one restriction policy the front end exposes: tori of rank >= 2
// restrict to the diagonal circle; nonabelian rank-1 data restrict to the
// maximal torus (which is the witness-free negative control).
Embedding policyEmbedding(const RootDatum& rd) {
  if (rd.isTorus() && rd.rank >= 2) {
    std::vector<std::vector<int>> map{std::vector<int>(static_cast<std::size_t>(rd.rank), 1)};
    return makeEmbedding(buildRootDatum("T1"), rd, std::move(map), "torusInclusion");
  }
  if (!rd.isTorus() && rd.rank == 1) return maximalTorusEmbedding(rd);
  fail(errs::ParseError, "no restriction policy for datum " + rd.label);
}

FormalSeries quantisationSeriesOf(const ModelVariant& mv) {
  if (const auto* lm = std::get_if<LinearModel>(&mv)) return formalQuantisationSeries(*lm);
  if (const auto* cm = std::get_if<CoadjointOrbitModel>(&mv))
    return coadjointQuantisationSeries(*cm);
  fail(errs::ParseError, "expected a linear or coadjoint model (use `induce` for induced models)");
}

int runQuantise(const Options& opt) {
  const Rational radius = parseRadius(opt.radiusText);
  const ModelVariant mv = loadModelFile(opt.modelPath);
  const FormalSeries s = quantisationSeriesOf(mv);
  Json report;
  report["model"] = modelDescription(mv);
  report["radius"] = toJson(radius);
  report["series"] = truncationToJson(truncate(s, radius), radius);
  emit(report, opt.outPath);
  return 0;
}

int runInduce(const Options& opt) {
  const Rational radius = parseRadius(opt.radiusText);
  const ModelVariant mv = loadModelFile(opt.modelPath);
  const auto* im = std::get_if<InducedModel>(&mv);
  if (!im) fail(errs::ParseError, "`induce` expects an induced model");
  const KHomologyClass c = induceQuantisation(*im, radius);
  Json report = classToJson(c, radius);
  emit(report, opt.outPath);
  return 0;
}

int runShift(const Options& opt) {
  const Rational radius = parseRadius(opt.radiusText);
  const ModelVariant mv = loadModelFile(opt.modelPath);
  const auto* lm = std::get_if<LinearModel>(&mv);
  if (!lm) fail(errs::ParseError, "`shift` expects a linear model");
  std::map<Weight, long long> window;
  for (const Weight& lambda : dominantWeightsUpTo(lm->datum, radius))
    window[lambda] = shiftedInvariantQuantisation(*lm, lambda);
  Json report;
  report["model"] = modelDescription(mv);
  report["radius"] = toJson(radius);
  report["series"] = truncationToJson(window, radius);
  emit(report, opt.outPath);
  return 0;
}

int runBranchCmd(const Options& opt) {
  const Json j = loadJsonFile(opt.modelPath);
  if (!j.is_object() || j.value("kind", "") != "branch" || !j.contains("embedding") ||
      !j.contains("weight"))
    fail(errs::ParseError, "`branch` expects {\"kind\":\"branch\",\"embedding\":...,\"weight\":...}");
  const Embedding e = embeddingFromJson(j["embedding"]);
  const Weight lambda = weightFromJson(j["weight"]);
  Json report;
  report["embedding"] = toJson(e);
  report["weight"] = toJson(lambda);
  report["terms"] = toJson(branch(e, lambda));
  emit(report, opt.outPath);
  return 0;
}

int runTensorCmd(const Options& opt) {
  const Json j = loadJsonFile(opt.modelPath);
  if (!j.is_object() || j.value("kind", "") != "tensor" || !j.contains("datum") ||
      !j.contains("lhs") || !j.contains("rhs"))
    fail(errs::ParseError,
         "`tensor` expects {\"kind\":\"tensor\",\"datum\":...,\"lhs\":...,\"rhs\":...}");
  const RootDatum rd = rootDatumFromJson(j["datum"]);
  const Weight lhs = weightFromJson(j["lhs"]);
  const Weight rhs = weightFromJson(j["rhs"]);
  Json report;
  report["datum"] = toJson(rd);
  report["lhs"] = toJson(lhs);
  report["rhs"] = toJson(rhs);
  report["terms"] = toJson(tensorDecompose(rd, lhs, rhs));
  emit(report, opt.outPath);
  return 0;
}

struct CheckResult {
  bool pass = true;
  std::vector<Weight> window;
  std::optional<Weight> counterexample;
};

CheckResult checkRestrCpt(const ModelVariant& mv, const Rational& radius) {
  const auto* lm = std::get_if<LinearModel>(&mv);
  if (!lm) fail(errs::ParseError, "restr-cpt expects a linear model");
  const Embedding e = policyEmbedding(lm->datum);
  const FormalSeries restricted = branchSeries(e, formalQuantisationSeries(*lm), radius);
  std::vector<Weight> pushed;
  for (const Weight& w : lm->repWeights) pushed.push_back(applyWeightMap(e, w));
  std::vector<std::vector<long long>> cols;
  for (const Weight& w : pushed) cols.push_back(std::vector<long long>(w.coords.begin(), w.coords.end()));
  auto xi = findInteriorFunctional(cols);
  if (!xi) fail(errs::NotPointedCone, "restricted model weights span no open half-space");
  const LinearModel restrictedModel = makeLinearModel(e.source, pushed, *xi);
  const FormalSeries direct = formalQuantisationSeries(restrictedModel);
  CheckResult res;
  res.window = dominantWeightsUpTo(e.source, radius);
  for (const Weight& w : res.window) {
    if (restricted.coefficient(w) != direct.coefficient(w)) {
      res.pass = false;
      res.counterexample = w;
      break;
    }
  }
  return res;
}

CheckResult checkQrInduced(const ModelVariant& mv, const Rational& radius) {
  const auto* im = std::get_if<InducedModel>(&mv);
  if (!im) fail(errs::ParseError, "qr-induced expects an induced model");
  const KHomologyClass a = induceQuantisation(*im, radius);
  const KHomologyClass b = induceFormalQuantisation(*im, radius);
  CheckResult res;
  res.window = dominantWeightsUpTo(im->model.compact, radius);
  for (const Weight& w : res.window) {
    if (a.series.coefficient(w) != b.series.coefficient(w)) {
      res.pass = false;
      res.counterexample = w;
      break;
    }
  }
  return res;
}

CheckResult checkShift(const ModelVariant& mv, const Rational& radius) {
  const auto* lm = std::get_if<LinearModel>(&mv);
  if (!lm) fail(errs::ParseError, "shift expects a linear model");
  const FormalSeries s = formalQuantisationSeries(*lm);
  const FormalSeries semi = semiFormalQuantisation(*lm);
  const KHomologyClass c = liftSeries(compactGroupModel(lm->datum), s);
  CheckResult res;
  res.window = dominantWeightsUpTo(lm->datum, radius);
  for (const Weight& w : res.window) {
    const bool ok = reductionMultiplicity(c, w) == shiftedInvariantQuantisation(*lm, w) &&
                    semi.coefficient(w) == s.coefficient(w);
    if (!ok) {
      res.pass = false;
      res.counterexample = w;
      break;
    }
  }
  return res;
}

CheckResult checkModule(const ModelVariant& mv, const Rational& radius) {
  RootDatum rd;
  KHomologyClass b{GroupModel{}, FormalSeries{}};
  if (const auto* lm = std::get_if<LinearModel>(&mv)) {
    rd = lm->datum;
    b = liftSeries(compactGroupModel(rd), formalQuantisationSeries(*lm));
  } else if (const auto* im = std::get_if<InducedModel>(&mv)) {
    rd = im->model.compact;
    b = induceQuantisation(*im, radius);
  } else {
    fail(errs::ParseError, "module expects a linear or induced model");
  }
  CheckResult res;
  res.window = dominantWeightsUpTo(rd, radius);
  for (const Weight& lambda1 : dominantWeightsUpTo(rd, Rational(4))) {
    RKElement gen;
    gen.datum = rd;
    gen.terms[lambda1] = 1;
    const KHomologyClass acted = moduleAction(diracInduction(b.model, gen), b);
    for (const Weight& nu : res.window) {
      // independent compact-side action through the brute-force tensor oracle
      long long expected = 0;
      const Rational window = Rational(2) * normSq(rd, lambda1) + Rational(2) * normSq(rd, nu);
      for (const Weight& lambda2 : dominantWeightsUpTo(rd, window)) {
        const long long c2 = b.series.coefficient(lambda2);
        if (c2 == 0) continue;
        expected += c2 * termAt(tensorDecomposeOracle(rd, lambda1, lambda2).terms, nu);
      }
      if (acted.series.coefficient(nu) != expected) {
        res.pass = false;
        res.counterexample = nu;
        return res;
      }
    }
  }
  return res;
}

CheckResult checkMult(const Json& j, const Rational& radius) {
  if (!j.is_object() || j.value("kind", "") != "pair" || !j.contains("first") ||
      !j.contains("second"))
    fail(errs::ParseError, "mult expects {\"kind\":\"pair\",\"first\":...,\"second\":...}");
  const ModelVariant m1 = modelFromJson(j["first"]);
  const ModelVariant m2 = modelFromJson(j["second"]);
  CheckResult res;
  FormalSeries lhs, rhs;
  if (std::holds_alternative<LinearModel>(m1) && std::holds_alternative<LinearModel>(m2)) {
    const LinearModel &a = std::get<LinearModel>(m1), &b = std::get<LinearModel>(m2);
    lhs = formalQuantisationSeries(productModel(a, b));
    rhs = externalProduct(liftSeries(compactGroupModel(a.datum), formalQuantisationSeries(a)),
                          liftSeries(compactGroupModel(b.datum), formalQuantisationSeries(b)))
              .series;
  } else if (std::holds_alternative<InducedModel>(m1) && std::holds_alternative<InducedModel>(m2)) {
    const InducedModel &a = std::get<InducedModel>(m1), &b = std::get<InducedModel>(m2);
    const auto *la = std::get_if<LinearModel>(&a.inner), *lb = std::get_if<LinearModel>(&b.inner);
    if (!la || !lb) fail(errs::ParseError, "mult on induced models needs linear inner models");
    const GroupModel gm = productGroupModel(a.model, b.model);
    lhs = liftSeries(gm, formalQuantisationSeries(productModel(*la, *lb))).series;
    const KHomologyClass prod =
        externalProduct(induceQuantisation(a, radius), induceQuantisation(b, radius));
    if (prod.model.d != a.model.d + b.model.d)
      fail(errs::ParseError, "degree tag failed to add");  // unreachable by construction
    rhs = prod.series;
  } else {
    fail(errs::ParseError, "mult expects two linear or two induced models");
  }
  res.window = dominantWeightsUpTo(lhs.datum, radius);
  for (const Weight& w : res.window) {
    if (lhs.coefficient(w) != rhs.coefficient(w)) {
      res.pass = false;
      res.counterexample = w;
      break;
    }
  }
  return res;
}

CheckResult checkDresSign(const ModelVariant& mv, const Rational& radius) {
  const auto* im = std::get_if<InducedModel>(&mv);
  if (!im) fail(errs::ParseError, "dres-sign expects an induced model");
  const GroupModel& gm = im->model;
  if (gm.compact.isTorus())
    fail(errs::ParseError, "dres-sign needs a nonabelian compact datum");
  std::optional<Weight> lambda;
  for (const Weight& w : dominantWeightsUpTo(gm.compact, radius)) {
    if (gm.stronglyElliptic && gm.stronglyElliptic(w)) {
      lambda = w;
      break;
    }
  }
  if (!lambda) fail(errs::ParseError, "no strongly elliptic label within the radius");
  const auto [sign, cls] = discreteSeriesClass(gm, *lambda);
  const int expectedSign = (gm.d / 2) % 2 == 0 ? 1 : -1;
  const Embedding e = maximalTorusEmbedding(gm.compact);
  const GroupModel torusModel{gm.name + "_t", e.source, 0, nullptr};
  const KHomologyClass dres = diracRestriction(cls, torusModel, e, radius);
  const RKElement branched = branch(e, *lambda);
  CheckResult res;
  res.window = dominantWeightsUpTo(e.source, radius);
  res.pass = sign == expectedSign;
  for (const Weight& w : res.window) {
    if (!res.pass) break;
    if (dres.series.coefficient(w) != sign * termAt(branched.terms, w)) {
      res.pass = false;
      res.counterexample = w;
    }
  }
  return res;
}

int runVerify(const Options& opt) {
  static const std::vector<std::string> known{"restr-cpt", "mult", "module",
                                             "qr-induced", "shift", "dres-sign"};
  if (std::find(known.begin(), known.end(), opt.checkName) == known.end()) {
    std::cerr << "unknown check: " << opt.checkName << "\n";
    return 4;
  }
  const Rational radius = parseRadius(opt.radiusText);
  CheckResult res;
  if (opt.checkName == "mult") {
    res = checkMult(loadJsonFile(opt.modelPath), radius);
  } else {
    const ModelVariant mv = loadModelFile(opt.modelPath);
    if (opt.checkName == "restr-cpt") res = checkRestrCpt(mv, radius);
    else if (opt.checkName == "module") res = checkModule(mv, radius);
    else if (opt.checkName == "qr-induced") res = checkQrInduced(mv, radius);
    else if (opt.checkName == "shift") res = checkShift(mv, radius);
    else res = checkDresSign(mv, radius);
  }
  Json report;
  report["check"] = opt.checkName;
  report["radius"] = toJson(radius);
  report["pass"] = res.pass;
  report["witnessedWindow"] = weightListJson(res.window);
  emit(report, opt.outPath);
  if (!res.pass) {
    if (res.counterexample) std::cerr << "counterexample: " << toString(*res.counterexample) << "\n";
    return 1;
  }
  return 0;
}

int dispatch(const std::string& command, const Options& opt) {
  try {
    if (command == "quantise") return runQuantise(opt);
    if (command == "branch") return runBranchCmd(opt);
    if (command == "tensor") return runTensorCmd(opt);
    if (command == "verify") return runVerify(opt);
    if (command == "shift") return runShift(opt);
    return runInduce(opt);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    const std::string& k = e.kind();
    if (k == errs::PropernessUncertified || k == errs::MissingWitness ||
        k == errs::DegreeBoundMissing || k == errs::NoWitnessAvailable ||
        k == errs::NotPointedCone)
      return 3;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"formal geometric quantisation toolkit"};
  app.require_subcommand(1);
  Options opt;

  std::vector<CLI::App*> subs;
  for (const char* name : {"quantise", "branch", "tensor", "verify", "shift", "induce"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--model", opt.modelPath, "model or request JSON file")->required();
    sub->add_option("--radius", opt.radiusText, "truncation radius (integer or p/q)");
    sub->add_option("--out", opt.outPath, "output file (default: stdout)");
    if (std::string(name) == "verify")
      sub->add_option("--check", opt.checkName, "check name")->required();
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  return dispatch(app.get_subcommands().front()->get_name(), opt);
}
