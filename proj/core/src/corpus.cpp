#include "summability/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <thread>

#include "summability/error.hpp"
#include "summability/quadrature.hpp"

namespace summability {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

KnownValue converged(std::string method, Complex value) {
  return KnownValue{std::move(method), value, "Converged", std::nullopt, Provenance::Derived};
}

KnownValue oscillating(std::string method, double amplitude) {
  return KnownValue{std::move(method), std::nullopt, "Oscillating", amplitude, Provenance::Derived};
}

nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex parse_complex(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw Error(ErrorCode::ParseError, "expected a number or [re, im], got " + j.dump());
}

Outcome parse_outcome(const nlohmann::json& j) {
  Outcome o;
  const auto status = parse_limit_status(j.at("status").get<std::string>());
  if (!status) throw Error(ErrorCode::ParseError, "unknown status " + j.at("status").dump());
  o.status = *status;
  if (j.contains("value")) o.value = parse_complex(j.at("value"));
  return o;
}

nlohmann::json outcome_json(const Outcome& o) {
  nlohmann::json j{{"status", to_string(o.status)}};
  if (o.value) j["value"] = complex_json(*o.value);
  return j;
}

double default_tolerance(const TestFunction& f, const MatrixOptions& opts) {
  return 5.0 * opts.engine.tol_limit.value_or(1e-4 * (1.0 + f.bound));
}

std::string check_outcome(const SummationResult& r, const Outcome& want, double tol) {
  if (r.status != want.status) {
    return std::string("expected ") + to_string(want.status) + ", got " + to_string(r.status);
  }
  if (want.value) {
    if (!r.estimate) return "no estimate";
    const double d = std::abs(*r.estimate - *want.value);
    if (d > tol) return "deviation " + std::to_string(d) + " exceeds " + std::to_string(tol);
  }
  if (want.status == LimitStatus::Oscillating && !(r.oscillation_amplitude > 10.0 * tol)) {
    return "amplitude " + std::to_string(r.oscillation_amplitude) + " not above 10x tolerance";
  }
  return {};
}

}  // namespace

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const auto& c) { return !c.passed; }));
}

std::vector<TestFunction> builtin_corpus() {
  std::vector<TestFunction> out;
  using namespace functions;
  for (Flavor fl : {Flavor::Multiplicative, Flavor::Additive}) {
    out.push_back(constant(fl, 1.0));
    out.push_back(constant(fl, -2.0));
    out.push_back(exp_decay(fl, 1.0));
    out.push_back(exp_decay(fl, -0.5));
    out.push_back(reciprocal_decay(fl, 0.25));
  }

  TestFunction s = sine(Flavor::Multiplicative);
  s.known_values = {converged("M", 0.0), converged("M_2", 0.0), converged("M_1/2", 0.0), converged("H_2", 0.0),
                    converged("M*_1", 0.0)};
  out.push_back(s);
  TestFunction c = cosine(Flavor::Multiplicative);
  c.known_values = {converged("M", 0.0), converged("M_2", 0.0)};
  out.push_back(c);
  for (double a : {0.5, 1.0, 2.0}) {
    TestFunction m = multiplicative_character(a);
    // (1/x) int_1^x t^{ia} dt = (x^{ia} x - 1) / (x (1 + ia)), modulus -> 1/|1 + ia|
    m.known_values = {oscillating("M", 1.0 / std::hypot(1.0, a))};
    out.push_back(m);
  }
  TestFunction alt = embed_sequence([](std::int64_t n) { return Complex(n % 2 == 0 ? 1.0 : -1.0); }, 1.0, "alt@mul",
                                    1.0);
  alt.known_values = {converged("M", 0.0), converged("H_2", 0.0)};
  out.push_back(alt);
  TestFunction block = embed_sequence(std::vector<Complex>(5, 1.0), "block5@mul");
  block.known_values = {converged("M", 0.0)};
  out.push_back(block);
  TestFunction odd = embed_sequence([](std::int64_t n) { return Complex(n % 2 != 0 ? 1.0 : 0.0); }, 1.0, "alt01@mul");
  odd.known_values = {converged("M", 0.5), converged("M_2", 0.5)};
  out.push_back(odd);

  TestFunction sa = sine(Flavor::Additive);
  // (sin x - cos x)/2 + e^{-x}/2
  sa.known_values = {oscillating("K", std::sqrt(0.5))};
  out.push_back(sa);
  TestFunction ca = cosine(Flavor::Additive);
  ca.known_values = {oscillating("K", std::sqrt(0.5))};
  out.push_back(ca);
  for (double a : {0.5, 1.0, 2.0}) {
    TestFunction e = additive_character(a);
    e.known_values = {oscillating("K", 1.0 / std::hypot(1.0, a))};
    if (a == 1.0) e.known_values.push_back(converged("S_cex(1)", 0.0));
    out.push_back(e);
  }
  TestFunction ch = chirp();
  ch.known_values = {converged("K", 0.0)};
  out.push_back(ch);
  return out;
}

MethodCatalog builtin_methods() {
  MethodCatalog m;
  const auto add = [&m](const std::string& label, MethodDescriptor d) {
    d.label = label;
    m.emplace(label, std::move(d));
  };
  add("M", methods::Mr(1.0));
  add("M_1/2", methods::Mr(0.5));
  add("M_2", methods::Mr(2.0));
  add("H_2", methods::holder(2));
  add("H_3", methods::holder(3));
  add("M*_1/2", methods::Mr_dual(0.5));
  add("M*_1", methods::Mr_dual(1.0));
  add("M*_2", methods::Mr_dual(2.0));
  add("P", methods::k_estimator(Flavor::Multiplicative));
  add("M_cex(1)", methods::S(Kernel::counterexample_multiplicative(1.0)));

  add("K", methods::k_estimator(Flavor::Additive));
  add("S_exp(2)", methods::S(Kernel::exponential(2.0)));
  add("S*_exp(1)", methods::S(Kernel::exponential(1.0), Variant::Dual));
  add("S*_exp(2)", methods::S(Kernel::exponential(2.0), Variant::Dual));
  add("S_exp(1)^2", methods::S(Kernel::exponential(1.0), Variant::Forward, 2));
  add("S_cex(1)", methods::S(Kernel::counterexample_additive(1.0)));
  const Kernel mix = Kernel::mixture(
      Flavor::Additive, {{0.5, CatalogEntry{CatalogId::Exponential, {1.0}, {}}},
                         {0.5, CatalogEntry{CatalogId::Exponential, {3.0}, {}}}});
  add("S_mix", methods::S(mix));
  return m;
}

const TestFunction* find_function(const std::vector<TestFunction>& corpus, const std::string& label) {
  for (const auto& f : corpus) {
    if (f.label == label) return &f;
  }
  return nullptr;
}

std::vector<VerificationCase> builtin_cases() {
  std::vector<VerificationCase> cases;
  const auto agree = [&](std::string id, std::string fn, std::vector<std::string> ms, Complex v, std::string ref) {
    cases.push_back({std::move(id), std::move(fn), std::move(ms), AllAgree{v}, std::move(ref), std::nullopt});
  };
  agree("mr-family/sin", "sin@mul", {"M", "M_2", "M_1/2"}, 0.0, "M_r equivalence");
  agree("mr-family/decay", "decay(1)@mul", {"M", "M_2", "M_1/2"}, 1.0, "M_r equivalence");
  agree("holder/sin", "sin@mul", {"M", "H_2", "H_3"}, 0.0, "Holder iterates");
  agree("holder/alt01", "alt01@mul", {"M", "H_2", "H_3"}, 0.5, "Holder iterates");
  agree("dual/sin", "sin@mul", {"M_1/2", "M*_1/2", "M", "M*_1", "M_2", "M*_2"}, 0.0, "dual equivalence");
  agree("dual/const", "const(-2)@mul", {"M_1/2", "M*_1/2", "M", "M*_1", "M_2", "M*_2"}, -2.0, "dual equivalence");
  agree("dual/additive", "recip(0.25)@add", {"K", "S*_exp(1)", "S_exp(2)", "S*_exp(2)"}, 0.25, "dual equivalence");
  agree("bridge/alt", "alt@mul", {"M"}, 0.0, "discrete bridge");
  cases.push_back({"separation/additive", "char(1)@add", {"S_cex(1)", "K"},
                   Separation{{LimitStatus::Converged, Complex{}}, {LimitStatus::Oscillating, std::nullopt}},
                   "Wiener necessity", std::nullopt});
  cases.push_back({"separation/multiplicative", "mchar(1)@mul", {"M_cex(1)", "M"},
                   Separation{{LimitStatus::Converged, Complex{}}, {LimitStatus::Oscillating, std::nullopt}},
                   "Wiener necessity", std::nullopt});

  const auto corpus = builtin_corpus();
  const auto catalog = builtin_methods();
  for (const auto& f : corpus) {
    if (!f.classical_limit) continue;
    std::vector<std::string> ms;
    for (const auto& [label, d] : catalog) {
      if (d.flavor() == f.domain) ms.push_back(label);
    }
    agree("regularity/" + f.label, f.label, ms, *f.classical_limit, "regularity");
  }
  auto known = known_value_cases(corpus);
  cases.insert(cases.end(), known.begin(), known.end());
  return cases;
}

std::vector<VerificationCase> known_value_cases(const std::vector<TestFunction>& corpus) {
  std::vector<VerificationCase> cases;
  for (const auto& f : corpus) {
    for (const auto& kv : f.known_values) {
      if (kv.status != "Converged" || !kv.value) continue;
      cases.push_back({"known/" + f.label + "/" + kv.method, f.label, {kv.method}, AllAgree{*kv.value},
                       std::string("known value [") + to_string(kv.provenance) + "]", std::nullopt});
    }
  }
  return cases;
}

VerificationReport run_matrix(const std::vector<VerificationCase>& cases, const std::vector<TestFunction>& corpus,
                              const MethodCatalog& methods, const MatrixOptions& opts) {
  // Validate everything first so a typo never costs a half-finished run.
  std::set<std::string> ids;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& c : cases) {
    if (!ids.insert(c.id).second) throw Error(ErrorCode::ConfigError, "duplicate case id " + c.id);
    const TestFunction* f = find_function(corpus, c.function);
    if (f == nullptr) throw Error(ErrorCode::ConfigError, "case " + c.id + ": unknown function " + c.function);
    if (c.methods.empty()) throw Error(ErrorCode::ConfigError, "case " + c.id + ": no methods");
    if (std::holds_alternative<Separation>(c.expected) && c.methods.size() != 2) {
      throw Error(ErrorCode::ConfigError, "case " + c.id + ": a separation needs exactly two methods");
    }
    for (const auto& m : c.methods) {
      const auto it = methods.find(m);
      if (it == methods.end()) throw Error(ErrorCode::ConfigError, "case " + c.id + ": unknown method " + m);
      if (it->second.flavor() != f->domain) {
        throw Error(ErrorCode::ConfigError, "case " + c.id + ": " + m + " does not act on " + c.function);
      }
      pairs.emplace_back(c.function, m);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  const auto t0 = Clock::now();
  struct Slot {
    SummationResult result;
    std::string error;
    double seconds = 0.0;
  };
  std::vector<Slot> slots(pairs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> evaluations{0};
  const auto worker = [&]() {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      const auto t = Clock::now();
      const std::size_t before = quadrature::stats().evaluations;
      try {
        slots[i].result =
            estimate_limit(methods.at(pairs[i].second), *find_function(corpus, pairs[i].first), opts.engine);
      } catch (const std::exception& e) {
        slots[i].error = e.what();
      }
      evaluations += quadrature::stats().evaluations - before;
      slots[i].seconds = seconds_since(t);
    }
  };
  const unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  const auto slot_of = [&](const std::string& fn, const std::string& m) -> const Slot& {
    const auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(fn, m));
    return slots[static_cast<std::size_t>(it - pairs.begin())];
  };

  VerificationReport report;
  for (const auto& c : cases) {
    const TestFunction& f = *find_function(corpus, c.function);
    CaseOutcome out;
    out.id = c.id;
    out.function = c.function;
    out.reference = c.reference;
    out.tolerance = c.tolerance.value_or(default_tolerance(f, opts));
    out.passed = true;
    for (std::size_t i = 0; i < c.methods.size(); ++i) {
      const Slot& s = slot_of(c.function, c.methods[i]);
      MethodOutcome mo;
      mo.method = c.methods[i];
      mo.result = s.result;
      out.seconds += s.seconds;
      if (!s.error.empty()) {
        mo.note = s.error;
      } else if (const auto* a = std::get_if<AllAgree>(&c.expected)) {
        mo.note = check_outcome(s.result, Outcome{LimitStatus::Converged, a->value}, out.tolerance);
      } else {
        const auto& sep = std::get<Separation>(c.expected);
        mo.note = check_outcome(s.result, i == 0 ? sep.first : sep.second, out.tolerance);
      }
      mo.ok = mo.note.empty();
      if (!mo.ok) {
        out.passed = false;
        if (!out.message.empty()) out.message += "; ";
        out.message += mo.method + ": " + mo.note;
      }
      out.methods.push_back(std::move(mo));
    }
    report.cases.push_back(std::move(out));
  }
  std::sort(report.cases.begin(), report.cases.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  report.wall_seconds = seconds_since(t0);
  report.evaluations = evaluations;
  return report;
}

VerificationReport run_matrix(const std::vector<VerificationCase>& cases, const MatrixOptions& opts) {
  return run_matrix(cases, builtin_corpus(), builtin_methods(), opts);
}

std::vector<VerificationCase> parse_cases(const nlohmann::json& doc) {
  const nlohmann::json& list = doc.is_object() && doc.contains("cases") ? doc.at("cases") : doc;
  if (!list.is_array()) throw Error(ErrorCode::ParseError, "case file must hold an array of cases");
  std::vector<VerificationCase> out;
  try {
    for (const auto& j : list) {
      VerificationCase c;
      c.id = j.at("id").get<std::string>();
      c.function = j.at("function").get<std::string>();
      c.methods = j.at("methods").get<std::vector<std::string>>();
      c.reference = j.value("reference", std::string{});
      if (j.contains("tolerance")) c.tolerance = j.at("tolerance").get<double>();
      const auto& e = j.at("expected");
      if (e.contains("all_agree")) {
        c.expected = AllAgree{parse_complex(e.at("all_agree"))};
      } else if (e.contains("separation")) {
        const auto& s = e.at("separation");
        if (!s.is_array() || s.size() != 2) throw Error(ErrorCode::ParseError, "separation needs two outcomes");
        c.expected = Separation{parse_outcome(s[0]), parse_outcome(s[1])};
      } else {
        throw Error(ErrorCode::ParseError, "case " + c.id + ": expected must be all_agree or separation");
      }
      out.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed case file: ") + e.what());
  }
  return out;
}

std::vector<VerificationCase> load_cases(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return parse_cases(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

nlohmann::json to_json(const VerificationCase& c) {
  nlohmann::json j{{"id", c.id}, {"function", c.function}, {"methods", c.methods}, {"reference", c.reference}};
  if (const auto* a = std::get_if<AllAgree>(&c.expected)) {
    j["expected"] = {{"all_agree", complex_json(a->value)}};
  } else {
    const auto& s = std::get<Separation>(c.expected);
    j["expected"] = {{"separation", nlohmann::json::array({outcome_json(s.first), outcome_json(s.second)})}};
  }
  if (c.tolerance) j["tolerance"] = *c.tolerance;
  return j;
}

nlohmann::json to_json(const SummationResult& r) {
  nlohmann::json j{{"status", to_string(r.status)},
                   {"estimate", r.estimate ? complex_json(*r.estimate) : nlohmann::json(nullptr)},
                   {"amplitude", r.oscillation_amplitude},
                   {"tolerance", r.tolerance_used},
                   {"accelerated", r.accelerated},
                   {"evaluations", r.evaluations}};
  return j;
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : r.cases) {
    nlohmann::json ms = nlohmann::json::array();
    for (const auto& m : c.methods) {
      nlohmann::json mj = to_json(m.result);
      mj["method"] = m.method;
      mj["ok"] = m.ok;
      if (!m.note.empty()) mj["note"] = m.note;
      ms.push_back(std::move(mj));
    }
    cases.push_back({{"id", c.id},
                     {"function", c.function},
                     {"reference", c.reference},
                     {"passed", c.passed},
                     {"tolerance", c.tolerance},
                     {"seconds", c.seconds},
                     {"message", c.message},
                     {"methods", std::move(ms)}});
  }
  return {{"cases", std::move(cases)},
          {"failures", r.failures()},
          {"wall_seconds", r.wall_seconds},
          {"evaluations", r.evaluations}};
}

BridgeReport discrete_bridge(const TestFunction& embedded, const std::vector<std::int64_t>& ns,
                             const EngineOptions& opts) {
  if (!embedded.sequence) throw Error(ErrorCode::InvalidArgument, embedded.label + " is not a step embedding");
  BridgeReport rep;
  const auto r = estimate_limit(methods::Mr(1.0), embedded, opts);
  rep.status = r.status;
  rep.continuous = r.estimate.value_or(r.trace.empty() ? Complex{} : r.trace.back().value);
  std::int64_t done = 0;
  Complex partial{};
  std::vector<std::int64_t> sorted = ns;
  std::sort(sorted.begin(), sorted.end());
  for (std::int64_t n : sorted) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "bridge points must be >= 1");
    for (; done < n; ++done) partial += embedded.sequence(done + 1);
    const Complex mean = partial / static_cast<double>(n);
    rep.discrete.emplace_back(n, mean);
    rep.max_deviation = std::max(rep.max_deviation, std::abs(mean - rep.continuous));
  }
  return rep;
}

}  // namespace summability
